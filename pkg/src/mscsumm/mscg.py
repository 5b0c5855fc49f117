"""Multi-sentence compression graph: build, weight, enumerate and re-rank paths.

Node ids 0 and 1 are reserved for START and END.  Every source utterance is a
loopless START -> END path in the graph, and any other START -> END path is a
candidate compression.
"""
from __future__ import annotations

import json
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .communities import kmeans
from .ingest import Utterance
from .resources.embeddings import EmbeddingStore
from .resources.lexicon import Lexicon
from .resources.lm import LanguageModel
from .text import stem

log = logging.getLogger(__name__)

START, END = 0, 1
DEFAULT_K = 200
DEFAULT_SIM_THRESHOLD = 0.3
DEFAULT_DISTANCE = 5.0
EPS = 1e-4
CONTENT_PREFIXES = ("NN", "VB", "JJ")


class CompressionError(RuntimeError):
    pass


class DisconnectedGraphError(CompressionError):
    def __init__(self):
        super().__init__("disconnected compression graph")


class NoValidCompression(CompressionError):
    def __init__(self):
        super().__init__("no valid compression")


@dataclass
class MscNode:
    id: int
    lower: str
    pos: str = ""
    boundary: str | None = None  # "START", "END" or None
    stopword: bool = False
    members: list[tuple[int, int, str, str]] = field(default_factory=list)
    forms: set[tuple[str, str]] = field(default_factory=set)
    twidf: float = 0.0

    @property
    def mapped_count(self) -> int:
        return len(self.members)

    @property
    def is_verb(self) -> bool:
        return self.pos.startswith("VB")


@dataclass
class MscGraph:
    nodes: list[MscNode]
    succ: dict[int, set[int]]
    pred: dict[int, set[int]]
    paths: list[list[int]]
    twidf: dict[str, float]

    @property
    def word_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.boundary is None]

    def f(self, i: int) -> int:
        """Number of words mapped to a node; boundaries count every utterance."""
        node = self.nodes[i]
        return len(self.paths) if node.boundary else node.mapped_count

    def edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a, nb in self.succ.items() for b in nb)

    def words(self, path: Sequence[int]) -> list[tuple[str, str]]:
        return [(self.nodes[i].lower, self.nodes[i].pos) for i in path if self.nodes[i].boundary is None]

    def text(self, path: Sequence[int]) -> str:
        return " ".join(w for w, _ in self.words(path))


@dataclass
class PathCandidate:
    nodes: tuple[int, ...]
    W: float
    text: str = ""
    F: float = 0.0
    C: float = 0.0
    D: float = 1.0
    score: float = math.inf

    @property
    def length(self) -> int:
        return len(self.nodes) - 2

    def as_dict(self) -> dict:
        return {"text": self.text, "nodes": list(self.nodes), "W": self.W, "F": self.F,
                "C": self.C, "D": self.D, "score": self.score}


# -- graph building --------------------------------------------------------

class _Builder:
    def __init__(self, lexicon, twidf, sim_threshold):
        self.lexicon = lexicon
        self.base_twidf = dict(twidf or {})
        self.twidf = dict(self.base_twidf)
        self.sim_threshold = sim_threshold
        self.nodes = [MscNode(START, "<START>", boundary="START"), MscNode(END, "<END>", boundary="END")]
        self.succ: dict[int, set[int]] = {START: set(), END: set()}
        self.pred: dict[int, set[int]] = {START: set(), END: set()}
        self.paths: list[list[int]] = []
        self._query = lru_cache(maxsize=None)(self._raw_query)

    def _raw_query(self, a, a_pos, b, b_pos):
        return self.lexicon.query(a, a_pos, b, b_pos)

    def word_twidf(self, word: str) -> float:
        return self.twidf.get(stem(word), 0.0)

    def new_node(self, tok) -> MscNode:
        node = MscNode(len(self.nodes), tok.lower, tok.pos, stopword=tok.is_stopword,
                       twidf=self.word_twidf(tok.lower))
        self.nodes.append(node)
        self.succ[node.id] = set()
        self.pred[node.id] = set()
        return node

    def context_overlap(self, node: MscNode, ctx: set[str]) -> int:
        if not ctx:
            return 0
        around = set()
        for j in self.pred[node.id] | self.succ[node.id]:
            m = self.nodes[j]
            if m.boundary is None and not m.stopword:
                around.add(m.lower)
                around.update(f for f, _ in m.forms)
        return len(ctx & around)

    def exact(self, tok, used):
        key = (tok.lower, tok.pos)
        return [n for n in self.nodes[2:] if n.id not in used and (key in n.forms or (n.lower, n.pos) == key)]

    def relabel(self, node: MscNode, label: str, pos: str, score: float) -> None:
        node.lower = label
        node.pos = pos
        node.twidf = score

    def lexical_match(self, tok, used) -> MscNode | None:
        cands = [n for n in self.nodes[2:] if n.id not in used and not n.stopword]
        if not cands:
            return None
        rels = {n.id: self._query(tok.lower, tok.pos, n.lower, n.pos) for n in cands}
        w_score = self.word_twidf(tok.lower)

        def by_twidf(pool):
            return min(pool, key=lambda n: (-n.twidf, n.id))

        syn = [n for n in cands if rels[n.id].is_synonym]
        if syn:
            node = by_twidf(syn)
            if w_score > node.twidf:
                self.relabel(node, tok.lower, tok.pos, w_score)
            return node
        hyper = [n for n in cands if rels[n.id].b_hypernym_of_a]
        if hyper:
            node = by_twidf(hyper)
            if w_score > node.twidf:
                self.relabel(node, tok.lower, tok.pos, w_score)
            return node
        shared = []
        for n in cands:
            ch = rels[n.id].common_hypernym
            if ch is not None and ch[1] * ch[2] >= self.sim_threshold:
                shared.append((-(ch[1] * ch[2]), n.id, n, ch[0]))
        if shared:
            _, _, node, concept = min(shared)
            label = self.lexicon.label(concept).lower()
            score = max(w_score, node.twidf)
            key = stem(label)
            self.twidf[key] = max(self.twidf.get(key, 0.0), score)
            self.relabel(node, label, node.pos, score)
            return node
        ent = [n for n in cands if rels[n.id].entails]
        if ent:
            node = by_twidf(ent)
            if w_score > node.twidf:
                self.relabel(node, tok.lower, tok.pos, w_score)
            return node
        return None

    def add(self, utt: Utterance) -> None:
        toks = utt.tokens
        used: set[int] = set()
        path = [START]
        for i, tok in enumerate(toks):
            ctx = {toks[j].lower for j in (i - 1, i + 1) if 0 <= j < len(toks) and not toks[j].is_stopword}
            scored = sorted((-self.context_overlap(n, ctx), -n.mapped_count, n.id)
                            for n in self.exact(tok, used))
            if tok.is_stopword:
                # a stopword needs at least one shared non-stopword neighbour
                scored = [s for s in scored if s[0] <= -1]
            node = self.nodes[scored[0][2]] if scored else None
            if node is None and not tok.is_stopword and self.lexicon is not None:
                node = self.lexical_match(tok, used)
            if node is None:
                node = self.new_node(tok)
            node.members.append((len(self.paths), i, tok.lower, tok.pos))
            node.forms.add((tok.lower, tok.pos))
            used.add(node.id)
            path.append(node.id)
        path.append(END)
        for a, b in zip(path, path[1:]):
            self.succ[a].add(b)
            self.pred[b].add(a)
        self.paths.append(path)


def build_mscg(utterances: Sequence[Utterance], lexicon: Lexicon | None = None,
               twidf: Mapping[str, float] | None = None,
               sim_threshold: float = DEFAULT_SIM_THRESHOLD) -> MscGraph:
    """Word graph of a community; tokens must carry POS tags and stopword flags."""
    if not utterances:
        raise ValueError("empty community")
    b = _Builder(lexicon, twidf, sim_threshold)
    for utt in utterances:
        b.add(utt)
    return MscGraph(b.nodes, b.succ, b.pred, b.paths, b.twidf)


# -- edge weights ------------------------------------------------------------

def local_weight(g: MscGraph, i: int, j: int) -> float:
    """Co-occurrence term: (f(i)+f(j)) over the summed inverse hop distances of i before j."""
    inv = 0.0
    for path in g.paths:
        try:
            pi, pj = path.index(i), path.index(j)
        except ValueError:
            continue
        if pi < pj:
            inv += 1.0 / (pj - pi)
    if inv == 0.0:
        return math.inf
    return (g.f(i) + g.f(j)) / inv


def attraction(g: MscGraph, i: int, j: int, embeddings: EmbeddingStore | None,
               default_distance: float = DEFAULT_DISTANCE, eps: float = EPS) -> float:
    """Word attraction force f(i) f(j) / d^2; boundary edges get 1."""
    if g.nodes[i].boundary or g.nodes[j].boundary:
        return 1.0
    d = None
    if embeddings is not None:
        d = embeddings.distance(_emb_key(g.nodes[i].lower, embeddings), _emb_key(g.nodes[j].lower, embeddings))
    if d is None:
        d = default_distance
    d = max(d, eps)
    return g.f(i) * g.f(j) / (d * d)


def _emb_key(label: str, embeddings: EmbeddingStore) -> str:
    if label in embeddings:
        return label
    alt = label.replace(" ", "_")
    return alt


def edge_weight(g: MscGraph, i: int, j: int, embeddings: EmbeddingStore | None = None,
                default_distance: float = DEFAULT_DISTANCE, eps: float = EPS) -> float:
    return local_weight(g, i, j) / attraction(g, i, j, embeddings, default_distance, eps)


def edge_weights(g: MscGraph, embeddings: EmbeddingStore | None = None,
                 default_distance: float = DEFAULT_DISTANCE, eps: float = EPS) -> dict[tuple[int, int], float]:
    return {(a, b): edge_weight(g, a, b, embeddings, default_distance, eps) for a, b in g.edges()}


# -- path enumeration --------------------------------------------------------

def _csr(n, edges):
    out: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    rev: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (a, b), w in edges.items():
        out[a].append((b, w))
        rev[b].append((a, w))

    def pack(adj):
        ptr, ind, wts = [0], [], []
        for row in adj:
            for v, w in sorted(row):
                ind.append(v)
                wts.append(w)
            ptr.append(len(ind))
        return ptr, ind, wts

    return pack(out) + pack(rev)


def k_shortest(n: int, weights: Mapping[tuple[int, int], float], source: int, target: int, k: int):
    """Up to ``k`` loopless source->target paths as ``(cost, nodes)`` sorted by cost then nodes."""
    return kernels.k_shortest_paths(n, *_csr(n, weights), source, target, k)


def k_shortest_paths(g: MscGraph, weights: Mapping[tuple[int, int], float], K: int = DEFAULT_K) -> list[PathCandidate]:
    found = k_shortest(len(g.nodes), weights, START, END, K)
    if not found:
        raise DisconnectedGraphError()
    return [PathCandidate(tuple(p), w, g.text(p)) for w, p in found]


def filter_paths(g: MscGraph, paths: Sequence[PathCandidate], z: int) -> list[PathCandidate]:
    """Keep paths with at least ``z`` words and at least one verb."""
    if z < 1:
        raise ValueError("z must be >= 1")
    kept = [p for p in paths
            if p.length >= z and any(g.nodes[i].is_verb for i in p.nodes[1:-1])]
    if not kept:
        raise NoValidCompression()
    return kept


# -- re-ranking components ---------------------------------------------------

def fluency(words: Sequence[str], lm: LanguageModel, order: int = 3) -> float:
    """Mean log10 probability of each word (and </s>) given up to ``order-1`` predecessors."""
    seq = ["<s>"] + [w.lower() for w in words] + ["</s>"]
    n = min(order, lm.max_order) if lm.max_order else order
    total = 0.0
    count = 0
    for i in range(1, len(seq)):
        total += lm.logprob(seq[max(0, i - n + 1): i + 1])
        count += 1
    return total / count


def positive_fluency(F: float) -> float:
    """Map a mean log-probability (<= 0) monotonically into (0, 1]."""
    return 1.0 / (1.0 - F)


def is_content(pos: str) -> bool:
    return pos.startswith(CONTENT_PREFIXES)


def coverage(words: Sequence[tuple[str, str]], twidf: Mapping[str, float]) -> float:
    """Mean TW-IDF over the nouns, verbs and adjectives of a path (0 if none)."""
    scores = [twidf.get(stem(w), 0.0) for w, pos in words if is_content(pos)]
    return sum(scores) / len(scores) if scores else 0.0


def word_clusters(labels: Sequence[str], embeddings: EmbeddingStore | None, k: int, seed: int = 42) -> dict[str, int]:
    """k-means cluster id for every label that has a vector (k clamped to the label count)."""
    if embeddings is None:
        return {}
    vocab = sorted({w for w in labels if _emb_key(w, embeddings) in embeddings})
    if not vocab:
        return {}
    pts = np.array([embeddings.get(_emb_key(w, embeddings)) for w in vocab])
    assign = kmeans(pts, max(1, min(k, len(vocab))), seed)
    return dict(zip(vocab, assign))


def diversity(words: Sequence[str], clusters: Mapping[str, int]) -> float:
    """Distinct clusters visited by the path divided by its length; 1 when nothing is clustered."""
    if not clusters:
        return 1.0
    if not words:
        return 0.0
    hit = {clusters[w] for w in words if w in clusters}
    return len(hit) / len(words)


def score_path(p: PathCandidate, g: MscGraph, lm: LanguageModel | None, clusters: Mapping[str, int]) -> PathCandidate:
    words = g.words(p.nodes)
    labels = [w for w, _ in words]
    p.F = fluency(labels, lm) if lm is not None else 0.0
    p.C = coverage(words, g.twidf)
    p.D = diversity(labels, clusters)
    denom = len(words) * positive_fluency(p.F) * p.C * p.D
    p.score = p.W / denom if denom > 0 else math.inf
    return p


@dataclass
class CompressParams:
    K: int = DEFAULT_K
    z: int = 8
    sim_threshold: float = DEFAULT_SIM_THRESHOLD
    seed: int = 42
    default_distance: float = DEFAULT_DISTANCE


@dataclass
class Compression:
    text: str
    words: list[tuple[str, str]]
    best: PathCandidate
    candidates: list[PathCandidate]
    graph: MscGraph

    def diagnostics(self) -> dict:
        return {"compression": self.text, "candidates": [c.as_dict() for c in self.candidates]}

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.diagnostics(), fh, indent=2)


def compress(utterances: Sequence[Utterance], *, twidf: Mapping[str, float] | None = None,
             lexicon: Lexicon | None = None, embeddings: EmbeddingStore | None = None,
             lm: LanguageModel | None = None, params: CompressParams | None = None) -> Compression:
    """Best compression of one community (lowest re-ranking score)."""
    params = params or CompressParams()
    g = build_mscg(utterances, lexicon, twidf, params.sim_threshold)
    weights = edge_weights(g, embeddings, params.default_distance)
    paths = filter_paths(g, k_shortest_paths(g, weights, params.K), params.z)
    clusters = word_clusters([g.nodes[i].lower for i in g.word_ids], embeddings, params.z, params.seed)
    for p in paths:
        score_path(p, g, lm, clusters)
    best = min(paths, key=lambda p: (p.score, p.W, p.nodes))
    return Compression(best.text, g.words(best.nodes), best, paths, g)
