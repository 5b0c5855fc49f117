"""Graph-of-words, weighted k-core decomposition, CoreRank and TW-IDF."""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

from . import kernels
from .ingest import Utterance
from .text import stem

DEFAULT_WINDOW = 6


class WordGraph:
    """Undirected co-occurrence graph with integer edge weights."""

    def __init__(self):
        self.adj: dict[str, dict[str, int]] = {}

    def add_node(self, u: str) -> None:
        self.adj.setdefault(u, {})

    def add_edge(self, u: str, v: str, w: int = 1) -> None:
        if u == v:
            return
        self.add_node(u)
        self.add_node(v)
        self.adj[u][v] = self.adj[u].get(v, 0) + w
        self.adj[v][u] = self.adj[v].get(u, 0) + w

    @property
    def nodes(self) -> list[str]:
        return list(self.adj)

    def edges(self) -> list[tuple[str, str, int]]:
        return sorted((u, v, w) for u, nb in self.adj.items() for v, w in nb.items() if u < v)

    def weighted_degree(self, u: str) -> int:
        return sum(self.adj[u].values())

    def __contains__(self, u: str) -> bool:
        return u in self.adj

    def __len__(self) -> int:
        return len(self.adj)

    def to_edgelist(self) -> str:
        return "".join(f"{u} {v} {w}\n" for u, v, w in self.edges())

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.to_edgelist(), encoding="utf-8")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, int]], nodes: Iterable[str] = ()) -> "WordGraph":
        g = cls()
        for n in nodes:
            g.add_node(n)
        for u, v, w in edges:
            g.add_edge(u, v, w)
        return g
        return g


def graph_terms(utt: Utterance) -> list[str]:
    """Stemmed non-stopword terms of an utterance (fills ``Token.stem``)."""
    out = []
    for tok in utt.tokens:
        if not tok.stem:
            tok.stem = stem(tok.lower)
        if not tok.is_stopword:
            out.append(tok.stem)
    return out


def build_word_graph(docs: Iterable[Sequence[str] | Utterance], window: int = DEFAULT_WINDOW) -> WordGraph:
    """Co-occurrence counts of terms at most ``window - 1`` positions apart, within each utterance."""
    if window < 2:
        raise ValueError("window must be >= 2")
    g = WordGraph()
    for doc in docs:
        terms = graph_terms(doc) if isinstance(doc, Utterance) else list(doc)
        for t in terms:
            g.add_node(t)
        for i, a in enumerate(terms):
            for b in terms[i + 1: i + window]:
                g.add_edge(a, b)
    return g


def _csr(g: WordGraph, order: Sequence[str]):
    idx = {u: i for i, u in enumerate(order)}
    ptr, ind, wts = [0], [], []
    for u in order:
        for v, w in sorted(g.adj[u].items(), key=lambda kv: idx[kv[0]]):
            ind.append(idx[v])
            wts.append(w)
        ptr.append(len(ind))
    return ptr, ind, wts


def weighted_core(g: WordGraph, order: Sequence[str] | None = None) -> dict[str, int]:
    """Weighted core numbers by min-degree peeling (ties: lexicographic, or ``order``)."""
    nodes = sorted(g.adj) if order is None else list(order)
    if not nodes:
        return {}
    ptr, ind, wts = _csr(g, nodes)
    cores = kernels.core_numbers(len(nodes), ptr, ind, wts)
    return dict(zip(nodes, cores))


def corerank(g: WordGraph, cores: Mapping[str, int]) -> dict[str, int]:
    return {u: sum(cores[v] for v in nb) for u, nb in g.adj.items()}


def idf(n_docs: int, df: int) -> float:
    return 1.0 + math.log(n_docs / df)


def tw_idf(coreranks: Sequence[Mapping[str, float]]) -> list[dict[str, float]]:
    """Per-community CoreRank re-weighted by ``1 + ln(|D| / D_t)``."""
    if not coreranks:
        raise ValueError("tw_idf needs at least one community")
    df: dict[str, int] = {}
    for cr in coreranks:
        for t in cr:
            df[t] = df.get(t, 0) + 1
    n = len(coreranks)
    return [{t: s * idf(n, df[t]) for t, s in cr.items()} for cr in coreranks]


def community_scores(communities: Sequence[Sequence[Utterance]], window: int = DEFAULT_WINDOW) -> list[dict[str, float]]:
    """TW-IDF tables for a list of communities (each a list of utterances)."""
    ranks = []
    for utts in communities:
        g = build_word_graph(utts, window)
        ranks.append(corerank(g, weighted_core(g)))
    return tw_idf(ranks)
