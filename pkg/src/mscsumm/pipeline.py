"""End-to-end summarization and benchmarking on top of the library modules."""
from __future__ import annotations

import dataclasses
import json
import logging
import multiprocessing
import os
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .communities import detect_communities
from .evaluation.baselines import (
    OracleUnavailable,
    RANDOM_RUNS,
    baseline_longest_greedy,
    baseline_oracle,
    baseline_random,
    baseline_submodular,
    baseline_textrank,
)
from .evaluation.report import EvalReport, load_extractive, load_references, mean_score
from .evaluation.rouge import METRICS, score_all
from .graphcore import build_word_graph, community_scores, corerank, weighted_core
from .ingest import Transcript, TranscriptParseError, parse_transcript, preprocess
from .mscg import CompressionError, CompressParams, compress, word_clusters
from .resources import (
    EmbeddingStore,
    LanguageModel,
    Lexicon,
    LexiconTagger,
    PretaggedTagger,
    load_arpa,
    load_embeddings,
    load_lexicon,
    tag_transcript,
)
from .selection import Objective, SummarySelection, greedy_select
from .text import default_fillers, default_stopwords, load_wordlist, tokenize

log = logging.getLogger(__name__)

DEMO_DIR = Path(__file__).parent / "data" / "demo"
RESOURCE_ENV = "MSCG_RESOURCES"

PRESETS: dict[str, dict] = {
    "ami": {"n": 50, "z": 8, "lam": 0.7, "r": 0.5, "budget": 350, "lsa_dims": 30},
    "icsi": {"n": 40, "z": 14, "lam": 0.0, "r": 0.0, "budget": 450, "lsa_dims": 60},
    # small enough for the bundled 40-utterance meeting
    "demo": {"n": 10, "z": 6, "lam": 0.7, "r": 0.5, "budget": 80, "lsa_dims": 10},
}

SYSTEMS = ("ours", "random", "longest", "textrank", "corerank-sub", "pagerank-sub", "oracle")


class PipelineError(RuntimeError):
    """A failure tagged with the module that raised it and the meeting being processed."""

    def __init__(self, module: str, meeting: str, message: str):
        self.module = module
        self.meeting = meeting
        super().__init__(f"[{module}] {meeting}: {message}")


@dataclass
class PipelineConfig:
    n: int = 50
    z: int = 8
    lam: float = 0.7
    r: float = 0.5
    budget: int = 350
    K: int = 200
    window: int = 6
    lsa_dims: int = 30
    k_final: int = 60
    sim_threshold: float = 0.3
    seed: int = 42
    embeddings: str | None = None
    lm: str | None = None
    lexicon: str | None = None
    stopwords: str | None = None
    fillers: str | None = None
    tagger: str = "lexicon"
    format: str = "plain"
    resources: str | None = None

    @classmethod
    def preset(cls, name: str, **overrides) -> "PipelineConfig":
        try:
            values = dict(PRESETS[name.lower()])
        except KeyError:
            raise ValueError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)})") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def update(self, values: Mapping) -> "PipelineConfig":
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(values) - names
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **{k: v for k, v in values.items() if v is not None})

    def validate(self) -> None:
        for name in ("n", "z", "K", "lsa_dims", "k_final"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.window < 2:
            raise ValueError("window must be >= 2")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        if self.lam < 0 or self.r < 0:
            raise ValueError("lambda and r must be >= 0")
        if not 0 <= self.sim_threshold <= 1:
            raise ValueError("sim_threshold must be in [0, 1]")
        if self.format not in ("plain", "json"):
            raise ValueError(f"unknown transcript format {self.format!r}")

    def compress_params(self) -> CompressParams:
        return CompressParams(K=self.K, z=self.z, sim_threshold=self.sim_threshold, seed=self.seed)


@dataclass
class Resources:
    embeddings: EmbeddingStore | None = None
    lm: LanguageModel | None = None
    lexicon: Lexicon | None = None
    tagger: object = None
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    fillers: tuple[str, ...] = field(default_factory=default_fillers)


def resource_dir(config: PipelineConfig) -> Path:
    return Path(config.resources or os.environ.get(RESOURCE_ENV) or DEMO_DIR)


def _pick(explicit: str | None, root: Path, names: Sequence[str]) -> Path | None:
    if explicit:
        p = Path(explicit)
        if not p.exists():
            raise PipelineError("resources", "-", f"no such file: {p}")
        return p
    for name in names:
        if (root / name).exists():
            return root / name
    return None


def _embedding_format(path: Path) -> str:
    return "binary" if path.suffix in (".bin", ".w2v") else "text"


def load_resources(config: PipelineConfig) -> Resources:
    """Load every resource; explicit paths must exist, defaults come from the resource dir."""
    root = resource_dir(config)
    res = Resources()
    try:
        p = _pick(config.embeddings, root, ("embeddings.bin", "embeddings.txt"))
        if p:
            res.embeddings = load_embeddings(p, _embedding_format(p))
        p = _pick(config.lm, root, ("lm.arpa",))
        if p:
            res.lm = load_arpa(p)
        p = _pick(config.lexicon, root, ("lexicon.tsv",))
        if p:
            res.lexicon = load_lexicon(p)
        if config.stopwords:
            res.stopwords = frozenset(w.lower() for w in load_wordlist(config.stopwords))
        if config.fillers:
            res.fillers = tuple(load_wordlist(config.fillers))
        if config.tagger == "pretagged":
            res.tagger = PretaggedTagger()
        elif config.tagger in ("lexicon", "default"):
            res.tagger = LexiconTagger.default()
        else:
            res.tagger = LexiconTagger.load(config.tagger)
    except PipelineError:
        raise
    except (OSError, ValueError) as exc:
        raise PipelineError("resources", "-", str(exc)) from exc
    for name in ("embeddings", "lm", "lexicon"):
        if getattr(res, name) is None:
            log.warning("no %s resource found; the corresponding component is disabled", name)
    return res


@dataclass
class SummaryResult:
    meeting_id: str
    sentences: list[str]
    selection: SummarySelection | None
    diagnostics: dict
    tagged: list[list[tuple[str, str]]] = field(default_factory=list)

    @property
    def text(self) -> str:
        return "\n".join(self.sentences)


def read_transcript(path: str | Path, config: PipelineConfig) -> Transcript:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
        return parse_transcript(raw, config.format, meeting_id=path.stem,
                                pretagged=config.tagger == "pretagged")
    except (OSError, TranscriptParseError, ValueError) as exc:
        raise PipelineError("ingest", path.stem, str(exc)) from exc


def clean(transcript: Transcript, res: Resources) -> Transcript:
    t = preprocess(transcript, res.stopwords, res.fillers)
    if not t.utterances:
        raise PipelineError("ingest", transcript.meeting_id, "nothing to summarize")
    try:
        tag_transcript(t, res.tagger)
    except ValueError as exc:
        raise PipelineError("resources", transcript.meeting_id, str(exc)) from exc
    return t


def meeting_objective(t: Transcript, config: PipelineConfig, res: Resources) -> Objective:
    """CoreRank of the whole-meeting word graph plus embedding clusters over its stems."""
    g = build_word_graph(t.utterances, config.window)
    scores = corerank(g, weighted_core(g))
    surface: dict[str, str] = {}
    for utt in t.utterances:
        for tok in utt.tokens:
            if not tok.is_stopword:
                surface.setdefault(tok.stem, tok.lower)
    clusters: dict[str, int] = {}
    if res.embeddings is not None:
        words = word_clusters(sorted(set(surface.values())), res.embeddings, config.k_final, config.seed)
        clusters = {s: words[w] for s, w in surface.items() if w in words}
    return Objective(config.lam, {k: float(v) for k, v in scores.items()}, clusters)


def summarize_transcript(transcript: Transcript, config: PipelineConfig, res: Resources,
                         debug: bool = False) -> SummaryResult:
    mid = transcript.meeting_id
    t = clean(transcript, res)
    try:
        comms = detect_communities(t.utterances, config.n, config.lsa_dims, config.seed)
    except ValueError as exc:
        raise PipelineError("communities", mid, str(exc)) from exc
    by_index = {u.index: u for u in t.utterances}
    groups = [[by_index[i] for i in c.utterance_ids] for c in comms]
    twidf = community_scores(groups, config.window)

    params = config.compress_params()
    sentences: list[list[str]] = []
    tagged: list[list[tuple[str, str]]] = []
    diag_comms = []
    for c, utts, scores in zip(comms, groups, twidf):
        entry: dict = {"id": c.id, "utterances": c.utterance_ids}
        try:
            comp = compress(utts, twidf=scores, lexicon=res.lexicon, embeddings=res.embeddings,
                            lm=res.lm, params=params)
        except CompressionError as exc:
            log.warning("[mscg] %s: community %d skipped: %s", mid, c.id, exc)
            entry["skipped"] = str(exc)
        else:
            sentences.append([w for w, _ in comp.words])
            tagged.append(comp.words)
            entry["compression"] = comp.text
            if debug:
                entry["candidates"] = [p.as_dict() for p in comp.candidates]
        diag_comms.append(entry)

    selection = None
    out: list[str] = []
    if sentences:
        obj = meeting_objective(t, config, res)
        selection = greedy_select(sentences, obj, config.budget, config.r)
        out = [" ".join(s) for s in selection.sentences]
    diagnostics = {"meeting_id": mid, "config": dataclasses.asdict(config), "communities": diag_comms,
                   "objective_trace": selection.trace if selection else []}
    chosen = [tagged[i] for i in selection.indices] if selection else []
    return SummaryResult(mid, out, selection, diagnostics, chosen)


def summarize(config: PipelineConfig, transcript_path: str | Path, res: Resources | None = None,
              debug: bool = False) -> SummaryResult:
    config.validate()
    res = res or load_resources(config)
    return summarize_transcript(read_transcript(transcript_path, config), config, res, debug)


# -- benchmark ---------------------------------------------------------------

def _mean_scores(runs: Iterable[dict]) -> dict:
    runs = list(runs)
    return {m: mean_score(r[m] for r in runs) for m in METRICS}


def _words(text: str) -> list[str]:
    return tokenize(text)


def run_system(system: str, t: Transcript, config: PipelineConfig, res: Resources,
               refs: list[str], extractive: list[str] | None):
    """Scores (averaged over runs for the sampling baselines) of one system on one meeting."""
    utts = [u.words for u in t.utterances]

    def text_of(indices, pool=utts):
        return "\n".join(" ".join(pool[i]) for i in indices)

    if system == "ours":
        result = summarize_transcript(t, config, res)
        return score_all(result.text, refs)
    if system == "random":
        runs = baseline_random(utts, config.budget, config.seed, RANDOM_RUNS)
        return _mean_scores(score_all(text_of(r), refs) for r in runs)
    if system == "oracle":
        pool = [_words(x) for x in extractive] if extractive else None
        runs = baseline_oracle(pool, config.budget, config.seed, RANDOM_RUNS)
        return _mean_scores(score_all(text_of(r, pool), refs) for r in runs)
    if system == "longest":
        return score_all(text_of(baseline_longest_greedy(utts, config.budget)), refs)
    if system == "textrank":
        return score_all(text_of(baseline_textrank(utts, config.budget, res.stopwords)), refs)
    if system in ("corerank-sub", "pagerank-sub"):
        clusters = meeting_objective(t, config, res).clusters
        source = system.split("-")[0]
        idx = baseline_submodular(utts, config.budget, config.lam, config.r, source, clusters,
                                  config.window, res.stopwords)
        return score_all(text_of(idx), refs)
    raise ValueError(f"unknown system {system!r}")


_WORKER: dict = {}


def _benchmark_meeting(args):
    path, systems, refs, extractive = args
    config, res = _WORKER["config"], _WORKER["res"]
    raw = read_transcript(path, config)
    mid = raw.meeting_id
    t = clean(raw, res)
    rows = {}
    for system in systems:
        try:
            rows[system] = run_system(system, t, config, res, refs, extractive)
        except OracleUnavailable as exc:
            log.warning("%s: %s", mid, exc)
        except PipelineError as exc:
            log.warning("%s", exc)
            rows[system] = score_all("", refs)
    return mid, rows


def list_meetings(corpus_dir: str | Path, config: PipelineConfig) -> list[Path]:
    suffix = ".json" if config.format == "json" else ".txt"
    files = sorted(p for p in Path(corpus_dir).iterdir() if p.suffix == suffix)
    if not files:
        raise PipelineError("cli", str(corpus_dir), f"no *{suffix} transcripts found")
    return files


def benchmark(config: PipelineConfig, corpus_dir: str | Path, refs_dir: str | Path,
              systems: Sequence[str] = SYSTEMS, res: Resources | None = None, jobs: int = 1) -> EvalReport:
    config.validate()
    bad = [s for s in systems if s not in SYSTEMS]
    if bad:
        raise ValueError(f"unknown systems: {', '.join(bad)}")
    files = list_meetings(corpus_dir, config)
    refs = load_references(refs_dir, [f.stem for f in files])
    res = res or load_resources(config)
    tasks = [(f, list(systems), refs[f.stem], load_extractive(refs_dir, f.stem)) for f in files]

    _WORKER.update(config=config, res=res)
    if jobs > 1 and "fork" in multiprocessing.get_all_start_methods():
        # forked workers inherit the loaded resources instead of re-reading them
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            results = pool.map(_benchmark_meeting, tasks)
    else:
        results = [_benchmark_meeting(task) for task in tasks]

    report = EvalReport()
    for system in systems:
        for mid, rows in results:
            if system in rows:
                report.add(system, mid, rows[system])
    return report


def load_config_file(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PipelineError("cli", "-", f"bad config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise PipelineError("cli", "-", f"config file {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}
