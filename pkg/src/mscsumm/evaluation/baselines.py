"""Extractive baseline summarizers.

Every baseline takes utterances as word lists and returns the indices of the
chosen utterances in selection order; cost is the word count.
"""
from __future__ import annotations

import math
import random
from collections.abc import Hashable, Mapping, Sequence

import numpy as np

from ..graphcore import build_word_graph, corerank, weighted_core
from ..selection import Objective, greedy_select
from ..text import default_stopwords, stem

RANDOM_RUNS = 30


class OracleUnavailable(RuntimeError):
    pass


def random_summary(utterances: Sequence[Sequence[str]], budget: int, rng: random.Random) -> list[int]:
    """Sample without replacement; stop as soon as the next draw would exceed the budget."""
    order = list(range(len(utterances)))
    rng.shuffle(order)
    chosen, spent = [], 0
    for i in order:
        c = len(utterances[i])
        if spent + c > budget:
            break
        chosen.append(i)
        spent += c
    return chosen


def baseline_random(utterances: Sequence[Sequence[str]], budget: int, seed: int = 42,
                    runs: int = RANDOM_RUNS) -> list[list[int]]:
    """One summary per run; run ``i`` uses ``random.Random(seed + i)``."""
    return [random_summary(utterances, budget, random.Random(seed + i)) for i in range(runs)]


def baseline_oracle(extractive: Sequence[Sequence[str]] | None, budget: int, seed: int = 42,
                    runs: int = RANDOM_RUNS) -> list[list[int]]:
    """Random baseline drawn from human extractive summary utterances."""
    if not extractive:
        raise OracleUnavailable("oracle unavailable: no extractive summary")
    return baseline_random(extractive, budget, seed, runs)


def baseline_longest_greedy(utterances: Sequence[Sequence[str]], budget: int) -> list[int]:
    order = sorted(range(len(utterances)), key=lambda i: (-len(utterances[i]), i))
    chosen, spent = [], 0
    for i in order:
        c = len(utterances[i])
        if spent + c <= budget:
            chosen.append(i)
            spent += c
    return chosen


def pagerank(graph: Mapping[Hashable, Mapping[Hashable, float]], damping: float = 0.85,
             tol: float = 1e-8, max_iter: int = 1000) -> dict:
    """Weighted PageRank by power iteration on an undirected weighted graph.

    Nodes without edges spread their mass uniformly.  Scores sum to 1.
    """
    nodes = list(graph)
    for u in graph:
        for v in graph[u]:
            if v not in graph:
                raise ValueError(f"edge to unknown node {v!r}")
    n = len(nodes)
    if n == 0:
        return {}
    idx = {u: i for i, u in enumerate(nodes)}
    m = np.zeros((n, n))
    for u, nb in graph.items():
        for v, w in nb.items():
            if w < 0:
                raise ValueError("negative edge weight")
            m[idx[v], idx[u]] += w
    out = m.sum(axis=0)
    dangling = out == 0
    m[:, ~dangling] /= out[~dangling]
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = damping * (m @ x + x[dangling].sum() / n) + (1 - damping) / n
        nxt /= nxt.sum()
        if np.abs(nxt - x).sum() < tol:
            x = nxt
            break
        x = nxt
    return {u: float(x[idx[u]]) for u in nodes}


def textrank_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """Shared-word count normalized by the log lengths (0 when undefined)."""
    if not a or not b:
        return 0.0
    common = len(set(a) & set(b))
    denom = math.log(len(a)) + math.log(len(b))
    if common == 0 or denom <= 0:
        return 0.0
    return common / denom


def _content(words: Sequence[str], stop) -> list[str]:
    return [stem(w) for w in words if w.lower() not in stop]


def baseline_textrank(utterances: Sequence[Sequence[str]], budget: int, stopwords=None) -> list[int]:
    stop = default_stopwords() if stopwords is None else {w.lower() for w in stopwords}
    bags = [_content(u, stop) for u in utterances]
    graph: dict[int, dict[int, float]] = {i: {} for i in range(len(bags))}
    for i in range(len(bags)):
        for j in range(i + 1, len(bags)):
            s = textrank_similarity(bags[i], bags[j])
            if s > 0:
                graph[i][j] = s
                graph[j][i] = s
    pr = pagerank(graph)
    order = sorted(range(len(utterances)), key=lambda i: (-round(pr[i], 12), i))
    chosen, spent = [], 0
    for i in order:
        c = len(utterances[i])
        if spent + c <= budget:
            chosen.append(i)
            spent += c
    return chosen


def word_scores(utterances: Sequence[Sequence[str]], source: str = "corerank", window: int = 6,
                stopwords=None) -> dict[str, float]:
    """CoreRank or PageRank scores of the stemmed meeting word graph."""
    stop = default_stopwords() if stopwords is None else {w.lower() for w in stopwords}
    g = build_word_graph([_content(u, stop) for u in utterances], window)
    if source == "corerank":
        return {k: float(v) for k, v in corerank(g, weighted_core(g)).items()}
    if source == "pagerank":
        return pagerank(g.adj)
    raise ValueError(f"unknown score source {source!r}")


def baseline_submodular(utterances: Sequence[Sequence[str]], budget: int, lam: float, r: float,
                        score_source: str = "corerank", clusters: Mapping[str, int] | None = None,
                        window: int = 6, stopwords=None) -> list[int]:
    obj = Objective(lam, word_scores(utterances, score_source, window, stopwords), clusters or {})
    return greedy_select(utterances, obj, budget, r).indices
