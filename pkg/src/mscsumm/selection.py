"""Budgeted submodular sentence selection."""
from __future__ import annotations

import itertools
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

from .text import stem


def _identity(w: str) -> str:
    return w


@dataclass
class Objective:
    """f(S) = sum of word scores over every token of S + lam * (#clusters touched by S).

    Words are looked up after ``normalize`` (stemming by default).  Words without
    a score add nothing to the first term and belong to no cluster.
    """

    lam: float
    scores: Mapping[str, float]
    clusters: Mapping[str, int] = field(default_factory=dict)
    normalize: Callable[[str], str] = stem

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lambda must be >= 0")

    def sentence_terms(self, sentence: Sequence[str]) -> tuple[float, frozenset[int]]:
        total = 0.0
        hit = set()
        for w in sentence:
            key = self.normalize(w)
            s = self.scores.get(key)
            if s is None:
                continue
            total += s
            c = self.clusters.get(key)
            if c is not None:
                hit.add(c)
        return total, frozenset(hit)


def f_value(sentences: Sequence[Sequence[str]], obj: Objective) -> float:
    first = 0.0
    covered: set[int] = set()
    for s in sentences:
        w, c = obj.sentence_terms(s)
        first += w
        covered |= c
    return first + obj.lam * len(covered)


@dataclass
class SummarySelection:
    indices: list[int]
    sentences: list[list[str]]
    cost: int
    value: float
    trace: list[dict] = field(default_factory=list)


def greedy_select(sentences: Sequence[Sequence[str]], obj: Objective, budget: int, r: float = 1.0) -> SummarySelection:
    """Cost-scaled greedy with the best-singleton fallback.

    Each round adds the feasible sentence maximizing gain / cost**r (ties: lower
    index); the result is compared with the best single sentence that fits and
    the higher objective wins.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if r < 0:
        raise ValueError("r must be >= 0")
    terms = [obj.sentence_terms(s) for s in sentences]
    costs = [len(s) for s in sentences]
    if any(c < 1 for c in costs):
        raise ValueError("every sentence needs at least one word")

    chosen: list[int] = []
    spent = 0
    first = 0.0
    covered: set[int] = set()
    trace = []
    remaining = set(range(len(sentences)))
    while True:
        best = None
        for i in sorted(remaining):
            if spent + costs[i] > budget:
                continue
            gain = terms[i][0] + obj.lam * len(terms[i][1] - covered)
            ratio = gain / costs[i] ** r
            if best is None or ratio > best[0]:
                best = (ratio, i, gain)
        if best is None:
            break
        _, i, gain = best
        chosen.append(i)
        remaining.discard(i)
        spent += costs[i]
        first += terms[i][0]
        covered |= terms[i][1]
        trace.append({"index": i, "gain": gain, "ratio": best[0], "cost": costs[i]})
    value = first + obj.lam * len(covered)

    single = None
    for i, (w, c) in enumerate(terms):
        if costs[i] <= budget:
            v = w + obj.lam * len(c)
            if single is None or v > single[0]:
                single = (v, i)
    if single is not None and single[0] > value:
        i = single[1]
        trace.append({"index": i, "singleton": True, "value": single[0]})
        return SummarySelection([i], [list(sentences[i])], costs[i], single[0], trace)
    return SummarySelection(chosen, [list(sentences[i]) for i in chosen], spent, value, trace)


def brute_force_select(sentences: Sequence[Sequence[str]], obj: Objective, budget: int) -> tuple[float, tuple[int, ...]]:
    """Exact optimum by enumeration (small inputs only)."""
    best = (0.0, ())
    n = len(sentences)
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            if sum(len(sentences[i]) for i in combo) <= budget:
                v = f_value([sentences[i] for i in combo], obj)
                if v > best[0]:
                    best = (v, combo)
    return best


@dataclass
class SubmodularityReport:
    ok: bool
    checked: int
    violation: dict | None = None


def verify_submodularity(sentences: Sequence[Sequence[str]], obj: Objective | None = None,
                         f: Callable[[frozenset[int]], float] | None = None,
                         tol: float = 1e-9) -> SubmodularityReport:
    """Exhaustive check of diminishing returns and monotonicity over a small universe.

    ``f`` (a function of index sets) overrides the objective when given.
    """
    n = len(sentences)
    if n > 10:
        raise ValueError("exhaustive check limited to 10 sentences")
    if f is None:
        if obj is None:
            raise ValueError("need an objective or a set function")
        f = lambda s: f_value([sentences[i] for i in sorted(s)], obj)  # noqa: E731
    cache: dict[frozenset[int], float] = {}

    def val(s):
        if s not in cache:
            cache[s] = f(s)
        return cache[s]

    checked = 0
    for bmask in range(1 << n):
        big = frozenset(i for i in range(n) if bmask >> i & 1)
        # enumerate subsets of big
        sub = bmask
        while True:
            small = frozenset(i for i in range(n) if sub >> i & 1)
            if val(small) > val(big) + tol:
                return SubmodularityReport(False, checked, {"kind": "monotonicity", "A": sorted(small),
                                                             "B": sorted(big)})
            for s in range(n):
                if s in big:
                    continue
                ga = val(small | {s}) - val(small)
                gb = val(big | {s}) - val(big)
                checked += 1
                if ga < gb - tol:
                    return SubmodularityReport(False, checked, {"kind": "submodularity", "A": sorted(small),
                                                                 "B": sorted(big), "s": s,
                                                                 "gain_A": ga, "gain_B": gb})
            if sub == 0:
                break
            sub = (sub - 1) & bmask
    return SubmodularityReport(True, checked)
