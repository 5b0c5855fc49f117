"""ROUGE-N and ROUGE-SU4 (ROUGE-1.5.5 style aggregate multi-reference counts)."""
from __future__ import annotations

import re
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from ..text import stem as porter

_NON_ALNUM = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: float, ref_total: float, cand_total: float) -> "RougeScore":
        r = overlap / ref_total if ref_total > 0 else 0.0
        p = overlap / cand_total if cand_total > 0 else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(r, p, f)


def rouge_tokens(text: str | Sequence[str], stem: bool = True) -> list[str]:
    """Lowercase, split on non-alphanumerics, optionally Porter-stem."""
    if not isinstance(text, str):
        text = " ".join(text)
    words = [w for w in _NON_ALNUM.split(text.lower()) if w]
    return [porter(w) for w in words] if stem else words


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def skip_bigrams(tokens: Sequence[str], max_skip: int = 4, unigrams: bool = True) -> Counter:
    """Ordered pairs with at most ``max_skip`` words between them (plus unigrams)."""
    c: Counter = Counter()
    for i, a in enumerate(tokens):
        for b in tokens[i + 1: i + 2 + max_skip]:
            c[(a, b)] += 1
    if unigrams:
        c.update((t,) for t in tokens)
    return c


def _score(cand: Counter, refs: list[Counter]) -> RougeScore:
    overlap = sum(sum((cand & ref).values()) for ref in refs)
    ref_total = sum(sum(ref.values()) for ref in refs)
    cand_total = sum(cand.values()) * len(refs)
    return RougeScore.from_counts(overlap, ref_total, cand_total)


def _refs(references) -> list:
    if isinstance(references, str):
        return [references]
    refs = list(references)
    if not refs:
        raise ValueError("at least one reference is required")
    return refs


def rouge_n(candidate, references, n: int = 1, stem: bool = True) -> RougeScore:
    if n < 1:
        raise ValueError("n must be >= 1")
    refs = _refs(references)
    cand = ngrams(rouge_tokens(candidate, stem), n)
    return _score(cand, [ngrams(rouge_tokens(r, stem), n) for r in refs])


def rouge_su4(candidate, references, stem: bool = True) -> RougeScore:
    refs = _refs(references)
    cand = skip_bigrams(rouge_tokens(candidate, stem))
    return _score(cand, [skip_bigrams(rouge_tokens(r, stem)) for r in refs])


METRICS = {
    "ROUGE-1": lambda c, r, stem=True: rouge_n(c, r, 1, stem),
    "ROUGE-2": lambda c, r, stem=True: rouge_n(c, r, 2, stem),
    "ROUGE-SU4": rouge_su4,
}


def score_all(candidate, references, stem: bool = True) -> dict[str, RougeScore]:
    return {name: fn(candidate, references, stem) for name, fn in METRICS.items()}
