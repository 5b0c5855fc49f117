"""Utterance clustering: TF-IDF -> truncated SVD (LSA) -> k-means."""
from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .ingest import Utterance

MAX_ITER = 300


@dataclass
class TermMatrix:
    rows: list[int]
    terms: list[str]
    values: np.ndarray


@dataclass
class Community:
    id: int
    utterance_ids: list[int]


def _terms(utt) -> list[str]:
    if isinstance(utt, Utterance):
        return [t.lower for t in utt.tokens if not t.is_stopword]
    return [w.lower() for w in utt]


def tfidf(utterances: Sequence) -> TermMatrix:
    """Raw-count tf times ``ln(N/df) + 1`` over lowercased non-stopword terms.

    Accepts :class:`Utterance` objects or plain word lists (used verbatim).
    """
    if not utterances:
        raise ValueError("tfidf needs at least one utterance")
    counts = [Counter(_terms(u)) for u in utterances]
    df: Counter = Counter()
    for c in counts:
        df.update(c.keys())
    terms = sorted(df)
    col = {t: j for j, t in enumerate(terms)}
    n = len(utterances)
    idf = np.array([math.log(n / df[t]) + 1.0 for t in terms])
    m = np.zeros((n, len(terms)))
    for i, c in enumerate(counts):
        for t, k in c.items():
            m[i, col[t]] = k
    rows = [u.index if isinstance(u, Utterance) else i for i, u in enumerate(utterances)]
    return TermMatrix(rows, terms, m * idf)


def canonical_signs(u: np.ndarray) -> np.ndarray:
    """Per-column sign flips so the largest-magnitude entry of each column is positive."""
    idx = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[idx, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return signs


def lsa_reduce(m: TermMatrix | np.ndarray, dims: int) -> np.ndarray:
    """Document coordinates ``U_k * S_k`` of the rank-``dims`` truncated SVD."""
    a = m.values if isinstance(m, TermMatrix) else np.asarray(m, dtype=float)
    if not 1 <= dims <= min(a.shape):
        raise ValueError(f"dims={dims} out of range 1..{min(a.shape)}")
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    u = u[:, :dims]
    return (u * canonical_signs(u)) * s[:dims]


def _sqdist(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _plusplus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    chosen = [int(rng.integers(n))]
    d2 = _sqdist(points, points[chosen]).min(axis=1)
    while len(chosen) < k:
        total = d2.sum()
        if total <= 0:
            # fewer distinct points than k: take unused points in order
            rest = [i for i in range(n) if i not in chosen]
            chosen.append(rest[0])
        else:
            chosen.append(int(rng.choice(n, p=d2 / total)))
        d2 = np.minimum(d2, _sqdist(points, points[chosen[-1:]])[:, 0])
    return points[chosen].copy()


def kmeans_objective(points, labels, centers) -> float:
    points = np.asarray(points, dtype=float)
    return float(((points - centers[labels]) ** 2).sum())


def kmeans(points, k: int, seed: int = 42, max_iter: int = MAX_ITER, trace: list | None = None) -> list[int]:
    """Lloyd's algorithm from k-means++ seeding.

    Ties go to the lowest centroid id; an empty cluster is re-seeded with the
    point farthest from its centroid.  ``trace`` (if given) receives the
    objective after every assignment step.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = len(pts)
    if k < 1 or k > n:
        raise ValueError(f"k={k} must be between 1 and the number of points ({n})")
    rng = np.random.default_rng(seed)
    centers = _plusplus(pts, k, rng)
    labels = None
    for _ in range(max_iter):
        d = _sqdist(pts, centers)
        new = d.argmin(axis=1)
        for j in range(k):
            if np.any(new == j):
                continue
            far = d[np.arange(n), new]
            sizes = np.bincount(new, minlength=k)
            for i in np.argsort(-far, kind="stable"):
                if far[i] <= 0:
                    break
                # move the point with all its duplicates; the donor must stay non-empty
                same = np.all(pts == pts[i], axis=1) & (new == new[i])
                if sizes[new[i]] > same.sum():
                    new[same] = j
                    centers[j] = pts[i]
                    break
        if trace is not None:
            trace.append(kmeans_objective(pts, new, centers))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for j in range(k):
            members = pts[labels == j]
            if len(members):
                centers[j] = members.mean(axis=0)
        if trace is not None:
            trace.append(kmeans_objective(pts, labels, centers))
    return [int(x) for x in labels]


def detect_communities(utterances: Sequence[Utterance], n: int, dims: int, seed: int = 42) -> list[Community]:
    """Partition utterances into at most ``n`` communities ordered by first utterance index."""
    if not utterances:
        raise ValueError("nothing to summarize")
    if n < 1:
        raise ValueError("n must be >= 1")
    k = min(n, len(utterances))
    m = tfidf(utterances)
    rank = int(np.linalg.matrix_rank(m.values)) if m.values.size else 0
    if rank == 0:
        labels = [0] * len(utterances)
    else:
        pts = lsa_reduce(m, max(1, min(dims, rank)))
        labels = kmeans(pts, k, seed)
    groups: dict[int, list[int]] = {}
    for utt, lab in zip(utterances, labels):
        groups.setdefault(lab, []).append(utt.index)
    ordered = sorted(groups.values(), key=min)
    return [Community(i, sorted(g)) for i, g in enumerate(ordered)]
