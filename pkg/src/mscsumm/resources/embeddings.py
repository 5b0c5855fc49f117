"""word2vec text/binary embedding files."""
from __future__ import annotations

from pathlib import Path

import numpy as np


class EmbeddingFormatError(ValueError):
    pass


class EmbeddingStore:
    """Word vectors keyed by lowercased surface form."""

    def __init__(self, dimension: int, vectors: dict[str, np.ndarray] | None = None):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.vectors: dict[str, np.ndarray] = {}
        for word, vec in (vectors or {}).items():
            self.add(word, vec)

    def add(self, word: str, vec) -> bool:
        key = word.lower()
        if key in self.vectors:
            return False
        arr = np.asarray(vec, dtype=np.float64)
        if arr.shape != (self.dimension,):
            raise EmbeddingFormatError(f"vector for {word!r} has shape {arr.shape}, expected ({self.dimension},)")
        arr.setflags(write=False)
        self.vectors[key] = arr
        return True

    def get(self, word: str):
        """Vector for ``word`` or None when absent."""
        return self.vectors.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def distance(self, a: str, b: str) -> float | None:
        va, vb = self.get(a), self.get(b)
        if va is None or vb is None:
            return None
        return float(np.linalg.norm(va - vb))


def _header(line: str, path) -> tuple[int, int]:
    parts = line.split()
    try:
        count, dim = int(parts[0]), int(parts[1])
    except (IndexError, ValueError):
        raise EmbeddingFormatError(f"{path}: unreadable header {line.strip()!r}") from None
    if len(parts) != 2 or count < 0 or dim <= 0:
        raise EmbeddingFormatError(f"{path}: unreadable header {line.strip()!r}")
    return count, dim


def load_embeddings(path: str | Path, format: str = "text") -> EmbeddingStore:
    """Load word2vec vectors; duplicate words keep their first occurrence."""
    if format == "text":
        return _load_text(path)
    if format == "binary":
        return _load_binary(path)
    raise ValueError(f"unknown embedding format {format!r}")


def _load_text(path) -> EmbeddingStore:
    with open(path, encoding="utf-8", errors="replace") as fh:
        _, dim = _header(fh.readline(), path)
        store = EmbeddingStore(dim)
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip().split(" ")
            if not parts or parts == [""]:
                continue
            if len(parts) != dim + 1:
                raise EmbeddingFormatError(
                    f"{path}: row {lineno} ({parts[0]!r}) has {len(parts) - 1} values, expected {dim}")
            try:
                vec = np.array(parts[1:], dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError(f"{path}: row {lineno} has a non-numeric value") from None
            store.add(parts[0], vec)
    return store


def _load_binary(path) -> EmbeddingStore:
    with open(path, "rb") as fh:
        count, dim = _header(fh.readline().decode("utf-8", errors="replace"), path)
        store = EmbeddingStore(dim)
        nbytes = 4 * dim
        for row in range(count):
            word = bytearray()
            while True:
                ch = fh.read(1)
                if not ch:
                    raise EmbeddingFormatError(f"{path}: truncated at row {row + 1}")
                if ch == b" ":
                    break
                if ch != b"\n":
                    word.extend(ch)
            buf = fh.read(nbytes)
            if len(buf) != nbytes:
                raise EmbeddingFormatError(
                    f"{path}: row {row + 1} ({word.decode('utf-8', 'replace')!r}) has "
                    f"{len(buf) // 4} values, expected {dim}")
            store.add(word.decode("utf-8", errors="replace"),
                      np.frombuffer(buf, dtype="<f4").astype(np.float64))
    return store


def save_embeddings(store: EmbeddingStore, path: str | Path, format: str = "text") -> None:
    """Write a store in word2vec text or binary layout (binary uses float32)."""
    words = list(store.vectors)
    if format == "text":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{len(words)} {store.dimension}\n")
            for w in words:
                fh.write(w + " " + " ".join(repr(float(x)) for x in store.vectors[w]) + "\n")
    elif format == "binary":
        with open(path, "wb") as fh:
            fh.write(f"{len(words)} {store.dimension}\n".encode())
            for w in words:
                fh.write(w.encode("utf-8") + b" ")
                fh.write(store.vectors[w].astype("<f4").tobytes())
                fh.write(b"\n")
    else:
        raise ValueError(f"unknown embedding format {format!r}")
