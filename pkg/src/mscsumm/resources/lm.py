"""ARPA back-off n-gram language models."""
from __future__ import annotations

import re
from collections.abc import Sequence
from pathlib import Path

UNK = "<unk>"
DEFAULT_FLOOR = -99.0

_COUNT_RE = re.compile(r"^ngram\s+(\d+)\s*=\s*(\d+)$")
_SECTION_RE = re.compile(r"^\\(\d+)-grams:$")


class ArpaParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class LanguageModel:
    """Katz back-off model over log10 probabilities.

    ``entries[n]`` maps an n-gram tuple to ``(logprob, backoff_or_None)``.
    """

    def __init__(self, entries: dict[int, dict[tuple[str, ...], tuple[float, float | None]]],
                 floor: float = DEFAULT_FLOOR):
        self.entries = entries
        self.max_order = max(entries) if entries else 0
        self.floor = floor

    def logprob(self, ngram: Sequence[str]) -> float:
        ngram = tuple(ngram)
        if not ngram:
            raise ValueError("empty ngram")
        if len(ngram) > self.max_order:
            ngram = ngram[-self.max_order:]
        total = 0.0
        # iterative form of: stored value, else backoff(prefix) + logprob(shorter)
        while True:
            hit = self.entries.get(len(ngram), {}).get(ngram)
            if hit is not None:
                return total + hit[0]
            if len(ngram) == 1:
                unk = self.entries.get(1, {}).get((UNK,))
                return total + (unk[0] if unk is not None else self.floor)
            ctx = self.entries.get(len(ngram) - 1, {}).get(ngram[:-1])
            if ctx is not None and ctx[1] is not None:
                total += ctx[1]
            ngram = ngram[1:]


def lm_logprob(lm: LanguageModel, ngram: Sequence[str]) -> float:
    return lm.logprob(ngram)


def parse_arpa(lines, floor: float = DEFAULT_FLOOR, source: str = "<arpa>") -> LanguageModel:
    declared: dict[int, int] = {}
    entries: dict[int, dict] = {}
    state = "preamble"
    order = 0
    ended = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if state == "preamble":
            if line == "\\data\\":
                state = "data"
            continue
        if line == "\\end\\":
            ended = True
            break
        m = _SECTION_RE.match(line)
        if m:
            order = int(m.group(1))
            if order not in declared:
                raise ArpaParseError(f"section \\{order}-grams: not declared in \\data\\", lineno)
            entries[order] = {}
            state = "grams"
            continue
        if state == "data":
            m = _COUNT_RE.match(line)
            if not m:
                raise ArpaParseError(f"bad count line {line!r}", lineno)
            declared[int(m.group(1))] = int(m.group(2))
            continue
        parts = line.split()
        if len(parts) not in (order + 1, order + 2):
            raise ArpaParseError(f"expected {order}-gram entry, got {line!r}", lineno)
        try:
            prob = float(parts[0])
            bow = float(parts[order + 1]) if len(parts) == order + 2 else None
        except ValueError:
            raise ArpaParseError(f"non-numeric probability in {line!r}", lineno) from None
        entries[order][tuple(parts[1:order + 1])] = (prob, bow)

    if state == "preamble":
        raise ArpaParseError("missing \\data\\ section")
    if not ended:
        raise ArpaParseError("missing \\end\\ marker")
    for n, count in sorted(declared.items()):
        if n not in entries:
            raise ArpaParseError(f"missing \\{n}-grams: section")
        if len(entries[n]) != count:
            raise ArpaParseError(f"ngram count mismatch at order {n}: header says {count}, "
                                 f"found {len(entries[n])}")
    return LanguageModel(entries, floor)


def load_arpa(path: str | Path, floor: float = DEFAULT_FLOOR) -> LanguageModel:
    with open(path, encoding="utf-8", errors="replace") as fh:
        return parse_arpa(fh, floor, str(path))


def write_arpa(lm: LanguageModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\\data\\\n")
        for n in sorted(lm.entries):
            fh.write(f"ngram {n}={len(lm.entries[n])}\n")
        for n in sorted(lm.entries):
            fh.write(f"\n\\{n}-grams:\n")
            for gram, (p, b) in sorted(lm.entries[n].items()):
                row = f"{p:.6f}\t{' '.join(gram)}"
                if b is not None:
                    row += f"\t{b:.6f}"
                fh.write(row + "\n")
        fh.write("\n\\end\\\n")
