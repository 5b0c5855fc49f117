"""Benchmark reports shaped like a systems x (metric x R/P/F1) table."""
from __future__ import annotations

import json
import re
from collections.abc import Iterable, Mapping
from pathlib import Path

from .rouge import METRICS, RougeScore

_REF_RE = re.compile(r"^(?P<mid>.+)\.ref(?P<k>\d+)$")


class MissingReferences(FileNotFoundError):
    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__("missing references for meetings: " + ", ".join(self.missing))


def load_references(ref_dir: str | Path, meeting_ids: Iterable[str] | None = None) -> dict[str, list[str]]:
    """Reference summaries: ``<id>.ref0``, ``<id>.ref1``... (or a single ``<id>.txt``)."""
    root = Path(ref_dir)
    found: dict[str, list[tuple[int, str]]] = {}
    for f in sorted(root.iterdir()):
        m = _REF_RE.match(f.name)
        if m:
            found.setdefault(m["mid"], []).append((int(m["k"]), f.read_text(encoding="utf-8")))
        elif f.suffix == ".txt":
            found.setdefault(f.stem, []).append((0, f.read_text(encoding="utf-8")))
    refs = {mid: [t for _, t in sorted(v)] for mid, v in found.items()}
    if meeting_ids is not None:
        wanted = list(meeting_ids)
        missing = [m for m in wanted if m not in refs]
        if missing:
            raise MissingReferences(missing)
        refs = {m: refs[m] for m in wanted}
    return refs


def load_extractive(ref_dir: str | Path, meeting_id: str) -> list[str] | None:
    """Human extractive summary ``<id>.extractive`` (one utterance per line) if present."""
    f = Path(ref_dir) / f"{meeting_id}.extractive"
    if not f.exists():
        return None
    return [line.strip() for line in f.read_text(encoding="utf-8").splitlines() if line.strip()]


def mean_score(scores: Iterable[RougeScore]) -> RougeScore:
    scores = list(scores)
    if not scores:
        return RougeScore(0.0, 0.0, 0.0)
    n = len(scores)
    return RougeScore(sum(s.recall for s in scores) / n, sum(s.precision for s in scores) / n,
                      sum(s.f1 for s in scores) / n)


class EvalReport:
    """Per-meeting scores for each system; macro averages are unweighted means over meetings."""

    def __init__(self, metrics: Iterable[str] = tuple(METRICS)):
        self.metrics = list(metrics)
        self.per_meeting: dict[str, dict[str, dict[str, RougeScore]]] = {}

    def add(self, system: str, meeting: str, scores: Mapping[str, RougeScore]) -> None:
        self.per_meeting.setdefault(system, {})[meeting] = dict(scores)

    @property
    def systems(self) -> list[str]:
        return list(self.per_meeting)

    def macro(self, system: str) -> dict[str, RougeScore]:
        rows = self.per_meeting[system].values()
        return {m: mean_score(r[m] for r in rows) for m in self.metrics}

    def to_tsv(self) -> str:
        head = ["system"] + [f"{m} {x}" for m in self.metrics for x in ("R", "P", "F1")]
        lines = ["\t".join(head)]
        for sysname in self.systems:
            mac = self.macro(sysname)
            cells = [sysname]
            for m in self.metrics:
                s = mac[m]
                cells += [f"{100 * s.recall:.2f}", f"{100 * s.precision:.2f}", f"{100 * s.f1:.2f}"]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        def sd(s: RougeScore) -> dict:
            return {"R": s.recall, "P": s.precision, "F1": s.f1}

        return {
            "metrics": self.metrics,
            "macro": {s: {m: sd(v) for m, v in self.macro(s).items()} for s in self.systems},
            "per_meeting": {s: {mid: {m: sd(v) for m, v in row.items()} for mid, row in rows.items()}
                            for s, rows in self.per_meeting.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def write(self, out_prefix: str | Path) -> tuple[Path, Path]:
        p = Path(out_prefix)
        tsv, js = p.with_suffix(".tsv"), p.with_suffix(".json")
        tsv.write_text(self.to_tsv(), encoding="utf-8")
        js.write_text(self.to_json(), encoding="utf-8")
        return tsv, js
