"""Transcript parsing and ASR-oriented cleanup."""
from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field, replace

from .text import DEFAULT_TAGS, default_fillers, default_stopwords, tokenize


class TranscriptParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass
class Token:
    surface: str
    lower: str = ""
    stem: str = ""
    pos: str = ""
    is_stopword: bool = False
    is_filler: bool = False

    def __post_init__(self):
        if not self.lower:
            self.lower = self.surface.lower()


@dataclass
class Utterance:
    index: int
    tokens: list[Token]
    speaker: str | None = None

    @property
    def words(self) -> list[str]:
        return [t.lower for t in self.tokens]

    @property
    def text(self) -> str:
        return " ".join(t.lower for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass
class Transcript:
    meeting_id: str
    utterances: list[Utterance] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.utterances)


def _make_tokens(text: str, pretagged: bool) -> list[Token]:
    tokens = []
    for raw in tokenize(text):
        if pretagged and "/" in raw[1:]:
            word, tag = raw.rsplit("/", 1)
            tokens.append(Token(word, pos=tag.upper()))
        else:
            tokens.append(Token(raw))
    return tokens


def parse_transcript(raw: str, format: str = "plain", meeting_id: str | None = None,
                     pretagged: bool = False) -> Transcript:
    """Parse a transcript.

    ``plain``: one utterance per line, optionally prefixed by ``speaker<TAB>``.
    ``json``: ``{"meeting_id": ..., "utterances": [{"speaker": ..., "text": ...}]}``.
    With ``pretagged`` every token is expected as ``word/TAG``.
    """
    if not raw.strip():
        raise TranscriptParseError("empty transcript")
    rows: list[tuple[str | None, str]] = []
    if format == "plain":
        for line in raw.splitlines():
            speaker = None
            if "\t" in line:
                speaker, line = line.split("\t", 1)
                speaker = speaker.strip() or None
            rows.append((speaker, line))
        mid = meeting_id or "meeting"
    elif format == "json":
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise TranscriptParseError(f"malformed json: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(doc, dict) or not isinstance(doc.get("utterances"), list):
            raise TranscriptParseError("json transcript needs an 'utterances' array")
        for i, item in enumerate(doc["utterances"]):
            if not isinstance(item, dict) or not isinstance(item.get("text"), str):
                raise TranscriptParseError(f"utterance {i} has no 'text' string")
            rows.append((item.get("speaker"), item["text"]))
        mid = meeting_id or doc.get("meeting_id") or "meeting"
    else:
        raise ValueError(f"unknown transcript format {format!r}")

    utterances = []
    for speaker, text in rows:
        tokens = _make_tokens(text, pretagged)
        if tokens:
            utterances.append(Utterance(len(utterances), tokens, speaker))
    if not utterances:
        raise TranscriptParseError("empty transcript")
    return Transcript(str(mid), utterances)


# -- preprocessing --------------------------------------------------------

def _collapse_unigrams(toks: list[Token]) -> list[Token]:
    out: list[Token] = []
    for t in toks:
        if out and out[-1].lower == t.lower:
            continue
        out.append(t)
    return out


def _collapse_bigrams(toks: list[Token]) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(toks):
        out.append(toks[i])
        # out ends with (x, y) and the next two input tokens repeat it
        while (len(out) >= 2 and i + 2 < len(toks)
               and toks[i + 1].lower == out[-2].lower and toks[i + 2].lower == out[-1].lower):
            i += 2
        i += 1
    return out


def collapse_repeats(toks: list[Token]) -> list[Token]:
    """Collapse consecutive repeated unigrams, then bigrams, until nothing changes."""
    while True:
        new = _collapse_bigrams(_collapse_unigrams(toks))
        if len(new) == len(toks):
            return new
        toks = new


def _remove_fillers(toks: list[Token], fillers: list[tuple[str, ...]]) -> list[Token]:
    out = []
    i = 0
    while i < len(toks):
        for phrase in fillers:  # longest first
            n = len(phrase)
            if tuple(t.lower for t in toks[i:i + n]) == phrase:
                i += n
                break
        else:
            out.append(toks[i])
            i += 1
    return out


def preprocess(t: Transcript, stopwords: Iterable[str] | None = None,
               fillers: Iterable[str] | None = None,
               tags: Iterable[str] | None = None,
               min_content: int = 3) -> Transcript:
    """Remove ASR tags, repetitions, fillers and boundary stopwords; prune short utterances.

    Returns a new transcript; surviving utterances keep their original index.
    """
    stop = frozenset(w.lower() for w in (default_stopwords() if stopwords is None else stopwords))
    fill_src = default_fillers() if fillers is None else fillers
    phrases = sorted({tuple(f.lower().split()) for f in fill_src if f.strip()},
                     key=lambda p: (-len(p), p))
    tagset = {"{" + x.lower().strip("{}") + "}" for x in (DEFAULT_TAGS if tags is None else tags)}

    kept = []
    for utt in t.utterances:
        toks = [replace(tok) for tok in utt.tokens if tok.lower not in tagset]
        # filler removal can expose new repeats and vice versa
        while True:
            before = len(toks)
            toks = _remove_fillers(collapse_repeats(toks), phrases)
            if len(toks) == before:
                break
        for tok in toks:
            tok.is_stopword = tok.lower in stop
        lo, hi = 0, len(toks)
        while lo < hi and toks[lo].is_stopword:
            lo += 1
        while hi > lo and toks[hi - 1].is_stopword:
            hi -= 1
        toks = toks[lo:hi]
        if sum(not tok.is_stopword for tok in toks) >= min_content:
            kept.append(Utterance(utt.index, toks, utt.speaker))
    return Transcript(t.meeting_id, kept)


def mark_stopwords(t: Transcript, stopwords: Iterable[str]) -> None:
    stop = {w.lower() for w in stopwords}
    for utt in t.utterances:
        for tok in utt.tokens:
            tok.is_stopword = tok.lower in stop
