"""Tokenization, stemming and word-list helpers shared by all stages."""
from __future__ import annotations

import unicodedata
from functools import lru_cache
from importlib import resources
from pathlib import Path

from nltk.stem.porter import PorterStemmer

_STEMMER = PorterStemmer()


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith(("P", "S"))


def strip_punct(token: str) -> str:
    """Remove leading and trailing punctuation; interior characters are kept."""
    i, j = 0, len(token)
    while i < j and _is_punct(token[i]):
        i += 1
    while j > i and _is_punct(token[j - 1]):
        j -= 1
    return token[i:j]


def is_asr_tag(token: str) -> bool:
    return len(token) > 2 and token[0] == "{" and token[-1] == "}"


def tokenize(text: str) -> list[str]:
    """Whitespace split, then strip boundary punctuation.

    ASR tags such as ``{vocalsound}`` survive untouched so that preprocessing
    can recognise them; punctuation-only tokens are dropped.
    """
    out = []
    for raw in text.split():
        if is_asr_tag(raw):
            out.append(raw)
            continue
        tok = strip_punct(raw)
        if tok:
            out.append(tok)
    return out


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Porter stem of the lowercased word."""
    return _STEMMER.stem(word.lower())


def read_wordlist(lines) -> list[str]:
    """Entries from an iterable of lines: one per line, ``#`` starts a comment."""
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line.lower())
    return out


def load_wordlist(path: str | Path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return read_wordlist(fh)


def _bundled(name: str) -> list[str]:
    with resources.files("mscsumm").joinpath("data", name).open(encoding="utf-8") as fh:
        return read_wordlist(fh)


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return frozenset(_bundled("stopwords.txt"))


@lru_cache(maxsize=None)
def default_fillers() -> tuple[str, ...]:
    return tuple(_bundled("fillers.txt"))


DEFAULT_TAGS = frozenset({"vocalsound", "pause", "gap"})
