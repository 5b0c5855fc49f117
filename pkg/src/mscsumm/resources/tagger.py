"""Part-of-speech taggers.

Any object with a ``tag(tokens) -> tags`` method works.  Two are shipped:
:class:`LexiconTagger` (word lexicon, suffix rules and a few context rules) and
:class:`PretaggedTagger` for input that already carries ``word/TAG`` tokens.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Protocol, Sequence

from ..ingest import Transcript

_NOUN_CONTEXT = {"DT", "PRP$", "JJ", "JJR", "JJS", "POS", "CD"}
_VERB_CONTEXT = {"MD", "TO"}
_SUBJECT_CONTEXT = {"PRP", "NNS", "NN", "NNP", "WP", "EX"}

# (suffix, min word length, tag); first match wins
_SUFFIX_RULES = [
    ("ing", 5, "VBG"),
    ("ed", 4, "VBD"),
    ("ly", 4, "RB"),
    ("tions", 6, "NNS"), ("tion", 5, "NN"), ("sion", 5, "NN"), ("ments", 6, "NNS"), ("ment", 5, "NN"),
    ("ness", 5, "NN"), ("ity", 4, "NN"), ("ship", 5, "NN"), ("ance", 5, "NN"), ("ence", 5, "NN"),
    ("ism", 4, "NN"), ("ist", 4, "NN"),
    ("able", 5, "JJ"), ("ible", 5, "JJ"), ("ful", 5, "JJ"), ("ous", 5, "JJ"), ("ive", 5, "JJ"),
    ("less", 5, "JJ"), ("ish", 5, "JJ"), ("ic", 4, "JJ"), ("al", 4, "JJ"),
    ("ize", 5, "VB"), ("ise", 5, "VB"), ("ify", 5, "VB"),
    ("ers", 5, "NNS"), ("ors", 5, "NNS"), ("er", 4, "NN"), ("or", 4, "NN"),
    ("ss", 3, "NN"), ("us", 3, "NN"), ("is", 3, "NN"),
    ("s", 4, "NNS"),
]


class PosTagger(Protocol):
    def tag(self, tokens: Sequence[str]) -> list[str]: ...


def _guess(word: str) -> str:
    if any(ch.isdigit() for ch in word):
        return "CD"
    for suffix, minlen, tag in _SUFFIX_RULES:
        if len(word) >= minlen and word.endswith(suffix):
            return tag
    return "NN"


class LexiconTagger:
    """Majority tag from a lexicon, suffix guesses for unknown words, light context rules.

    The lexicon is TSV: ``word<TAB>TAG[,TAG...]`` with the most frequent tag first.
    """

    def __init__(self, lexicon: dict[str, tuple[str, ...]]):
        self.lexicon = lexicon

    @classmethod
    def from_lines(cls, lines) -> "LexiconTagger":
        lex = {}
        for line in lines:
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            word, _, tags = line.partition("\t")
            tags = tuple(t.strip() for t in tags.split(",") if t.strip())
            if tags:
                lex.setdefault(word.strip().lower(), tags)
        return cls(lex)

    @classmethod
    def load(cls, path: str | Path) -> "LexiconTagger":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def default(cls) -> "LexiconTagger":
        with resources.files("mscsumm").joinpath("data", "tagger_lexicon.tsv").open(encoding="utf-8") as fh:
            return cls.from_lines(fh)

    def tag(self, tokens: Sequence[str]) -> list[str]:
        if not tokens:
            raise ValueError("cannot tag an empty token sequence")
        out: list[str] = []
        for tok in tokens:
            word = tok.lower()
            cands = self.lexicon.get(word)
            if cands is None:
                out.append(_guess(word))
                continue
            choice = cands[0]
            prev = out[-1] if out else None
            if len(cands) > 1 and prev is not None:
                if prev in _VERB_CONTEXT:
                    choice = next((c for c in cands if c == "VB"), choice)
                elif prev in _NOUN_CONTEXT:
                    choice = next((c for c in cands if c.startswith("NN")), choice)
                elif prev in _SUBJECT_CONTEXT:
                    choice = next((c for c in cands if c in ("VBP", "VBZ", "VBD")), choice)
            out.append(choice)
        return out


class PretaggedTagger:
    """Reads tags from ``word/TAG`` tokens."""

    def tag(self, tokens: Sequence[str]) -> list[str]:
        if not tokens:
            raise ValueError("cannot tag an empty token sequence")
        out = []
        for tok in tokens:
            word, sep, tag = tok.rpartition("/")
            if not sep or not word or not tag:
                raise ValueError(f"token {tok!r} is not of the form word/TAG")
            out.append(tag.upper())
        return out


def tag(tagger: PosTagger, tokens: Sequence[str]) -> list[str]:
    tags = tagger.tag(tokens)
    if len(tags) != len(tokens):
        raise ValueError(f"tagger returned {len(tags)} tags for {len(tokens)} tokens")
    return tags


def tag_transcript(t: Transcript, tagger: PosTagger | None) -> None:
    """Fill ``Token.pos`` in place. Tokens that already have a tag are left alone."""
    for utt in t.utterances:
        if all(tok.pos for tok in utt.tokens):
            continue
        if tagger is None or isinstance(tagger, PretaggedTagger):
            raise ValueError(f"utterance {utt.index} has untagged tokens and no tagger is available")
        tags = tag(tagger, [tok.surface for tok in utt.tokens])
        for tok, t_ in zip(utt.tokens, tags):
            if not tok.pos:
                tok.pos = t_
