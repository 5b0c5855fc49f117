"""A small WordNet-style lexical database.

Dump format (UTF-8, one synset per line, ``#`` comments)::

    synset_id <TAB> pos <TAB> member,member,... <TAB> hypernym_id,... <TAB> entailment_id,...

``pos`` is one of ``n v a r`` (adjective satellites ``s`` are read as ``a``).
Multiword members use underscores.  Empty trailing columns may be omitted.
:func:`convert_wordnet` produces this dump from the ``data.*`` files of a
WordNet database directory.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path


class LexiconFormatError(ValueError):
    pass


@dataclass
class Synset:
    id: str
    pos: str
    members: tuple[str, ...]
    hypernyms: tuple[str, ...] = ()
    entailments: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return self.members[0].replace("_", " ")


@dataclass
class Relation:
    is_synonym: bool = False
    a_hypernym_of_b: bool = False
    b_hypernym_of_a: bool = False
    common_hypernym: tuple[str, float, float] | None = None  # (concept id, sim_a, sim_b)
    entails: bool = False

    @property
    def is_hypernym(self) -> bool:
        return self.a_hypernym_of_b or self.b_hypernym_of_a


# WordNet morphy detachment rules
_MORPHY = {
    "n": [("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"), ("ches", "ch"),
          ("shes", "sh"), ("men", "man"), ("ies", "y")],
    "v": [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""), ("ed", "e"),
          ("ed", ""), ("ing", "e"), ("ing", "")],
    "a": [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    "r": [],
}


def wordnet_pos(tag: str) -> str | None:
    """Map a Penn tag (or a bare n/v/a/r) to a lexicon category."""
    if tag in ("n", "v", "a", "r"):
        return tag
    if tag.startswith("NN"):
        return "n"
    if tag.startswith("VB"):
        return "v"
    if tag.startswith("JJ"):
        return "a"
    if tag.startswith("RB"):
        return "r"
    return None


@dataclass
class Lexicon:
    synsets: dict[str, Synset] = field(default_factory=dict)
    index: dict[tuple[str, str], list[str]] = field(default_factory=dict)

    def add(self, syn: Synset) -> None:
        self.synsets[syn.id] = syn
        for m in syn.members:
            self.index.setdefault((m.lower(), syn.pos), []).append(syn.id)

    def validate(self) -> None:
        for syn in self.synsets.values():
            for ref in syn.hypernyms + syn.entailments:
                if ref not in self.synsets:
                    raise LexiconFormatError(f"synset {syn.id} points to unknown synset {ref}")

    def lemmas(self, word: str, pos: str) -> list[str]:
        word = word.lower().replace(" ", "_")
        out = []
        if (word, pos) in self.index:
            out.append(word)
        for suffix, repl in _MORPHY.get(pos, []):
            if word.endswith(suffix) and len(word) > len(suffix):
                base = word[: len(word) - len(suffix)] + repl
                if (base, pos) in self.index and base not in out:
                    out.append(base)
        return out

    def senses(self, word: str, tag: str) -> list[str]:
        pos = wordnet_pos(tag)
        if pos is None:
            return []
        out: list[str] = []
        for lemma in self.lemmas(word, pos):
            for sid in self.index[(lemma, pos)]:
                if sid not in out:
                    out.append(sid)
        return out

    def ancestors(self, sid: str) -> dict[str, int]:
        """Hypernym ancestors of a synset with their minimum hop count (self at 0)."""
        hops = {sid: 0}
        queue = deque([sid])
        while queue:
            cur = queue.popleft()
            for h in self.synsets[cur].hypernyms:
                if h not in hops:
                    hops[h] = hops[cur] + 1
                    queue.append(h)
        return hops

    def query(self, a: str, a_tag: str, b: str, b_tag: str) -> Relation:
        """Relations between two tagged words; unknown words give an all-false report."""
        sa, sb = self.senses(a, a_tag), self.senses(b, b_tag)
        rel = Relation()
        if not sa or not sb:
            return rel
        rel.is_synonym = bool(set(sa) & set(sb))
        anc_a = {s: self.ancestors(s) for s in sa}
        anc_b = {s: self.ancestors(s) for s in sb}
        rel.a_hypernym_of_b = any(x in anc for x in sa for anc in anc_b.values() if anc.get(x, 0) > 0)
        rel.b_hypernym_of_a = any(x in anc for x in sb for anc in anc_a.values() if anc.get(x, 0) > 0)
        cands = []
        for ha in anc_a.values():
            for hb in anc_b.values():
                for concept in ha.keys() & hb.keys():
                    # a shared concept that *is* one of the words is a direct relation, not a common hypernym
                    if ha[concept] == 0 or hb[concept] == 0:
                        continue
                    sim_a = 1.0 / (1 + ha[concept])
                    sim_b = 1.0 / (1 + hb[concept])
                    cands.append((-(sim_a * sim_b), concept, sim_a, sim_b))
        if cands:
            _, concept, sim_a, sim_b = min(cands)
            rel.common_hypernym = (concept, sim_a, sim_b)
        ent_a = {e for s in sa for e in self.synsets[s].entailments}
        ent_b = {e for s in sb for e in self.synsets[s].entailments}
        rel.entails = bool(ent_a & set(sb)) or bool(ent_b & set(sa))
        return rel

    def label(self, sid: str) -> str:
        return self.synsets[sid].label


def lexicon_query(lex: Lexicon, a: tuple[str, str], b: tuple[str, str]) -> Relation:
    return lex.query(a[0], a[1], b[0], b[1])


def _split(col: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in col.split(",") if x.strip())


def parse_lexicon(lines, source: str = "<lexicon>") -> Lexicon:
    lex = Lexicon()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 3:
            raise LexiconFormatError(f"{source}:{lineno}: expected at least 3 tab-separated columns")
        cols += [""] * (5 - len(cols))
        pos = cols[1].strip()
        pos = "a" if pos == "s" else pos
        if pos not in ("n", "v", "a", "r"):
            raise LexiconFormatError(f"{source}:{lineno}: bad part of speech {cols[1]!r}")
        members = _split(cols[2])
        if not members:
            raise LexiconFormatError(f"{source}:{lineno}: synset without members")
        lex.add(Synset(cols[0].strip(), pos, members, _split(cols[3]), _split(cols[4])))
    lex.validate()
    return lex


def load_lexicon(path: str | Path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh, str(path))


def write_lexicon(lex: Lexicon, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# synset_id\tpos\tmembers\thypernyms\tentailments\n")
        for syn in lex.synsets.values():
            fh.write("\t".join([syn.id, syn.pos, ",".join(syn.members),
                                ",".join(syn.hypernyms), ",".join(syn.entailments)]) + "\n")


_WN_FILES = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}


def _wn_id(offset: str, pos: str) -> str:
    return f"{offset}-{'a' if pos == 's' else pos}"


def read_wordnet_data(path: str | Path) -> list[Synset]:
    """Parse one WordNet ``data.<pos>`` file (license header lines start with spaces)."""
    out = []
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith(" "):
                continue
            fields = line.split(" | ", 1)[0].split()
            try:
                offset, ss_type = fields[0], fields[2]
                w_cnt = int(fields[3], 16)
                members = tuple(fields[4 + 2 * i].lower() for i in range(w_cnt))
                j = 4 + 2 * w_cnt
                p_cnt = int(fields[j])
                hyper, entail = [], []
                for k in range(p_cnt):
                    sym, target, tpos = fields[j + 1 + 4 * k: j + 4 + 4 * k]
                    if sym in ("@", "@i"):
                        hyper.append(_wn_id(target, tpos))
                    elif sym == "*":
                        entail.append(_wn_id(target, tpos))
            except (IndexError, ValueError):
                raise LexiconFormatError(f"{path}:{lineno}: malformed WordNet data line") from None
            # adjective members may carry a syntactic marker like "(a)"
            members = tuple(m.split("(", 1)[0] for m in members)
            out.append(Synset(_wn_id(offset, ss_type), "a" if ss_type == "s" else ss_type,
                              members, tuple(hyper), tuple(entail)))
    return out


def convert_wordnet(dict_dir: str | Path, out_path: str | Path | None = None) -> Lexicon:
    """Build a :class:`Lexicon` from a WordNet ``dict/`` directory and optionally dump it."""
    lex = Lexicon()
    root = Path(dict_dir)
    for name in _WN_FILES:
        f = root / f"data.{name}"
        if f.exists():
            for syn in read_wordnet_data(f):
                lex.add(syn)
    if not lex.synsets:
        raise LexiconFormatError(f"no data.* files found in {root}")
    lex.validate()
    if out_path is not None:
        write_lexicon(lex, out_path)
    return lex
