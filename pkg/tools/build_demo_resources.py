"""Regenerate the bundled demo embeddings and trigram LM.

Run from the repository root:  python3 tools/build_demo_resources.py
Outputs are deterministic (fixed RNG seed, sorted vocabulary).
"""
import math
import re
from collections import Counter, defaultdict
from pathlib import Path

import numpy as np

from mscsumm.resources.embeddings import EmbeddingStore, save_embeddings
from mscsumm.resources.lm import LanguageModel, write_arpa

DEMO = Path(__file__).resolve().parents[1] / "src" / "mscsumm" / "data" / "demo"
DIM = 24
DISCOUNT = 0.7

TOPICS = {
    "device": "remote control controls design new prototype device user hand use easier",
    "power": "docking station battery batteries charge charges charging kinetic conventional night",
    "material": "case material wood wooden plastic soft curved single shell casing fits nicely",
    "display": "lcd screen display small",
    "speech": "speech recognition chip advanced microchip",
    "money": "price budget euros cost costs expensive pay production twenty five cheaper money increase",
    "buttons": "buttons button labels volume side big clear read",
    "people": "people older elderly prefer preferred surveys indicated want user",
    "style": "colours colors dark fancy trend watchers popular year marketing report looks",
    "team": "designer industrial interface work together team everybody decided choose",
    "meeting": "meeting website corporate present look check tomorrow next start",
    "chat": "football game watch exciting coffee sandwich weather outside terrible today",
}

# a little generic text so the LM is not fitted to the meeting alone
GENERIC = """
the team will meet again next week to discuss the design
we should look at the report before the meeting
people want a device that is easy to use
the price of the product should stay low
the designer will present the new prototype to the team
a small screen makes the device easier to read
the battery should last for a long time
we decided to use a plastic case for the product
the marketing team says people prefer fancy colours
the chip is too expensive for the budget
the user can charge the battery at night
everybody should read the report before the next meeting
the remote control should be easy to find
the case is made of wood and fits in the hand
speech recognition would make the device easier to use
the interface designer will work on the buttons
big buttons are easier to use for older people
"""


def words(line):
    return [w for w in re.split(r"[^a-z0-9'-]+", line.lower()) if w]


def corpus():
    sents = []
    for line in (DEMO / "meeting.txt").read_text().splitlines():
        text = line.split("\t", 1)[-1]
        text = re.sub(r"\{[^}]*\}", " ", text)
        sents.append(words(text))
    sents += [words(s) for s in GENERIC.strip().splitlines()]
    return [s for s in sents if s]


def build_embeddings(sents):
    rng = np.random.default_rng(7)
    vocab = sorted({w for s in sents for w in s} | {w for t in TOPICS.values() for w in t.split()})
    centers = {t: rng.normal(0, 1, DIM) for t in sorted(TOPICS)}
    topic_of = {}
    for t in sorted(TOPICS):
        for w in TOPICS[t].split():
            topic_of.setdefault(w, t)
    store = EmbeddingStore(DIM)
    for w in vocab:
        noise = rng.normal(0, 0.35, DIM)
        base = centers[topic_of[w]] if w in topic_of else rng.normal(0, 1, DIM)
        store.add(w, np.round(base + noise, 5))
    return store


def build_lm(sents, order=3):
    counts = [Counter() for _ in range(order + 1)]
    for s in sents:
        seq = ["<s>"] + s + ["</s>"]
        for n in range(1, order + 1):
            for i in range(len(seq) - n + 1):
                gram = tuple(seq[i:i + n])
                if gram == ("<s>",):
                    continue
                counts[n][gram] += 1

    total = sum(counts[1].values())
    vocab = sorted(g[0] for g in counts[1])
    # unigrams: discounted mass goes to <unk>
    probs = {1: {}}
    for g, c in counts[1].items():
        probs[1][g] = (c - DISCOUNT) / total
    probs[1][("<unk>",)] = DISCOUNT * len(counts[1]) / total
    probs[1][("<s>",)] = 0.0

    for n in range(2, order + 1):
        probs[n] = {}
        ctx_total = defaultdict(int)
        for g, c in counts[n].items():
            ctx_total[g[:-1]] += c
        for g, c in counts[n].items():
            probs[n][g] = (c - DISCOUNT) / ctx_total[g[:-1]]

    def lower_prob(gram):
        # interpolation-free backoff probability of gram under orders < len(gram)
        if len(gram) == 1:
            return probs[1].get(gram, probs[1][("<unk>",)])
        p = probs[len(gram)].get(gram)
        if p is not None:
            return p
        return backoff.get(gram[:-1], 1.0) * lower_prob(gram[1:])

    backoff = {}
    for n in range(1, order):
        followers = defaultdict(list)
        for g in probs[n + 1]:
            followers[g[:-1]].append(g)
        for ctx, grams in followers.items():
            left = 1.0 - sum(probs[n + 1][g] for g in grams)
            right = 1.0 - sum(lower_prob(g[1:]) for g in grams)
            backoff[ctx] = max(left, 1e-9) / max(right, 1e-9)

    entries = {}
    for n in range(1, order + 1):
        entries[n] = {}
        for g, p in probs[n].items():
            lp = -99.0 if p <= 0 else math.log10(p)
            bow = math.log10(backoff[g]) if n < order and g in backoff else (0.0 if n < order else None)
            entries[n][g] = (round(lp, 6), None if bow is None else round(bow, 6))
    return LanguageModel(entries)


def main():
    sents = corpus()
    save_embeddings(build_embeddings(sents), DEMO / "embeddings.txt", "text")
    write_arpa(build_lm(sents), DEMO / "lm.arpa")
    print("wrote", DEMO / "embeddings.txt", "and", DEMO / "lm.arpa")


if __name__ == "__main__":
    main()
