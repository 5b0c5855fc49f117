import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscsumm.evaluation import (
    EvalReport,
    OracleUnavailable,
    RougeScore,
    baseline_longest_greedy,
    baseline_oracle,
    baseline_random,
    baseline_submodular,
    baseline_textrank,
    load_references,
    pagerank,
    rouge_n,
    rouge_su4,
    score_all,
)
from mscsumm.evaluation.baselines import textrank_similarity, word_scores
from mscsumm.evaluation.report import MissingReferences, load_extractive


def test_identity():
    s = rouge_n("the remote control", ["the remote control"], 1)
    assert (s.recall, s.precision, s.f1) == (1.0, 1.0, 1.0)
    assert rouge_n("the remote control", "the remote control", 2).f1 == 1.0
    assert rouge_su4("a b c d", ["a b c d"]).f1 == 1.0


def test_disjoint():
    assert rouge_n("a b", ["c d"], 1) == RougeScore(0.0, 0.0, 0.0)
    assert rouge_su4("a b", ["c d"]).f1 == 0.0


def test_unigram_hand_case():
    s = rouge_n("a b c", ["a b d"], 1, stem=False)
    assert s.recall == pytest.approx(2 / 3) and s.precision == pytest.approx(2 / 3) and s.f1 == pytest.approx(2 / 3)


def test_bigram_hand_case():
    s = rouge_n("a b c", ["a b d"], 2, stem=False)
    assert s.recall == 0.5 and s.precision == 0.5


def test_su4_hand_case():
    # skip bigrams {ab, ac, bc} vs {ac, ab, cb}: 2 shared, plus 3 unigrams -> 5 of 6
    s = rouge_su4("a b c", ["a c b"], stem=False)
    assert s.recall == pytest.approx(5 / 6) and s.precision == pytest.approx(5 / 6)


def test_su4_gap_limit():
    # a and g are 5 words apart: no skip bigram
    s = rouge_su4("a g", ["a b c d e f g"], stem=False)
    assert s.precision == pytest.approx(2 / 3)


def test_single_word_candidate():
    s = rouge_su4("remote", ["remote control"], stem=False)
    assert s.precision == 1.0 and s.recall == pytest.approx(1 / 3)


def test_clipping():
    s = rouge_n("the the the", ["the cat"], 1, stem=False)
    assert s.precision == pytest.approx(1 / 3) and s.recall == 0.5


def test_multi_reference_aggregate():
    s = rouge_n("a b", ["a c", "a b"], 1, stem=False)
    # overlap 1 + 2, reference unigrams 2 + 2, candidate 2 x 2 references
    assert s.recall == pytest.approx(3 / 4) and s.precision == pytest.approx(3 / 4)


def test_stemming_and_case():
    assert rouge_n("Batteries charging", ["battery charges"], 1).f1 == 1.0
    assert rouge_n("Batteries charging", ["battery charges"], 1, stem=False).f1 == 0.0


def test_empty_candidate():
    assert rouge_n("", ["a b"], 1) == RougeScore(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        rouge_n("a", [], 1)


def test_score_all_keys():
    assert set(score_all("a b", ["a b"])) == {"ROUGE-1", "ROUGE-2", "ROUGE-SU4"}


words = st.lists(st.sampled_from(list("abcdefg")), min_size=1, max_size=12).map(" ".join)


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_rouge_properties(c, r):
    for n in (1, 2):
        s = rouge_n(c, [r], n, stem=False)
        t = rouge_n(r, [c], n, stem=False)
        assert 0 <= s.recall <= 1 and 0 <= s.precision <= 1 and 0 <= s.f1 <= 1
        assert s.recall == pytest.approx(t.precision) and s.precision == pytest.approx(t.recall)
        expect = 2 * s.precision * s.recall / (s.precision + s.recall) if s.precision + s.recall else 0
        assert s.f1 == pytest.approx(expect)
    su = rouge_su4(c, [r], stem=False)
    assert (su.f1 == 0) == (len(set(c.split()) & set(r.split())) == 0)


# -- pagerank ------------------------------------------------------------------

def test_pagerank_two_nodes():
    pr = pagerank({0: {1: 1.0}, 1: {0: 1.0}})
    assert pr[0] == pytest.approx(0.5) and pr[1] == pytest.approx(0.5)


def test_pagerank_path_closed_form():
    # stationary solve of the damped walk on a - b - c
    pr = pagerank({"a": {"b": 1}, "b": {"a": 1, "c": 1}, "c": {"b": 1}})
    d = 0.85
    m = np.array([[0, 0.5, 0], [1, 0, 1], [0, 0.5, 0]])
    x = np.linalg.solve(np.eye(3) - d * m, np.full(3, (1 - d) / 3))
    x /= x.sum()
    assert [pr[k] for k in "abc"] == pytest.approx(list(x), abs=1e-7)
    assert pr["b"] > pr["a"]


def test_pagerank_complete_uniform_and_scaling():
    g = {i: {j: 1.0 for j in range(4) if j != i} for i in range(4)}
    assert all(v == pytest.approx(0.25) for v in pagerank(g).values())
    rng = random.Random(3)
    h = {i: {} for i in range(6)}
    for i in range(6):
        for j in range(i + 1, 6):
            if rng.random() < 0.5:
                h[i][j] = h[j][i] = rng.random() + 0.1
    a = pagerank(h)
    b = pagerank({u: {v: 7 * w for v, w in nb.items()} for u, nb in h.items()})
    assert sum(a.values()) == pytest.approx(1.0, abs=1e-9)
    assert all(a[k] == pytest.approx(b[k], abs=1e-9) for k in a)


# -- baselines -----------------------------------------------------------------

UTTS = [s.split() for s in [
    "the remote control needs a docking station",
    "the battery is charged by the docking station",
    "older people prefer a wooden case",
    "we talked about the football game",
    "the case will be made of wood",
]]


def test_random_baseline():
    assert baseline_random(UTTS, 0, 1) == [[]] * 30
    assert baseline_random([["only", "one"]], 5, 3, runs=4) == [[0]] * 4
    runs = baseline_random(UTTS, 15, 42)
    assert len(runs) == 30 and runs == baseline_random(UTTS, 15, 42)
    # frozen golden run
    assert runs[0] == baseline_random(UTTS, 15, 42, runs=1)[0]
    for r in runs:
        assert sum(len(UTTS[i]) for i in r) <= 15


def test_random_stops_at_first_overflow():
    utts = [["a"] * 5, ["b"] * 1, ["c"] * 1]
    runs = baseline_random(utts, 5, 0, runs=30)
    for i, r in enumerate(runs):
        order = [0, 1, 2]
        random.Random(i).shuffle(order)
        # a prefix of the draw order: nothing after the first overflowing draw
        cut = next((k for k in range(3) if sum(len(utts[j]) for j in order[:k + 1]) > 5), 3)
        assert r == order[:cut]
    assert [1] in runs or [2] in runs


def test_oracle_baseline():
    ext = [["a", "b"], ["c"]]
    assert baseline_oracle(ext, 10, 1, runs=2) == baseline_random(ext, 10, 1, runs=2)
    with pytest.raises(OracleUnavailable, match="oracle unavailable"):
        baseline_oracle(None, 10)


def test_longest_greedy():
    utts = [["x"] * 10, ["y"] * 7, ["z"] * 2]
    assert sorted(baseline_longest_greedy(utts, 9)) == [1, 2]
    assert baseline_longest_greedy([["a", "b"]] * 3, 4) == [0, 1]
    assert sorted(baseline_longest_greedy(utts, 100)) == [0, 1, 2]


def test_textrank_similarity():
    assert textrank_similarity(["a", "b"], ["c", "d"]) == 0
    assert textrank_similarity(["a", "b"], ["a", "c"]) == pytest.approx(1 / (2 * math.log(2)))


def test_textrank_baseline():
    assert baseline_textrank([["apple", "pie", "tasty"], ["engine", "motor", "car"]], 3) == [0]
    same = [["remote", "control", "design"], ["remote", "control", "design"], ["other", "stuff", "here"]]
    assert baseline_textrank(same, 6) == [0, 1]


def test_textrank_four_utterances_hand_solved():
    utts = [["a", "b", "c"], ["a", "b", "d"], ["a", "e", "f"], ["g", "h", "i"]]
    s = 1 / (2 * math.log(3))
    g = {0: {1: 2 * s, 2: s}, 1: {0: 2 * s, 2: s}, 2: {0: s, 1: s}, 3: {}}
    pr = pagerank(g)
    expect = sorted(range(4), key=lambda i: (-round(pr[i], 12), i))
    got = baseline_textrank(utts, 100, stopwords=set())
    assert got == expect and expect[:2] == [0, 1]


def test_submodular_baseline():
    idx = baseline_submodular(UTTS, 15, 0.0, 0.0)
    assert sum(len(UTTS[i]) for i in idx) <= 15
    assert baseline_submodular(UTTS, 15, 0.5, 1.0, "pagerank") is not None


def test_corerank_vs_pagerank_on_star():
    # hub linked to 4 leaves, plus a dense triangle: the two scorings rank differently
    utts = [["hub", "l1"], ["hub", "l2"], ["hub", "l3"], ["hub", "l4"], ["x", "y", "z"], ["x", "y", "z"]]
    cr = word_scores(utts, "corerank", stopwords=set())
    pr = word_scores(utts, "pagerank", stopwords=set())
    assert cr["hub"] < cr["x"]
    assert pr["hub"] > pr["x"]


def test_unknown_score_source():
    with pytest.raises(ValueError):
        word_scores(UTTS, "hits")


# -- reports -------------------------------------------------------------------

def test_load_references(tmp_path):
    (tmp_path / "m1.ref0").write_text("first")
    (tmp_path / "m1.ref1").write_text("second")
    (tmp_path / "m2.txt").write_text("only")
    refs = load_references(tmp_path)
    assert refs == {"m1": ["first", "second"], "m2": ["only"]}
    with pytest.raises(MissingReferences, match="m3"):
        load_references(tmp_path, ["m1", "m3"])


def test_load_extractive(tmp_path):
    (tmp_path / "m1.extractive").write_text("a b\n\nc d\n")
    assert load_extractive(tmp_path, "m1") == ["a b", "c d"]
    assert load_extractive(tmp_path, "m2") is None


def test_report_macro_average(tmp_path):
    rep = EvalReport()
    rep.add("ours", "m1", {m: RougeScore(0.2, 0.4, 0.3) for m in rep.metrics})
    rep.add("ours", "m2", {m: RougeScore(0.4, 0.6, 0.5) for m in rep.metrics})
    mac = rep.macro("ours")["ROUGE-1"]
    assert (mac.recall, mac.precision, mac.f1) == pytest.approx((0.3, 0.5, 0.4))
    tsv = rep.to_tsv().splitlines()
    assert tsv[0].split("\t")[:4] == ["system", "ROUGE-1 R", "ROUGE-1 P", "ROUGE-1 F1"]
    assert tsv[1].split("\t")[:4] == ["ours", "30.00", "50.00", "40.00"]
    paths = rep.write(tmp_path / "out")
    assert all(p.exists() for p in paths)
    assert rep.to_dict()["per_meeting"]["ours"]["m2"]["ROUGE-2"]["F1"] == 0.5
