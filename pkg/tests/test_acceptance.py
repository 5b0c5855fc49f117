"""Acceptance criteria 1-7.  Each test prints one PASS/FAIL line (INFO for criterion 7).

Run alone with:  pytest tests/test_acceptance.py -v
Tolerances: exact match for the oracle suites, 1e-9 relative for formula goldens.
"""
import itertools
import math
import os
import random
import time
from pathlib import Path

import pytest

from mscsumm.graphcore import DEFAULT_WINDOW, WordGraph, corerank, idf, tw_idf, weighted_core
from mscsumm.mscg import (
    DEFAULT_K,
    CompressParams,
    PathCandidate,
    build_mscg,
    coverage,
    diversity,
    edge_weight,
    attraction,
    fluency,
    k_shortest,
    local_weight,
    score_path,
)
from mscsumm.pipeline import DEMO_DIR, PipelineConfig, benchmark, load_resources, summarize
from mscsumm.resources import EmbeddingStore, parse_arpa
from mscsumm.evaluation import baseline_random, rouge_n, rouge_su4
from mscsumm.selection import Objective, brute_force_select, f_value, greedy_select, verify_submodularity
from mscsumm.text import stem

from conftest import make_utt
from test_graphcore import brute_force_cores, graph_from, random_graph
from test_mscg import all_simple_paths, random_digraph
from test_resources import TOY_ARPA
from test_selection import random_instance

REL = 1e-9
pytestmark = pytest.mark.acceptance


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def close(a, b):
    return math.isclose(a, b, rel_tol=REL, abs_tol=0.0 if b else REL)


def ident(w):
    return w


# 1 -----------------------------------------------------------------------------

def test_criterion_1_oracle_equivalence(capsys):
    start = time.perf_counter()
    failures = []

    graphs = 0
    for n in range(1, 5):
        for weights in itertools.product(range(4), repeat=n * (n - 1) // 2):
            g = graph_from(n, weights)
            graphs += 1
            if weighted_core(g) != brute_force_cores(g):
                failures.append(("core", n, weights))
    for weights in itertools.product(range(3), repeat=10):
        g = graph_from(5, weights)
        graphs += 1
        if weighted_core(g) != brute_force_cores(g):
            failures.append(("core", 5, weights))
    rng = random.Random(1)
    for _ in range(4000):
        g = random_graph(rng, rng.randint(6, 8))
        graphs += 1
        if weighted_core(g) != brute_force_cores(g):
            failures.append(("core", g.edges()))

    path_cases = 0
    rng = random.Random(2)
    for _ in range(3000):
        n = rng.randint(2, 7)
        w = random_digraph(rng, n)
        k = rng.choice([1, 3, 10, 200])
        path_cases += 1
        got = [(c, tuple(p)) for c, p in k_shortest(n, w, 0, 1, k)]
        if got != all_simple_paths(n, w, 0, 1)[:k]:
            failures.append(("paths", w, k))

    bound = 1 - 1 / math.sqrt(math.e)
    rng = random.Random(3)
    sel_cases = 0
    for trial in range(300):
        n = rng.randint(1, 12) if trial % 3 == 0 else rng.randint(1, 9)
        sents, scores, clusters = random_instance(rng, n)
        obj = Objective(rng.choice([0, 0.5, 1, 3]), scores, clusters, normalize=ident)
        budget = rng.randint(1, 20)
        sel = greedy_select(sents, obj, budget, r=1)
        opt, _ = brute_force_select(sents, obj, budget)
        sel_cases += 1
        if sel.cost > budget or sel.value < bound * opt - 1e-12:
            failures.append(("greedy", sents, budget))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    report(capsys, 1, ok, f"{graphs} core graphs, {path_cases} path graphs, {sel_cases} selection "
                          f"instances; {len(failures)} mismatches; {elapsed:.1f}s (< 30s)")
    assert ok, failures[:3]


# 2 -----------------------------------------------------------------------------

def test_criterion_2_submodularity(capsys):
    violations = 0
    checked = 0
    for lam in (0.0, 0.5, 1.0):
        rng = random.Random(int(lam * 100) + 17)
        for _ in range(20):
            sents, scores, clusters = random_instance(rng, 5)
            rep = verify_submodularity(sents, Objective(lam, scores, clusters, normalize=ident))
            checked += rep.checked
            violations += not rep.ok
    report(capsys, 2, violations == 0, f"lambda in (0, 0.5, 1), 60 universes of 5 sentences, "
                                       f"{checked} diminishing-return checks, {violations} violations")
    assert violations == 0


# 3 -----------------------------------------------------------------------------

def formula_goldens():
    out = {}
    out["idf(8,2)*4"] = (4 * idf(8, 2), 4 * (1 + math.log(4)))
    out["tw_idf all communities"] = (tw_idf([{"t": 4}, {"t": 4}])[0]["t"], 4.0)

    g = build_mscg([make_utt(0, "alpha/NN beta/NN"), make_utt(1, "alpha/NN beta/NN")])
    a, b = g.paths[0][1:3]
    out["w' two 'a b' utterances"] = (local_weight(g, a, b), 2.0)
    g = build_mscg([make_utt(0, "alpha/NN beta/NN")])
    a, b = g.paths[0][1:3]
    emb = EmbeddingStore(2, {"alpha": [0.0, 0.0], "beta": [2.0, 0.0]})
    out["w'' d=2"] = (attraction(g, a, b, emb), 0.25)
    out["w''' = w'/w''"] = (edge_weight(g, a, b, emb), 8.0)
    same = EmbeddingStore(2, {"alpha": [1.0, 1.0], "beta": [1.0, 1.0]})
    out["w''' clamped d=eps"] = (edge_weight(g, a, b, same), 2.0 * 1e-8)

    lm = parse_arpa(TOY_ARPA.splitlines())
    out["F toy LM 3-word path"] = (fluency(["a", "b", "a"], lm), (-0.3 - 0.3 - 1.15 - 0.6) / 4)
    out["C two content words"] = (coverage([("price", "NN"), ("high", "JJ")],
                                           {stem("price"): 2.0, stem("high"): 4.0}), 3.0)
    words = [f"w{i}" for i in range(10)]
    out["D one cluster |P|=10"] = (diversity(words, {w: 0 for w in words}), 0.1)
    labels = [f"w{i}" for i in range(11)]
    out["D 6 clusters |P|=11"] = (diversity(labels, {w: i % 6 for i, w in enumerate(labels)}), 6 / 11)

    g = build_mscg([make_utt(0, "a/NN b/VB a/DT")], twidf={"a": 2.0, "b": 4.0})
    p = score_path(PathCandidate(tuple(g.paths[0]), 3.0), g, lm, {"a": 0, "b": 1})
    F = (-0.3 - 0.3 - 1.15 - 0.6) / 4
    out["score W/(|P| F' C D)"] = (p.score, 3.0 / (3 * (1 / (1 - F)) * 3.0 * (2 / 3)))

    obj = Objective(0.7, {"a": 1, "b": 2, "c": 3}, {"a": 0, "b": 1, "c": 2}, normalize=ident)
    out["f_value lambda=0.7, 3 clusters"] = (f_value([["a", "b"], ["c", "a"]], obj), 7 + 2.1)
    out["f_value plan plan"] = (f_value([["plan", "plan"]], Objective(0, {"plan": 1}, normalize=ident)), 2.0)
    return out


def test_criterion_3_formula_goldens(capsys):
    bad = {k: v for k, v in formula_goldens().items() if not close(*v)}
    report(capsys, 3, not bad, f"{len(formula_goldens())} goldens at rel tol {REL}; mismatches: {sorted(bad) or 'none'}")
    assert not bad


# 4 -----------------------------------------------------------------------------

def test_criterion_4_reference_anchors(capsys):
    k4 = [(x, y, 1) for x, y in itertools.combinations("abcd", 2)]
    g = WordGraph.from_edges(k4 + [("s", "a", 1), ("s", "x", 1), ("s", "y", 1), ("x", "y", 1),
                                   ("t", "x", 1), ("t", "y", 1), ("t", "l", 1)])
    cores = weighted_core(g)
    cr = corerank(g, cores)
    ami, icsi = PipelineConfig.preset("ami"), PipelineConfig.preset("icsi")
    checks = {
        "two nodes with equal core 2": cores["s"] == cores["t"] == 2,
        "their CoreRank 7 vs 5": (cr["s"], cr["t"]) == (7, 5),
        "AMI tuple": (ami.n, ami.z, ami.lam, ami.r) == (50, 8, 0.7, 0.5),
        "ICSI tuple": (icsi.n, icsi.z, icsi.lam, icsi.r) == (40, 14, 0.0, 0.0),
        "K=200": DEFAULT_K == 200 and CompressParams().K == 200 and ami.K == 200,
        "W=6": DEFAULT_WINDOW == 6 and ami.window == 6,
        "dims 30/60": (ami.lsa_dims, icsi.lsa_dims) == (30, 60),
        "k_final=60": ami.k_final == icsi.k_final == 60,
        "budgets 350/450": (ami.budget, icsi.budget) == (350, 450),
    }
    bad = [k for k, v in checks.items() if not v]
    report(capsys, 4, not bad, f"{len(checks)} anchors; failing: {bad or 'none'}")
    assert not bad


# 5 -----------------------------------------------------------------------------

def test_criterion_5_rouge(capsys):
    cases = {
        "identity R1": rouge_n("the remote control", ["the remote control"], 1).f1 == 1.0,
        "identity R2": rouge_n("the remote control", ["the remote control"], 2).f1 == 1.0,
        "identity SU4": rouge_su4("the remote control", ["the remote control"]).f1 == 1.0,
        "disjoint": rouge_n("a b", ["c d"], 1).f1 == 0.0 and rouge_su4("a b", ["c d"]).f1 == 0.0,
        "'a b c' vs 'a b d' R1 = 2/3": all(close(x, 2 / 3) for x in
                                          vars(rouge_n("a b c", ["a b d"], 1, stem=False)).values()),
        "'a b c' vs 'a c b' SU4 = 5/6": all(close(x, 5 / 6) for x in
                                           vars(rouge_su4("a b c", ["a c b"], stem=False)).values()),
        "'a b c' vs 'a b d' R2 = 1/2": close(rouge_n("a b c", ["a b d"], 2, stem=False).f1, 0.5),
    }
    bad = [k for k, v in cases.items() if not v]
    report(capsys, 5, not bad, f"{len(cases)} cases; failing: {bad or 'none'}")
    assert not bad


# 6 -----------------------------------------------------------------------------

def test_criterion_6_end_to_end(capsys):
    start = time.perf_counter()
    config = PipelineConfig.preset("demo")
    res = load_resources(config)
    result = summarize(config, DEMO_DIR / "meeting.txt", res)
    lines = (DEMO_DIR / "meeting.txt").read_text().splitlines()
    inputs = {" ".join(l.split("\t", 1)[-1].split()) for l in lines}
    n_utts = len(lines)
    within = result.selection is not None and result.selection.cost <= config.budget
    long_enough = bool(result.sentences) and all(len(s.split()) >= config.z for s in result.sentences)
    has_verb = bool(result.tagged) and all(any(p.startswith("VB") for _, p in s) for s in result.tagged)
    novel = sum(s not in inputs and not any(s in x for x in inputs) for s in result.sentences)

    ref = (DEMO_DIR / "meeting.ref0").read_text()
    ours = rouge_n(result.text, [ref], 1).f1
    from mscsumm.pipeline import clean, read_transcript

    t = clean(read_transcript(DEMO_DIR / "meeting.txt", config), res)
    utts = [u.words for u in t.utterances]
    runs = baseline_random(utts, config.budget, config.seed, 30)
    rand = sum(rouge_n("\n".join(" ".join(utts[i]) for i in r), [ref], 1).f1 for r in runs) / len(runs)
    elapsed = time.perf_counter() - start
    ok = n_utts == 40 and within and long_enough and has_verb and novel >= 1 and ours > rand and elapsed < 60
    report(capsys, 6, ok, f"{n_utts} utterances; cost {result.selection.cost}/{config.budget}; "
                          f"min words {min(len(s.split()) for s in result.sentences)} (z={config.z}); "
                          f"verbs {has_verb}; non-verbatim {novel}/{len(result.sentences)}; "
                          f"ROUGE-1 F1 ours {ours:.4f} vs random mean {rand:.4f}; {elapsed:.1f}s (< 60s)")
    assert ok


# 7 -----------------------------------------------------------------------------

def test_criterion_7_published_scores_informational(capsys):
    corpus = os.environ.get("MSCG_EVAL_CORPUS")
    refs = os.environ.get("MSCG_EVAL_REFS")
    if not corpus or not refs:
        with capsys.disabled():
            print("\nACCEPTANCE 7: INFO - needs the AMI/ICSI corpora, GoogleNews vectors and the CMUSphinx LM; "
                  "set MSCG_EVAL_CORPUS, MSCG_EVAL_REFS (and MSCG_RESOURCES) to run it")
        pytest.skip("published-score comparison needs user-supplied corpora")
    preset = os.environ.get("MSCG_EVAL_PRESET", "ami")
    config = PipelineConfig.preset(preset)
    rep = benchmark(config, Path(corpus), Path(refs), ["ours", "random", "longest"], jobs=os.cpu_count() or 1)
    f1 = {s: rep.macro(s)["ROUGE-1"].f1 for s in rep.systems}
    ok = f1["ours"] > f1["random"] and f1["ours"] > f1["longest"]
    published = {"ami": 37.25}.get(preset)
    info = f"; published {published}, delta {100 * f1['ours'] - published:+.2f} (informational)" if published else ""
    report(capsys, 7, ok, f"ROUGE-1 F1 x100 ours {100 * f1['ours']:.2f}, random {100 * f1['random']:.2f}, "
                          f"longest {100 * f1['longest']:.2f}{info}")
    assert ok
