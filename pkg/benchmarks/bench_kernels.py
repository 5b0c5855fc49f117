"""Time the compiled and pure-Python graph kernels on the same random inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from mscsumm import kernels
from mscsumm.mscg import _csr


def word_graph(rng, n, density):
    edges = {}
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                w = rng.randint(1, 4)
                edges[(a, b)] = edges[(b, a)] = w
    return _csr(n, edges)[:3]


def path_graph(rng, n, out_deg):
    # roughly layered DAG-ish digraph with some back edges, like a compression graph
    edges = {}
    for a in range(n - 1):
        for _ in range(out_deg):
            b = min(n - 1, a + rng.randint(1, 6)) if rng.random() < 0.9 else rng.randrange(n)
            if a != b:
                edges[(a, b)] = rng.uniform(0.05, 3.0)
    return _csr(n, edges)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    rng = random.Random(0)
    cases = [
        ("core_numbers n=300", "core_numbers", (300, *word_graph(rng, 300, 0.05))),
        ("core_numbers n=1500", "core_numbers", (1500, *word_graph(rng, 1500, 0.01))),
        ("k_shortest_paths n=120 K=200", "k_shortest_paths", (120, *path_graph(rng, 120, 3), 0, 119, 200)),
        ("k_shortest_paths n=400 K=200", "k_shortest_paths", (400, *path_graph(rng, 400, 3), 0, 399, 200)),
    ]
    print(f"{'case':32} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label, fn, inputs in cases:
        times = {}
        results = {}
        for name, mod in backends.items():
            f = getattr(mod, fn)
            results[name] = f(*inputs)
            times[name] = min(timeit.repeat(lambda: f(*inputs), number=1, repeat=args.repeat))
        if len(results) == 2:
            assert results["python"] == results["cython"], f"backends disagree on {label}"
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "       -"
        print(f"{label:32} " + " ".join(f"{times[b] * 1000:8.2f}ms" for b in backends) + f"  {speed}")


if __name__ == "__main__":
    main()
