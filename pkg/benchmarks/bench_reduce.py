"""Compare the compiled and pure-Python word-reduction kernels.

    python3 benchmarks/bench_reduce.py --words 20000 --length 40
"""
from __future__ import annotations

import argparse
import random
import time

from skelcat.fileio import load_corpus
from skelcat.kernel import CompiledWordKernel, PythonWordKernel


def coded(c, impl):
    names = list(c.arrows)
    index = {n: i for i, n in enumerate(names)}
    table = [[index[c.table[f, g]] if (f, g) in c.table else -1 for g in names] for f in names]
    return impl(table, [c.is_identity(n) for n in names])


def chains(c, n_words, length, seed):
    """Random composable words, the worst case for reduction (every step composes)."""
    rng = random.Random(seed)
    index = {n: i for i, n in enumerate(c.arrows)}
    out_of = {x: [f for f in c.arrows if c.dom(f) == x] for x in c.objects}
    words = []
    for _ in range(n_words):
        x = rng.choice(c.objects)
        w = []
        for _ in range(length):
            f = rng.choice(out_of[x])
            w.append(index[f])
            x = c.cod(f)
        words.append(w)
    return words


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--categories", nargs="*", default=["I", "aut_groupoid", "codiscrete3", "iso_idem"])
    args = ap.parse_args(argv)

    corpus = load_corpus()
    kernels = [("python", PythonWordKernel)]
    if CompiledWordKernel is None:
        print("compiled kernel not built; timing the Python kernel only")
    else:
        kernels.append(("cython", CompiledWordKernel))

    print(f"{'category':<14}{'kernel':<8}{'seconds':>10}{'words/s':>14}{'speedup':>9}")
    for name in args.categories:
        c = corpus[name]
        words = chains(c, args.words, args.length, args.seed)
        results = {}
        baseline = None
        for label, impl in kernels:
            k = coded(c, impl)
            results[label] = k.reduce_many(words)
            secs = best_of(lambda: k.reduce_many(words), args.repeat)
            baseline = baseline or secs
            print(f"{name:<14}{label:<8}{secs:>10.4f}{args.words / secs:>14,.0f}{baseline / secs:>8.1f}x")
        if len({tuple(map(tuple, r)) for r in results.values()}) != 1:
            print(f"{name}: kernels disagree")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
