"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 3] [--seed 0]

Both kernels run on the same random sparse integer matrices and must return
identical echelon forms.  A Chevalley-Eilenberg Betti computation is timed in
two subprocesses, one forced onto the fallback with ``LIERINE_PURE_PYTHON=1``.
"""
import argparse
import os
import random
import subprocess
import sys
import time

from lierine import _elim_py, linalg

try:
    from lierine import _elim
except ImportError:
    _elim = None

BETTI_SNIPPET = """
import time
from lierine import linalg
from lierine.cohomology import betti_numbers
from lierine.samples import abelian, sl2
start = time.perf_counter()
b = betti_numbers(abelian({m})).betti
s = betti_numbers(sl2()).betti
print(linalg.BACKEND, time.perf_counter() - start, b, s)
"""


def random_matrix(rng: random.Random, n: int, density: float = 0.3, bound: int = 9) -> list[list[int]]:
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_echelon(sizes, repeat: int, seed: int) -> None:
    rng = random.Random(seed)
    print(f"{'n':>5} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in sizes:
        A = random_matrix(rng, n)
        ref = _elim_py.echelon([row[:] for row in A], n)
        t_py = best_of(lambda: _elim_py.echelon([row[:] for row in A], n), repeat)
        if _elim is None:
            print(f"{n:>5} {t_py:>12.4f} {'n/a':>12} {'n/a':>8}")
            continue
        assert _elim.echelon([row[:] for row in A], n) == ref, "kernels disagree"
        t_cy = best_of(lambda: _elim.echelon([row[:] for row in A], n), repeat)
        print(f"{n:>5} {t_py:>12.4f} {t_cy:>12.4f} {t_py / t_cy:>7.1f}x")


def bench_betti(m: int) -> None:
    code = BETTI_SNIPPET.format(m=m)
    for forced in (False, True):
        env = dict(os.environ)
        env.pop("LIERINE_PURE_PYTHON", None)
        if forced:
            env["LIERINE_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds, betti, sl2_betti = out.stdout.split(" ", 3)
        print(f"betti abelian({m}) + sl2 on {backend:>6}: {float(seconds):.3f}s  {betti} {sl2_betti.strip()}")


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--abelian-rank", type=int, default=6)
    args = parser.parse_args(argv)
    print(f"default backend: {linalg.BACKEND}")
    bench_echelon(args.sizes, args.repeat, args.seed)
    bench_betti(args.abelian_rank)


if __name__ == "__main__":
    main()
