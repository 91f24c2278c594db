"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from evk import _fallback
from evk import hypergraph as hg
from evk.regression import EX1_INCIDENCE, ex1_tensor
from evk.spectral import _terms

try:
    from evk import _kernels
except ImportError:
    _kernels = None


def enumeration_cases():
    # (label, rows, rhs, m, n)
    G = hg.wheel(8)
    B = hg.incidence(G).tolist()
    yield "wheel(8) over Z_3^9", B, [0] * len(B), 3, 9
    yield "ex1 over Z_12^6", EX1_INCIDENCE, [0, 0, 0], 12, 6
    G = hg.complete(7, 4)
    B = hg.incidence(G).tolist()
    yield "K_7^[4] over Z_4^7", B, [0] * len(B), 4, 7


def apply_cases():
    rng = np.random.default_rng(0)
    for label, A in [("ex1 (m=12)", ex1_tensor()),
                     ("K_12^[3]", hg.adjacency_tensor(hg.complete(12, 3))),
                     ("K_9^[5]", hg.adjacency_tensor(hg.complete(9, 5)))]:
        t = _terms(A)
        x = rng.uniform(0.1, 1.0, A.dim) * np.exp(1j * rng.uniform(0, 6, A.dim))
        yield label, (t.idx, t.entry, t.skip, t.vertex, t.coef, x, A.dim)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")
        return

    print(f"{'case':<28}{'cython (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for label, rows, b, m, n in enumeration_cases():
        tc = best(lambda: _kernels.enumerate_solutions(rows, b, m, n), args.repeat)
        tf = best(lambda: _fallback.enumerate_solutions(rows, b, m, n), args.repeat)
        print(f"{'enum ' + label:<28}{tc:>12.4f}{tf:>12.4f}{tf / tc:>9.1f}x")
    for label, a in apply_cases():
        tc = best(lambda: _kernels.apply_terms(*a), args.repeat * 20)
        tf = best(lambda: _fallback.apply_terms(*a), args.repeat * 20)
        print(f"{'apply ' + label:<28}{tc:>12.6f}{tf:>12.6f}{tf / tc:>9.1f}x")


if __name__ == "__main__":
    main()
