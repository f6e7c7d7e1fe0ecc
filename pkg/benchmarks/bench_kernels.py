"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row times one kernel call pattern on both backends and checks that the
results agree.
"""
import argparse
import random
import sys
import time

import numpy as np

from delsarte import _pykernels
from delsarte.params import RadialFunction, _scale, hamming_parameters

try:
    from delsarte import _ckernels
except ImportError:
    sys.exit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def clique_case(N, p, seed):
    rng = np.random.default_rng(seed)
    A = np.triu(rng.random((N, N)) < p, 1)
    A = A | A.T
    order = np.argsort(-A.sum(axis=1), kind="stable")
    A = A[np.ix_(order, order)]
    packed = np.packbits(A, axis=1, bitorder="little")
    adj = [int.from_bytes(r.tobytes(), "little") for r in packed]
    return lambda mod: mod.max_clique(adj, (1 << N) - 1, [], 0)[0].__len__()


def triple_case(n):
    params = hamming_parameters(n, 2)
    Pint, _, Qint, _ = params._scaled_tables()
    pairs = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    return lambda mod: [tuple(mod.triple_row(Qint[i], Qint[j], Pint)) for i, j in pairs]


def weighted_case(n, seed):
    params = hamming_parameters(n, 2)
    rng = random.Random(seed)
    f = RadialFunction(rng.randint(-5, 5) for _ in range(n + 1))
    fi, _ = _scale(f)
    rows, coeffs = [], []
    for y in f.support():
        for z in f.support():
            ints, _ = params.int_row("q", y, z)
            rows.append(ints)
            coeffs.append(fi[y] * fi[z])
    return lambda mod: tuple(mod.weighted_row_sum(coeffs, rows, n + 1))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    cases = [
        ("max_clique G(120, 0.5)", clique_case(120, 0.5, 1)),
        ("max_clique G(200, 0.6)", clique_case(200, 0.6, 2)),
        ("triple_row Krein rows, H(16,2)", triple_case(16)),
        ("weighted_row_sum ostar, H(24,2)", weighted_case(24, 3)),
    ]
    print(f"{'case':34s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, case in cases:
        tp, rp = best_of(lambda: case(_pykernels), args.repeat)
        tc, rc = best_of(lambda: case(_ckernels), args.repeat)
        if rp != rc:
            sys.exit(f"{name}: backends disagree")
        print(f"{name:34s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
