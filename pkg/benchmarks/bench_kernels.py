"""Compare the compiled kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once to trigger compilation before timing.  Results
are checked for agreement, so a speedup is never reported for wrong output.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from diskspace import _kernels as K


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _cases(rng):
    z = 0.99 * np.sqrt(rng.uniform(size=200_000)) * np.exp(2j * np.pi * rng.uniform(size=200_000))
    coeffs = rng.normal(size=201) + 1j * rng.normal(size=201)
    weights = 2.0 ** (-0.5 * np.arange(14))
    n = 1500
    P = 0.999 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    F = P ** 3 + 0.5 * P
    ds = 1.0 - np.abs(P)
    group = np.minimum((-np.log2(ds)).astype(np.int64), 13)
    args = (P, F, np.sqrt(ds), np.sqrt(ds), group, 14, K.OMEGA_IDENTITY, 1.0,
            np.zeros(1), np.zeros(1))
    return [
        ("horner deg 200, 2e5 pts",
         lambda: K.horner_numba(coeffs, z), lambda: K.horner_numpy(coeffs, z)),
        ("gap series 14 terms, 2e5 pts",
         lambda: K.gap_numba(weights, z), lambda: K.gap_numpy(weights, z)),
        ("pair quotient, 1500 pts",
         lambda: K.pair_quotient_profile_numba(*args), lambda: K.pair_quotient_profile_numpy(*args)),
    ]


def _agree(a, b):
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return all(np.allclose(x, y, rtol=1e-10, atol=1e-12) for x, y in zip(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    print(f"{'kernel':34s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}  agree")
    for name, fast, slow in _cases(np.random.default_rng(args.seed)):
        ok = _agree(fast(), slow())          # warm-up doubles as correctness check
        tn, tp = _best(fast, args.repeat), _best(slow, args.repeat)
        print(f"{name:34s} {1e3 * tn:11.2f} {1e3 * tp:11.2f} {tp / tn:8.1f}  {ok}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
