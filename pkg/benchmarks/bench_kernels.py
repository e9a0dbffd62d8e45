"""Time the numba kernels against their numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Both variants are called directly, so the result does not depend on
SPINKRON_DISABLE_NUMBA. Numba compile time is paid in a warm-up call and
reported separately.
"""

import argparse
import time

import numpy as np

from spinkron import kernels


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    cases = []
    for n in (4, 8, 16):
        h = _hermitian(rng, n)
        cases.append((f"jacobi n={n}", kernels.jacobi_numba, kernels.jacobi_numpy, (h, 1e-13, 50)))
        cases.append((f"faddeev-leverrier n={n}", kernels.faddeev_leverrier_numba, kernels.faddeev_leverrier_numpy, (h,)))
    for m, n in ((2, 2), (4, 4), (8, 2)):
        a, b = _hermitian(rng, m), _hermitian(rng, n)
        cases.append((f"kron {m}x{n}", kernels.kron_numba, kernels.kron_numpy, (a, b)))

    print(f"{'kernel':<26}{'compile s':>11}{'numba us':>12}{'numpy us':>12}{'speedup':>10}")
    for name, fast, slow, fargs in cases:
        t0 = time.perf_counter()
        fast(*fargs)
        compile_s = time.perf_counter() - t0
        t_fast = _best(fast, fargs, args.repeat)
        t_slow = _best(slow, fargs, args.repeat)
        print(f"{name:<26}{compile_s:>11.3f}{t_fast * 1e6:>12.1f}{t_slow * 1e6:>12.1f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
