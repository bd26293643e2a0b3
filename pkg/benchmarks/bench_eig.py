"""Time the eigenvalue oracle: compiled kernels vs pure Python vs LAPACK.

Usage::

    python3 benchmarks/bench_eig.py [--dims 50 100 200 500] [--repeat 3]

The LAPACK column (``numpy.linalg.eigvals``) is a reference point only; the
package itself never calls it.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cauchy_radius import oracle


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[50, 100, 200, 500])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max", type=int, default=200,
                    help="skip the pure-Python backend above this dimension")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    backends = sorted(oracle._BACKENDS)
    print(f"default backend: {oracle.BACKEND}")
    print(f"{'dim':>5} " + " ".join(f"{b:>10}" for b in backends) + f" {'lapack':>10} {'max rel err':>12}")
    for d in args.dims:
        a = rng.uniform(-10, 10, (d, d)) + 1j * rng.uniform(-10, 10, (d, d))
        ref = np.linalg.eigvals(a)
        cells, err = [], 0.0
        for b in backends:
            if b == "python" and d > args.python_max:
                cells.append(f"{'-':>10}")
                continue
            cells.append(f"{best_of(lambda: oracle.eigenvalues(a, backend=b), args.repeat):10.4f}")
            w = oracle.eigenvalues(a, backend=b)
            # distance from each computed value to the nearest reference eigenvalue
            dist = np.min(np.abs(w[:, None] - ref[None, :]), axis=1)
            err = max(err, float(dist.max() / np.abs(ref).max()))
        lapack = best_of(lambda: np.linalg.eigvals(a), args.repeat)
        print(f"{d:>5} " + " ".join(cells) + f" {lapack:10.4f} {err:12.2e}")


if __name__ == "__main__":
    main()
