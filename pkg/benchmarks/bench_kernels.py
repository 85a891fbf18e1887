"""Bracket state-sum kernel: numba against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Diagrams are braid closures of increasing crossing number; both paths must
produce identical histograms.
"""

import argparse
import time

import numpy as np

from polyknot import _kernels
from polyknot.braid import BraidWord, braid_closure_diagram
from polyknot.invariants import _normalise_pd

WORDS = {
    "3_1": [1, 1, 1],
    "7_1": [1] * 7,
    "(1,-2)^4": [1, -2] * 4,
    "T(3,5)": [1, 2] * 5,
    "T(3,7)": [1, 2] * 7,
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"numba available: {_kernels.NUMBA_AVAILABLE}")
    print(f"{'diagram':9s} {'n':>3s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, ints in WORDS.items():
        d = braid_closure_diagram(BraidWord.from_ints(ints))
        pd, labels = _normalise_pd(d.pd)
        t_np, h_np = best_of(lambda: _kernels.bracket_histogram(pd, labels, use_numba=False), args.repeat)
        if _kernels.NUMBA_AVAILABLE:
            _kernels.bracket_histogram(pd, labels, use_numba=True)  # compile outside the timing
            t_nb, h_nb = best_of(lambda: _kernels.bracket_histogram(pd, labels, use_numba=True), args.repeat)
            assert np.array_equal(h_np, h_nb), name
            print(f"{name:9s} {len(pd):3d} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")
        else:
            print(f"{name:9s} {len(pd):3d} {t_np:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
