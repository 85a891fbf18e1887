"""Hot loops with a numba path and a pure-numpy fallback.

Set ``POLYKNOT_NO_NUMBA=1`` to force the numpy implementations (numba is also
skipped automatically when it cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("POLYKNOT_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - depends on environment
    NUMBA_AVAILABLE = False


def _bracket_histogram_numpy(pd: np.ndarray, n_labels: int, chunk: int = 1 << 13) -> np.ndarray:
    """hist[a, loops]: number of states with ``a`` A-smoothings and ``loops`` circles."""
    n = pd.shape[0]
    hist = np.zeros((n + 1, n_labels + 1), dtype=np.int64)
    total = 1 << n
    ar = np.arange(n_labels)
    for start in range(0, total, chunk):
        states = np.arange(start, min(start + chunk, total), dtype=np.int64)
        S = states.size
        bits = (states[:, None] >> np.arange(n)[None, :]) & 1  # 1 = A-smoothing
        # per crossing the two arcs joined by the chosen smoothing
        e1x = np.where(bits == 1, pd[:, 0], pd[:, 0])
        e1y = np.where(bits == 1, pd[:, 1], pd[:, 3])
        e2x = np.where(bits == 1, pd[:, 2], pd[:, 1])
        e2y = np.where(bits == 1, pd[:, 3], pd[:, 2])
        xs = np.concatenate([e1x, e2x], axis=1)
        ys = np.concatenate([e1y, e2y], axis=1)
        lab = np.broadcast_to(ar, (S, n_labels)).copy()
        rows = np.arange(S)[:, None]
        while True:
            lx = lab[rows, xs]
            ly = lab[rows, ys]
            m = np.minimum(lx, ly)
            new = lab.copy()
            np.minimum.at(new, (np.broadcast_to(rows, xs.shape), xs), m)
            np.minimum.at(new, (np.broadcast_to(rows, ys.shape), ys), m)
            # pointer jumping keeps the iteration count logarithmic-ish
            new = np.take_along_axis(new, new, axis=1)
            if np.array_equal(new, lab):
                break
            lab = new
        loops = (lab == ar[None, :]).sum(axis=1)
        a = bits.sum(axis=1)
        np.add.at(hist, (a, loops), 1)
    return hist


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def _bracket_histogram_numba(pd, n_labels):
        n = pd.shape[0]
        hist = np.zeros((n + 1, n_labels + 1), dtype=np.int64)
        parent = np.empty(n_labels, dtype=np.int64)
        for state in range(1 << n):
            for i in range(n_labels):
                parent[i] = i
            comps = n_labels
            a = 0
            for k in range(n):
                if (state >> k) & 1:
                    a += 1
                    p1, q1, p2, q2 = pd[k, 0], pd[k, 1], pd[k, 2], pd[k, 3]
                else:
                    p1, q1, p2, q2 = pd[k, 0], pd[k, 3], pd[k, 1], pd[k, 2]
                r1 = _find(parent, p1)
                r2 = _find(parent, q1)
                if r1 != r2:
                    parent[r1] = r2
                    comps -= 1
                r1 = _find(parent, p2)
                r2 = _find(parent, q2)
                if r1 != r2:
                    parent[r1] = r2
                    comps -= 1
            hist[a, comps] += 1
        return hist


def bracket_histogram(pd: np.ndarray, n_labels: int, use_numba: bool | None = None) -> np.ndarray:
    """State-sum histogram for the Kauffman bracket.

    ``pd`` is an (n, 4) int array of arc labels in 0..n_labels-1.  Every one of
    the 2**n states is visited; ``hist.sum() == 2**n`` always holds.
    """
    pd = np.ascontiguousarray(pd, dtype=np.int64)
    if use_numba is None:
        use_numba = NUMBA_AVAILABLE
    if use_numba and NUMBA_AVAILABLE:
        return _bracket_histogram_numba(pd, n_labels)
    return _bracket_histogram_numpy(pd, n_labels)
