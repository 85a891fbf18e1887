"""Exact knot invariants from PD codes: Kauffman bracket, Jones, Alexander.

All arithmetic is over the integers.  PD tuples follow the convention of
``diagram``: incoming under-arc first, then counterclockwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .diagram import KnotDiagram
from .errors import (InconsistentPD, NoMatch, NonIntegerExponents, SingularLabeling,
                     TooManyCrossings)

MAX_CROSSINGS = 16


class LaurentPoly:
    """Integer Laurent polynomial stored as {exponent: coefficient}."""

    __slots__ = ("terms", "var")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "t"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self.var = var

    @classmethod
    def one(cls, var: str = "t") -> "LaurentPoly":
        return cls({0: 1}, var)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self.terms.items()) + list(other.terms.items()), self.var)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.var)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        out = LaurentPoly.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, self.var)

    def invert_variable(self) -> "LaurentPoly":
        """p(1/x)."""
        return LaurentPoly({-e: c for e, c in self.terms.items()}, self.var)

    def evaluate(self, x: int) -> int:
        from fractions import Fraction
        val = sum(Fraction(c) * Fraction(x) ** e for e, c in self.terms.items())
        if val.denominator != 1:
            raise ValueError("non-integer value")
        return int(val)

    @property
    def min_exp(self) -> int:
        return min(self.terms, default=0)

    @property
    def max_exp(self) -> int:
        return max(self.terms, default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms.items()]

    @classmethod
    def from_pairs(cls, pairs, var: str = "t") -> "LaurentPoly":
        return cls([(e, c) for e, c in pairs], var)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            out.append(("-" if c < 0 else "+", body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sgn, body in out[1:]:
            text += f" {sgn} {body}"
        return text


# ---------------------------------------------------------------------------
# PD helpers


def _normalise_pd(pd) -> tuple[np.ndarray, int]:
    arr = np.asarray([list(x) for x in pd], dtype=np.int64).reshape(-1, 4)
    labels = sorted(set(arr.ravel().tolist()))
    counts = {lab: 0 for lab in labels}
    for lab in arr.ravel().tolist():
        counts[lab] += 1
    bad = [lab for lab, c in counts.items() if c != 2]
    if bad:
        raise InconsistentPD(f"arc labels must appear exactly twice; offending: {bad[:5]}")
    index = {lab: i for i, lab in enumerate(labels)}
    return np.vectorize(index.get, otypes=[np.int64])(arr) if arr.size else arr, len(labels)


def pd_signs(pd) -> list[int]:
    """Crossing signs recovered by walking the knot along its under-strands."""
    pd = [tuple(x) for x in pd]
    n = len(pd)
    if n == 0:
        return []
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(pd):
        for slot, lab in enumerate(x):
            occ.setdefault(lab, []).append((k, slot))
    signs: list[int | None] = [None] * n
    k, slot = 0, 0  # enter crossing 0 along its under-strand
    for _ in range(2 * n + 1):
        exit_slot = {0: 2, 1: 3, 3: 1}.get(slot)
        if exit_slot is None:
            raise InconsistentPD(f"arc enters crossing {k} at its outgoing under slot")
        if slot in (1, 3):
            s = 1 if slot == 3 else -1
            if signs[k] is not None and signs[k] != s:
                raise InconsistentPD(f"crossing {k} traversed inconsistently")
            signs[k] = s
        lab = pd[k][exit_slot]
        ends = occ[lab]
        nxt = [e for e in ends if e != (k, exit_slot)]
        if not nxt:  # arc joins a crossing to itself in the same slot pair
            nxt = [ends[0]]
        k, slot = nxt[0]
        if k == 0 and slot == 0 and all(x is not None for x in signs):
            break
    if any(x is None for x in signs):
        raise InconsistentPD("PD code does not describe a single closed component")
    return [int(x) for x in signs]


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones


def _delta_powers(k: int) -> list[LaurentPoly]:
    d = LaurentPoly({2: -1, -2: -1}, "A")
    out = [LaurentPoly.one("A")]
    for _ in range(k):
        out.append(out[-1] * d)
    return out


def bracket_state_histogram(pd, use_numba: bool | None = None) -> np.ndarray:
    pd_arr, n_labels = _normalise_pd(pd)
    n = pd_arr.shape[0]
    if n > MAX_CROSSINGS:
        raise TooManyCrossings(f"{n} crossings exceeds the limit of {MAX_CROSSINGS}")
    return _kernels.bracket_histogram(pd_arr, n_labels, use_numba)


def kauffman_bracket(pd, use_numba: bool | None = None) -> LaurentPoly:
    """<D> = sum over states A^(a-b) d^(loops-1), d = -A^2 - A^-2."""
    pd = [tuple(x) for x in pd]
    if not pd:
        return LaurentPoly.one("A")
    hist = bracket_state_histogram(pd, use_numba)
    n = len(pd)
    powers = _delta_powers(hist.shape[1])
    out = LaurentPoly({}, "A")
    for a, loops in zip(*np.nonzero(hist)):
        count = int(hist[a, loops])
        out = out + (powers[int(loops) - 1].shift(int(a) - (n - int(a)))) * count
    return out


def _diagram_pd_and_writhe(d) -> tuple[list, int]:
    if isinstance(d, KnotDiagram):
        return [tuple(x) for x in d.pd], d.writhe
    pd = [tuple(x) for x in d]
    return pd, sum(pd_signs(pd))


def jones(d, use_numba: bool | None = None) -> LaurentPoly:
    """Jones polynomial V(t) = (-A^3)^(-w) <D> with A = t^(-1/4)."""
    pd, w = _diagram_pd_and_writhe(d)
    br = kauffman_bracket(pd, use_numba)
    norm = LaurentPoly({-3 * w: (-1) ** (w % 2)}, "A")
    va = br * norm
    out = {}
    for e, c in va.terms.items():
        if e % 4:
            raise NonIntegerExponents(f"A-exponent {e} is not a multiple of 4")
        out[-e // 4] = c
    return LaurentPoly(out, "t")


# ---------------------------------------------------------------------------
# Alexander polynomial: integer polynomials as ascending coefficient lists


def _ip_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_add(a, b):
    n = max(len(a), len(b))
    return _ip_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _ip_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ip_trim(out)


def _ip_neg(a):
    return [-x for x in a]


def _ip_exact_div(a, b):
    """a / b over Z[t]; the division must be exact."""
    a = list(a)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(len(a) - len(b) + 1, 0)
    while a and len(a) >= len(b):
        c, r = divmod(a[-1], b[-1])
        if r:
            raise SingularLabeling("inexact division in fraction-free elimination")
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        _ip_trim(a)
    if a:
        raise SingularLabeling("inexact division in fraction-free elimination")
    return _ip_trim(q)


def bareiss_det(M: list[list[list[int]]]) -> list[int]:
    """Fraction-free determinant of a square matrix over Z[t]."""
    n = len(M)
    if n == 0:
        return [1]
    A = [[list(x) for x in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return []
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ip_add(_ip_mul(A[i][j], A[k][k]), _ip_neg(_ip_mul(A[i][k], A[k][j])))
                A[i][j] = _ip_exact_div(num, prev)
            A[i][k] = []
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else _ip_neg(det)


def alexander_matrix(pd, signs: Sequence[int]) -> list[list[list[int]]]:
    pd = [tuple(x) for x in pd]
    n = len(pd)
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in pd:
        for lab in x:
            find(lab)
        ra, rb = find(x[1]), find(x[3])
        if ra != rb:
            parent[ra] = rb
    roots = sorted({find(lab) for x in pd for lab in x})
    if len(roots) != n:
        raise SingularLabeling(f"{len(roots)} Wirtinger arcs for {n} crossings")
    col = {r: i for i, r in enumerate(roots)}
    M = [[[] for _ in range(n)] for _ in range(n)]
    for k, (x, s) in enumerate(zip(pd, signs)):
        j, i, o = col[find(x[1])], col[find(x[0])], col[find(x[2])]
        entries = ((j, [1, -1]), (i, [0, 1]), (o, [-1])) if s > 0 else \
                  ((j, [1, -1]), (i, [-1]), (o, [0, 1]))
        for c, val in entries:
            M[k][c] = _ip_add(M[k][c], val)
    return M


def normalise_alexander(coeffs: list[int]) -> LaurentPoly:
    if not coeffs:
        raise SingularLabeling("Alexander determinant vanished")
    lo = next(i for i, c in enumerate(coeffs) if c)
    hi = len(coeffs) - 1
    if (lo + hi) % 2:
        raise SingularLabeling("Alexander polynomial has odd span")
    mid = (lo + hi) // 2
    p = LaurentPoly({i - mid: c for i, c in enumerate(coeffs) if c}, "t")
    if p.terms[p.max_exp] < 0:
        p = -p
    return p


def alexander(d) -> LaurentPoly:
    pd, _ = _diagram_pd_and_writhe(d)
    if not pd:
        return LaurentPoly.one("t")
    signs = list(d.signs[k] for k in sorted(d.signs)) if isinstance(d, KnotDiagram) else pd_signs(pd)
    M = alexander_matrix(pd, signs)
    minor = [row[:-1] for row in M[:-1]]
    return normalise_alexander(bareiss_det(minor))


# ---------------------------------------------------------------------------
# profiles and identification


@dataclass(frozen=True)
class InvariantProfile:
    alexander: LaurentPoly
    jones: LaurentPoly

    @property
    def determinant(self) -> int:
        return abs(self.alexander.evaluate(-1))

    def mirror(self) -> "InvariantProfile":
        return InvariantProfile(self.alexander, self.jones.invert_variable())

    def equals_up_to_mirror(self, other: "InvariantProfile") -> bool:
        return self.alexander == other.alexander and (
            self.jones == other.jones or self.jones == other.jones.invert_variable())

    def is_trivial(self) -> bool:
        return self.alexander == LaurentPoly.one() and self.jones == LaurentPoly.one()

    def to_json(self) -> dict:
        return {"alexander": self.alexander.to_pairs(), "jones": self.jones.to_pairs(),
                "determinant": self.determinant}


def profile(d, use_numba: bool | None = None) -> InvariantProfile:
    return InvariantProfile(alexander(d), jones(d, use_numba))


@dataclass(frozen=True)
class TableEntry:
    name: str
    crossings: int
    alexander: LaurentPoly
    jones: LaurentPoly


@lru_cache(maxsize=1)
def reference_table() -> tuple[TableEntry, ...]:
    text = resources.files("polyknot").joinpath("data/knot_table.jsonl").read_text()
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        if "name" not in row:
            continue
        out.append(TableEntry(row["name"], row["crossings"],
                              LaurentPoly.from_pairs(row["alexander"]),
                              LaurentPoly.from_pairs(row["jones"])))
    return tuple(out)


def identify(p: InvariantProfile, strict: bool = False,
             table: Sequence[TableEntry] | None = None) -> list[tuple[str, str]]:
    """Table knots matching ``p``.

    Each match carries a chirality flag: "same" when the Jones polynomial matches
    as stored, "mirror" when it matches after t -> 1/t, "either" when both hold
    (amphichiral entries).  With ``strict`` only "same"/"either" count.
    """
    table = reference_table() if table is None else table
    found = []
    for e in table:
        if e.alexander != p.alexander:
            continue
        same = e.jones == p.jones
        mirr = e.jones == p.jones.invert_variable()
        if same and mirr:
            found.append((e.name, "either"))
        elif same:
            found.append((e.name, "same"))
        elif mirr and not strict:
            found.append((e.name, "mirror"))
    if not found:
        hint = " (unknot candidate)" if p.is_trivial() else ""
        raise NoMatch(f"no table knot has this profile{hint}")
    return found
