"""Braid words, toric/quasitoric structure and degree-sequence arithmetic."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

from .diagram import OVER, UNDER, CrossingVisit, KnotDiagram, diagram_from_visits
from .errors import (IndexOutOfRange, NotAKnot, NotCoprime, NotQuasitoric, OutOfFamily,
                     ParseError)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least two strands")
        for pos, (i, e) in enumerate(self.letters):
            if not 1 <= i <= self.strands - 1:
                raise IndexOutOfRange(f"letter {pos}: sigma_{i} on {self.strands} strands")
            if e not in (1, -1):
                raise ValueError(f"letter {pos}: sign must be +1 or -1")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"p={self.strands}; " + " ".join(
            f"s{i}" if e > 0 else f"s{i}^-1" for i, e in self.letters)

    @classmethod
    def from_ints(cls, word, strands: int | None = None) -> "BraidWord":
        """From the common signed-integer notation, e.g. [1, -2, 1, -2]."""
        letters = tuple((abs(x), 1 if x > 0 else -1) for x in word)
        if strands is None:
            strands = 1 + max((i for i, _ in letters), default=1)
        return cls(strands, letters)

    def permutation(self) -> list[int]:
        """perm[k] = bottom position that ends at top position k (0-based)."""
        pos = list(range(self.strands))
        for i, _ in self.letters:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        return pos


@dataclass(frozen=True)
class QuasitoricPattern:
    p: int
    q: int
    signs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.signs) != self.q or any(len(r) != self.p - 1 for r in self.signs):
            raise ValueError(f"sign matrix must be {self.q} x {self.p - 1}")
        if any(e not in (1, -1) for r in self.signs for e in r):
            raise ValueError("pattern entries must be +1 or -1")

    def word(self) -> BraidWord:
        return BraidWord(self.p, tuple((k + 1, e) for row in self.signs for k, e in enumerate(row)))

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "signs": [list(r) for r in self.signs]}

    @classmethod
    def from_json(cls, data) -> "QuasitoricPattern":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["p"]), int(data["q"]), tuple(tuple(int(e) for e in r) for r in data["signs"]))


@dataclass(frozen=True)
class DegreeSequence:
    l: int
    m: int
    n: int
    bound_only_last: bool = False
    r0: int | None = None
    n_max: int | None = None  # upper end when the last degree is only known to lie in [n, n_max]

    def __post_init__(self):
        if min(self.l, self.m, self.n) < 1 and not (self.n == 0 and self.l > 0 and self.m > 0):
            raise ValueError("degrees must be positive")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.l, self.m, self.n)

    def __str__(self) -> str:
        if self.n_max is not None:
            last = f"{self.n}..{self.n_max}"
        else:
            last = f"≤{self.n}" if self.bound_only_last else str(self.n)
        return f"({self.l}, {self.m}, {last})"


def toric_braid(p: int, q: int) -> BraidWord:
    return BraidWord(p, tuple((i, 1) for _ in range(q) for i in range(1, p)))


_BRAID_TOKEN = re.compile(r"s(\d+)(\^(-?1))?$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``"p=3; s1^-1 s2 s1 s2^-1"``; the strand count defaults to 1 + max index."""
    body = text.strip()
    strands = None
    m = re.match(r"\s*p\s*=\s*(\d+)\s*;", body)
    offset = 0
    if m:
        strands = int(m.group(1))
        offset = m.end()
        body = body[m.end():]
    letters = []
    for tok in re.finditer(r"\S+", body):
        mt = _BRAID_TOKEN.match(tok.group())
        if not mt:
            raise ParseError(f"bad braid letter {tok.group()!r}", offset + tok.start(),
                             ("s<k>", "s<k>^-1"))
        sign = -1 if mt.group(3) == "-1" else 1
        letters.append((int(mt.group(1)), sign))
    if not letters:
        raise ParseError("empty braid word", offset, ("s<k>",))
    if any(i < 1 for i, _ in letters):
        raise IndexOutOfRange("generator indices start at 1")
    if strands is None:
        strands = 1 + max(i for i, _ in letters)
    return BraidWord(strands, tuple(letters))


def as_quasitoric(w: BraidWord) -> QuasitoricPattern:
    p = w.strands
    n = len(w.letters)
    for pos, (i, _) in enumerate(w.letters):
        if i != pos % (p - 1) + 1:
            raise NotQuasitoric(f"letter {pos} is sigma_{i}, expected sigma_{pos % (p - 1) + 1}", pos)
    if n == 0 or n % (p - 1):
        raise NotQuasitoric("word length is not a multiple of p - 1", n)
    q = n // (p - 1)
    rows = tuple(tuple(e for _, e in w.letters[j * (p - 1):(j + 1) * (p - 1)]) for j in range(q))
    return QuasitoricPattern(p, q, rows)


def closure_components(w: BraidWord) -> int:
    perm = w.permutation()
    seen = [False] * w.strands
    cycles = 0
    for k in range(w.strands):
        if not seen[k]:
            cycles += 1
            while not seen[k]:
                seen[k] = True
                k = perm[k]
    return cycles


def crossing_change_count(pat: QuasitoricPattern) -> int:
    return sum(1 for r in pat.signs for e in r if e == -1)


def smallest_r0(p: int, q: int) -> int:
    r0 = 1
    while math.gcd(2 * p - 1, q + r0) != 1:
        r0 += 1
    return r0


def degree_sequence_bound(p: int, q: int, r: int) -> DegreeSequence:
    """(2p - 1, q + r0, <= 2q - 1 + 4r) for a quasitoric knot of type (p, q)."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {math.gcd(p, q)}")
    r0 = smallest_r0(p, q)
    return DegreeSequence(2 * p - 1, q + r0, 2 * q - 1 + 4 * r, bound_only_last=True, r0=r0)


def known_degree_sequences(family: str, *params: int, minimal: bool = True) -> DegreeSequence:
    """Published degree sequences for the classical families.

    families: ``torus_2_strand(n)`` for the (2, 2n+1) torus knot,
    ``torus_pq(p, q)``, ``two_bridge(N)`` for crossing number N,
    ``torus_p_2pminus1(p)``.
    """
    if family == "torus_2_strand":
        (n,) = params
        if n < 1:
            raise OutOfFamily("torus_2_strand needs n >= 1")
        if not minimal:
            return DegreeSequence(3, 4 * n, 4 * n + 1)
        k = n % 3
        if k == 0:
            return DegreeSequence(3, 2 * n + 2, 2 * n + 4)
        if k == 1:
            return DegreeSequence(3, 2 * n + 2, 2 * n + 3)
        return DegreeSequence(3, 2 * n + 3, 2 * n + 4)
    if family == "torus_pq":
        p, q = params
        if not (2 < p < q) or math.gcd(p, q) != 1:
            raise OutOfFamily("torus_pq needs 2 < p < q with gcd(p, q) = 1")
        return DegreeSequence(2 * p - 1, 2 * q - 1, 2 * q)
    if family == "two_bridge":
        (N,) = params
        if N < 3:
            raise OutOfFamily("two_bridge needs crossing number N >= 3")
        k = N % 3
        if k == 0:
            return DegreeSequence(3, N + 1, N + 2)
        if k == 1:
            return DegreeSequence(3, N + 1, N + 3)
        return DegreeSequence(3, N + 2, N + 3)
    if family == "torus_p_2pminus1":
        (p,) = params
        if p < 2:
            raise OutOfFamily("torus_p_2pminus1 needs p >= 2")
        return DegreeSequence(2 * p - 1, 2 * p, 2 * p + 1, n_max=4 * p - 3)
    raise OutOfFamily(f"unknown family {family!r}")


def closure_visits(w: BraidWord) -> list[CrossingVisit]:
    """Crossing visits of the standard closure, in traversal order.

    A positive letter is a positive crossing whose over-strand enters from the
    left position; a negative letter takes its over-strand from the right.
    Crossing ids are 1-based letter positions; ``param`` is the traversal index.
    """
    if closure_components(w) != 1:
        raise NotAKnot(f"closure has {closure_components(w)} components")
    n = len(w.letters)
    visits: list[CrossingVisit] = []
    pos = 0
    for _ in range(w.strands):
        for k, (i, e) in enumerate(w.letters):
            if pos == i - 1:
                role = OVER if e > 0 else UNDER
                visits.append(CrossingVisit(float(len(visits)), k + 1, role, e))
                pos = i
            elif pos == i:
                role = UNDER if e > 0 else OVER
                visits.append(CrossingVisit(float(len(visits)), k + 1, role, e))
                pos = i - 1
    if len(visits) != 2 * n or pos != 0:
        raise NotAKnot("closure traversal did not return to its start")
    return visits


def braid_closure_diagram(w: BraidWord) -> KnotDiagram:
    return diagram_from_visits(closure_visits(w), "braid_closure")
