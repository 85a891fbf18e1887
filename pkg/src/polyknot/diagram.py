"""Knot diagrams built from ordered crossing visits.

A diagram is a closed sequence of 2n visits (a long knot is closed through the
point at infinity, which adds no crossings).  Arc ``k`` (1-based) runs from
visit ``k`` to visit ``k + 1``; the last arc returns to visit 1.

PD tuples start at the incoming under-arc and go counterclockwise.  A crossing
is positive when cross(over tangent, under tangent) > 0.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import HeightSeparationFailure, PolyknotError
from .nodal import PlaneCurve, double_points, validate_generic
from .polycore import Poly

OVER, UNDER = "over", "under"
HEIGHT_TOL = 1e-8


@dataclass(frozen=True)
class CrossingVisit:
    param: float
    crossing_id: int
    role: str
    local_sign: int


@dataclass(frozen=True)
class KnotDiagram:
    visits: tuple[CrossingVisit, ...]
    pd: tuple[tuple[int, int, int, int], ...]
    closure: str = "long_knot_arc"

    @property
    def n_crossings(self) -> int:
        return len(self.pd)

    @property
    def signs(self) -> dict[int, int]:
        return {v.crossing_id: v.local_sign for v in self.visits}

    @property
    def writhe(self) -> int:
        return sum(self.signs.values())

    @property
    def gauss(self) -> str:
        return gauss_code(self.visits)

    @property
    def roles(self) -> list[str]:
        return [v.role for v in self.visits]

    def same_diagram(self, other: "KnotDiagram") -> bool:
        """Equal crossing sequence, roles and signs (parameters may differ)."""
        key = lambda d: [(v.crossing_id, v.role, v.local_sign) for v in d.visits]
        return key(self) == key(other)

    def mirror(self) -> "KnotDiagram":
        flip = {OVER: UNDER, UNDER: OVER}
        visits = [CrossingVisit(v.param, v.crossing_id, flip[v.role], -v.local_sign)
                  for v in self.visits]
        return diagram_from_visits(visits, self.closure)

    def to_json(self) -> dict:
        return {"gauss": self.gauss, "pd": [list(x) for x in self.pd],
                "writhe": self.writhe, "closure": self.closure}


def gauss_code(visits: Sequence[CrossingVisit]) -> str:
    return " ".join(f"{'O' if v.role == OVER else 'U'}{v.crossing_id}{'+' if v.local_sign > 0 else '-'}"
                    for v in visits)


_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")


def parse_gauss(text: str) -> list[CrossingVisit]:
    visits = []
    for i, tok in enumerate(text.split()):
        m = _GAUSS_TOKEN.fullmatch(tok)
        if not m:
            raise PolyknotError(f"bad Gauss token {tok!r}")
        role = OVER if m.group(1) == "O" else UNDER
        visits.append(CrossingVisit(float(i), int(m.group(2)), role, 1 if m.group(3) == "+" else -1))
    return visits


def diagram_from_visits(visits: Sequence[CrossingVisit], closure: str = "long_knot_arc") -> KnotDiagram:
    """Relabel crossings in order of first appearance and emit the PD code."""
    relabel: dict[int, int] = {}
    for v in visits:
        relabel.setdefault(v.crossing_id, len(relabel) + 1)
    visits = [CrossingVisit(v.param, relabel[v.crossing_id], v.role, v.local_sign) for v in visits]
    m = len(visits)
    where: dict[int, dict[str, int]] = {}
    for i, v in enumerate(visits):
        slot = where.setdefault(v.crossing_id, {})
        if v.role in slot:
            raise PolyknotError(f"crossing {v.crossing_id} visited twice as {v.role}")
        slot[v.role] = i
    pd = []
    for cid in sorted(where):
        slot = where[cid]
        if set(slot) != {OVER, UNDER}:
            raise PolyknotError(f"crossing {cid} lacks an over/under pair")
        iu, io = slot[UNDER], slot[OVER]
        # arc labels: arc k leaves visit k (1-based), so in(i) = i, out(i) = i + 1
        in_u, out_u = (iu if iu > 0 else m), iu + 1
        in_o, out_o = (io if io > 0 else m), io + 1
        if visits[iu].local_sign > 0:
            pd.append((in_u, out_o, out_u, in_o))
        else:
            pd.append((in_u, in_o, out_u, out_o))
    return KnotDiagram(tuple(visits), tuple(pd), closure)


def sign_variation_count(visits: Sequence[CrossingVisit] | Sequence[str]) -> int:
    roles = [v.role if isinstance(v, CrossingVisit) else v for v in visits]
    return sum(1 for a, b in zip(roles, roles[1:]) if a != b)


def lift_diagram(curve: PlaneCurve, h: Poly, points=None, height_tol: float = HEIGHT_TOL) -> KnotDiagram:
    """Diagram of t -> (f, g, h) viewed from +z."""
    if points is None:
        points = double_points(curve)
    report = validate_generic(curve, points)
    if not report.valid:
        raise PolyknotError("projection is not regular: " + "; ".join(report.violations))
    visits = []
    for cid, p in enumerate(points, start=1):
        hs, ht = float(h(p.s)), float(h(p.t))
        scale = max(1.0, abs(hs), abs(ht))
        if abs(hs - ht) <= height_tol * scale:
            raise HeightSeparationFailure(
                f"h does not separate the strands at parameters ({p.s:.6g}, {p.t:.6g})")
        s_over = hs > ht
        over_tan, under_tan = (p.tangent_s, p.tangent_t) if s_over else (p.tangent_t, p.tangent_s)
        cross = over_tan[0] * under_tan[1] - over_tan[1] * under_tan[0]
        sign = 1 if cross > 0 else -1
        visits.append(CrossingVisit(p.s, cid, OVER if s_over else UNDER, sign))
        visits.append(CrossingVisit(p.t, cid, UNDER if s_over else OVER, sign))
    visits.sort(key=lambda v: v.param)
    return diagram_from_visits(visits, "long_knot_arc")


def pd_to_json(pd) -> str:
    return json.dumps([list(map(int, x)) for x in pd])
