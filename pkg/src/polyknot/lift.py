"""Height functions and the construction pipeline for quasitoric knots.

Given the crossing parameters of a regular projection and a desired over/under
role for each visit, the height is the product of linear factors vanishing
once between consecutive runs of equal roles.  It is positive on runs of
over-visits and negative on runs of under-visits, so every crossing resolves
the right way and the degree equals the number of role changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braid import (BraidWord, DegreeSequence, QuasitoricPattern, braid_closure_diagram,
                    closure_components, closure_visits, crossing_change_count,
                    degree_sequence_bound)
from .diagram import OVER, UNDER, CrossingVisit, KnotDiagram, lift_diagram, sign_variation_count
from .errors import GaussMismatch, InconsistentRoles, NotAKnot, PolyknotError
from .invariants import profile
from .nodal import (DoublePoint, PlaneCurve, double_points, gauss_alignments, gauss_sequence,
                    toric_projection, validate_generic)
from .polycore import Poly, parse_poly, poly_from_roots, print_poly


@dataclass(frozen=True)
class LiftPlan:
    crossing_params: tuple[float, ...]
    desired_roles: tuple[str, ...]
    runs: tuple[tuple[int, int], ...]  # half-open index ranges into crossing_params
    separators: tuple[float, ...]

    @property
    def N(self) -> int:
        return len(self.separators)


def make_plan(params: Sequence[float], roles: Sequence[str],
              crossing_ids: Sequence[int] | None = None) -> LiftPlan:
    """Plan with separators at the midpoints between runs."""
    order = sorted(range(len(params)), key=lambda i: params[i])
    ps = tuple(float(params[i]) for i in order)
    rs = tuple(roles[i] for i in order)
    if any(b - a <= 0 for a, b in zip(ps, ps[1:])):
        raise InconsistentRoles("crossing parameters must be distinct")
    if crossing_ids is not None:
        seen: dict[int, set] = {}
        for i in order:
            seen.setdefault(crossing_ids[i], set()).add(roles[i])
        bad = [c for c, r in seen.items() if r != {OVER, UNDER}]
        if bad:
            raise InconsistentRoles(f"crossings {bad} do not get one over and one under visit")
    runs = []
    start = 0
    for i in range(1, len(rs) + 1):
        if i == len(rs) or rs[i] != rs[start]:
            runs.append((start, i))
            start = i
    seps = tuple(0.5 * (ps[b - 1] + ps[b]) for (_, b) in runs[:-1])
    return LiftPlan(ps, rs, tuple(runs), seps)


def construct_height(plan: LiftPlan) -> Poly:
    """h = +-prod(t - s_i), positive on over-runs and negative on under-runs."""
    if not plan.crossing_params:
        return Poly((1.0,))
    first_over = plan.desired_roles[0] == OVER
    # sign of prod(t - s_i) left of every separator is (-1)^N
    lead = (-1.0) ** plan.N * (1.0 if first_over else -1.0)
    h = poly_from_roots(plan.separators, lead)
    for t, role in zip(plan.crossing_params, plan.desired_roles):
        val = h(t)
        if (val > 0) != (role == OVER) or val == 0:
            raise InconsistentRoles(f"height has the wrong sign at parameter {t:.6g}")
    if h.degree != plan.N:
        raise InconsistentRoles("height degree differs from the number of role changes")
    return h


@dataclass(frozen=True)
class PolyKnot:
    f: Poly
    g: Poly
    h: Poly
    diagram: KnotDiagram
    points: tuple[DoublePoint, ...] = field(default=(), compare=False, repr=False)

    @property
    def curve(self) -> PlaneCurve:
        return PlaneCurve(self.f, self.g)

    @property
    def degree_seq(self) -> DegreeSequence:
        return DegreeSequence(self.f.degree, self.g.degree, max(self.h.degree, 0))

    def to_json(self) -> dict:
        return {"f": print_poly(self.f), "g": print_poly(self.g), "h": print_poly(self.h),
                "degrees": list(self.degree_seq.as_tuple())}

    @classmethod
    def from_json(cls, data) -> "PolyKnot":
        if isinstance(data, str):
            data = json.loads(data)
        f, g, h = (parse_poly(data[k]) for k in ("f", "g", "h"))
        curve = PlaneCurve(f, g)
        pts = tuple(double_points(curve))
        return cls(f, g, h, lift_diagram(curve, h, pts), pts)


def _plan_for(k: PolyKnot, roles_by_visit: Sequence[str]) -> LiftPlan:
    vis = k.diagram.visits
    return make_plan([v.param for v in vis], roles_by_visit, [v.crossing_id for v in vis])


def apply_crossing_changes(k: PolyKnot, crossing_ids: Iterable[int]) -> PolyKnot:
    """Swap over/under at the given crossings and rebuild the height.

    The new degree is checked against N_old + 4 r, the growth bound for r
    crossing changes.
    """
    ids = set(crossing_ids)
    known = {v.crossing_id for v in k.diagram.visits}
    if ids - known:
        raise PolyknotError(f"unknown crossing ids {sorted(ids - known)}")
    flip = {OVER: UNDER, UNDER: OVER}
    roles = [flip[v.role] if v.crossing_id in ids else v.role for v in k.diagram.visits]
    n_old = sign_variation_count(k.diagram.visits)
    h = construct_height(_plan_for(k, roles))
    assert h.degree <= n_old + 4 * len(ids), "degree growth exceeds 4 per crossing change"
    pts = k.points or tuple(double_points(k.curve))
    d = lift_diagram(k.curve, h, pts)
    if [v.role for v in d.visits] != roles:
        raise InconsistentRoles("lifted diagram does not realise the requested roles")
    return PolyKnot(k.f, k.g, h, d, pts)


# -- alignment of a projection with the closure of the toric braid ----------

def _transfer_roles(curve_seq, closure_vis: Sequence[CrossingVisit], r: int, rev: bool) -> list[str]:
    vis = list(closure_vis[r:]) + list(closure_vis[:r])
    if rev:
        vis = vis[::-1]
    return [v.role for v in vis]


@dataclass(frozen=True)
class ConstructionReport:
    pattern: QuasitoricPattern
    bound: DegreeSequence
    attained: DegreeSequence
    n_variations: int
    rotation: int
    reversed: bool
    reflected: bool


DEFAULT_DEGREE_SLACK = 6


def construct_polyknot(pat: QuasitoricPattern, curve: PlaneCurve | None = None,
                       return_report: bool = False, degree_slack: int = DEFAULT_DEGREE_SLACK):
    """Polynomial knot for the closure of a quasitoric braid (p in {2, 3}).

    Pipeline: degree bound, toric projection, double points, Gauss alignment
    with the toric closure, roles from the pattern, height, lift, and a final
    invariant comparison with the braid closure.  When no template of
    degree q + r0 is known the projection may have a larger deg g (at most
    ``degree_slack`` more); the report records the attained degrees.
    """
    word = pat.word()
    if closure_components(word) != 1:
        raise NotAKnot(f"closure has {closure_components(word)} components")
    r = crossing_change_count(pat)
    bound = degree_sequence_bound(pat.p, pat.q, r)
    if curve is None:
        curve = toric_projection(pat.p, pat.q, bound.r0, degree_slack=degree_slack)
    target = profile(braid_closure_diagram(word))
    reflected = False
    last_error = None
    best = None
    for attempt in range(2):
        pts = tuple(double_points(curve))
        report = validate_generic(curve, list(pts))
        if not report.valid:
            raise GaussMismatch("projection is not regular: " + "; ".join(report.violations))
        params, seq = gauss_sequence(pts)
        closure_vis = closure_visits(word)
        matches = gauss_alignments(seq, [v.crossing_id for v in closure_vis])
        if not matches:
            raise GaussMismatch("projection does not realise the toric closure")
        # every alignment that certifies is a valid answer; keep the lowest deg h
        for rot, rev in matches:
            roles = _transfer_roles(seq, closure_vis, rot, rev)
            plan = make_plan(params, roles, seq)
            if best is not None and plan.N >= best[1].N:
                continue
            h = construct_height(plan)
            d = lift_diagram(curve, h, pts)
            if [v.role for v in d.visits] != list(plan.desired_roles):
                last_error = "lifted roles differ from the plan"
                continue
            if profile(d) != target:
                last_error = "invariants differ from the braid closure"
                continue
            best = (PolyKnot(curve.f, curve.g, h, d, pts), plan, rot, rev, reflected)
        if best is not None:
            break
        # the projection may realise the mirror planar embedding; reflect it
        curve = PlaneCurve(-curve.f, curve.g)
        reflected = not reflected
    if best is None:
        raise GaussMismatch(f"certification failed: {last_error}")
    k, plan, rot, rev, reflected = best
    if k.h.degree > 2 * pat.q - 1 + 4 * r:
        raise AssertionError("attained height degree exceeds the theorem bound")
    if not return_report:
        return k
    return k, ConstructionReport(pat, bound, k.degree_seq, plan.N, rot, rev, reflected)


def polyknot_from_braid(w: BraidWord, **kw):
    from .braid import as_quasitoric
    return construct_polyknot(as_quasitoric(w), **kw)
