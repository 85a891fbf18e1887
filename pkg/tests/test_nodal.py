import math

import numpy as np
import pytest

from polyknot.errors import DegenerateIntersection, TemplateSearchFailed
from polyknot.nodal import (PlaneCurve, certify_toric, divided_difference, double_points,
                            double_points_bruteforce, gauss_alignments, gauss_sequence,
                            toric_projection, validate_generic)
from polyknot.polycore import Poly, parse_poly


def curve(f, g):
    return PlaneCurve(parse_poly(f), parse_poly(g))


def test_trefoil_projection_has_three_nodes():
    c = curve("t^3 - 3t", "t^4 - 4t^2")
    pts = double_points(c)
    assert len(pts) == 3
    for p in pts:
        assert p.s < p.t
        assert c.f(p.s) == pytest.approx(c.f(p.t), abs=1e-9)
        assert c.g(p.s) == pytest.approx(c.g(p.t), abs=1e-9)


def test_alpha_curve_node_closed_form():
    # (t^2 - 1, t^3 - t) crosses itself once at t = -1, 1
    pts = double_points(curve("t^2 - 1", "t^3 - t"))
    assert len(pts) == 1
    assert (pts[0].s, pts[0].t) == pytest.approx((-1.0, 1.0), abs=1e-10)


def test_injective_curve_has_no_nodes():
    assert double_points(curve("t", "t^2")) == []


def test_divided_difference():
    p = parse_poly("t^3 - 2t")
    assert divided_difference(p, 2.0, -1.0) == pytest.approx((p(2.0) - p(-1.0)) / 3.0)


def test_degenerate_curve_is_reported():
    # g a polynomial in f: the curve retraces itself
    with pytest.raises(DegenerateIntersection):
        double_points(curve("t^2", "t^4 + t^2"))


@pytest.mark.parametrize("seed", range(4))
def test_resultant_agrees_with_bruteforce(seed):
    rng = np.random.default_rng(seed)
    f = Poly(np.r_[rng.normal(size=5), 1.0])
    g = Poly(np.r_[rng.normal(size=7), 1.0])
    c = PlaneCurve(f, g)
    a = double_points(c, check_transversal=False)
    b = double_points_bruteforce(c)
    assert len(a) == len(b)
    for p, q in zip(a, b):
        assert p.s == pytest.approx(q.s, abs=1e-6) and p.t == pytest.approx(q.t, abs=1e-6)


def test_gauss_alignments_rotation_and_reversal():
    closure = [1, 2, 3, 1, 2, 3]
    assert (0, False) in gauss_alignments([7, 8, 9, 7, 8, 9], closure)
    assert gauss_alignments([1, 1, 2, 2, 3, 3], closure) == []
    assert any(rev for _, rev in gauss_alignments([5, 4, 3, 5, 4, 3][::-1], closure))


def test_gauss_sequence_order():
    pts = double_points(curve("t^3 - 3t", "t^4 - 4t^2"))
    params, ids = gauss_sequence(pts)
    assert params == sorted(params)
    assert sorted(ids) == sorted(list(range(3)) * 2)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5)])
def test_toric_projection_node_count(p, q):
    from polyknot.braid import smallest_r0
    c = toric_projection(p, q, smallest_r0(p, q), degree_slack=6)
    assert c.f.degree == 2 * p - 1
    assert len(double_points(c)) == (p - 1) * q
    assert certify_toric(c, p, q)


def test_toric_projection_exact_degree_when_available():
    c = toric_projection(2, 5, 2)
    assert c.g.degree == 7


def test_toric_projection_fails_loudly():
    with pytest.raises(TemplateSearchFailed):
        toric_projection(4, 5, 1)
    with pytest.raises(TemplateSearchFailed):
        toric_projection(3, 8, 1, degree_slack=0, budget=50)
