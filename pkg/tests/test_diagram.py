import pytest

from polyknot.diagram import (OVER, UNDER, CrossingVisit, diagram_from_visits, gauss_code,
                              lift_diagram, parse_gauss, sign_variation_count)
from polyknot.errors import HeightSeparationFailure
from polyknot.nodal import PlaneCurve
from polyknot.polycore import parse_poly


def trefoil_parts():
    # the 3_1 catalog triple
    c = PlaneCurve(parse_poly("t(t - 1) × (t + 1)"), parse_poly("t^2(t - 1.15) × (t + 1.15)"))
    return c, parse_poly("(t^2 - 1.056445^2) × (t^2 - 0.644893^2)t")


def test_lift_trefoil_alternates():
    c, h = trefoil_parts()
    d = lift_diagram(c, h)
    assert d.n_crossings == 3
    assert sign_variation_count(d.visits) == 5
    assert abs(d.writhe) == 3


def test_gauss_round_trip():
    c, h = trefoil_parts()
    d = lift_diagram(c, h)
    again = diagram_from_visits(parse_gauss(d.gauss))
    assert again.same_diagram(d)
    assert again.pd == d.pd


def test_pd_labels_appear_twice():
    c, h = trefoil_parts()
    d = lift_diagram(c, h)
    labels = [x for row in d.pd for x in row]
    assert sorted(set(labels)) == list(range(1, 7))
    assert all(labels.count(x) == 2 for x in set(labels))


def test_mirror_flips_roles_and_signs():
    c, h = trefoil_parts()
    d = lift_diagram(c, h)
    m = d.mirror()
    assert [v.role for v in m.visits] == [UNDER if v.role == OVER else OVER for v in d.visits]
    assert m.writhe == -d.writhe


def test_height_must_separate():
    c, _ = trefoil_parts()
    with pytest.raises(HeightSeparationFailure):
        lift_diagram(c, parse_poly("t^2"))  # even h cannot separate the pairs (s, -s)


def test_sign_variations_of_strings():
    assert sign_variation_count([OVER, OVER, UNDER, OVER]) == 2
