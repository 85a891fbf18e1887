import json

import numpy as np
import pytest

from conftest import torus_knot
from polyknot.braid import as_quasitoric, parse_braid, toric_braid
from polyknot.diagram import OVER, UNDER, sign_variation_count
from polyknot.errors import InconsistentRoles, NotAKnot, PolyknotError
from polyknot.invariants import identify, profile
from polyknot.lift import PolyKnot, apply_crossing_changes, construct_height, construct_polyknot, make_plan


def test_plan_runs_and_separators():
    plan = make_plan([0.0, 1.0, 2.0, 3.0], [OVER, OVER, UNDER, OVER])
    assert plan.runs == ((0, 2), (2, 3), (3, 4))
    assert plan.separators == (1.5, 2.5)
    h = construct_height(plan)
    assert h.degree == 2
    assert h(0.0) > 0 and h(2.0) < 0 and h(3.0) > 0


def test_plan_single_run_gives_constant():
    h = construct_height(make_plan([0.0, 1.0], [UNDER, UNDER]))
    assert h.degree == 0 and h(5.0) < 0


def test_plan_rejects_inconsistent_roles():
    with pytest.raises(InconsistentRoles):
        make_plan([0.0, 1.0], [OVER, OVER], crossing_ids=[1, 1])
    with pytest.raises(InconsistentRoles):
        make_plan([0.0, 0.0], [OVER, UNDER])


def test_trefoil_construction(trefoil):
    assert trefoil.degree_seq.as_tuple()[:2] == (3, 4)
    assert trefoil.h.degree <= 5
    assert "3_1" in [n for n, _ in identify(profile(trefoil.diagram))]


def test_json_round_trip(trefoil):
    back = PolyKnot.from_json(json.dumps(trefoil.to_json()))
    assert back.diagram.same_diagram(trefoil.diagram)


def test_crossing_change_growth_and_involution(trefoil):
    n_old = sign_variation_count(trefoil.diagram.visits)
    k1 = apply_crossing_changes(trefoil, [2])
    assert k1.h.degree <= n_old + 4
    k2 = apply_crossing_changes(k1, [2])
    assert k2.diagram.same_diagram(trefoil.diagram)
    # one change turns the trefoil into the unknot
    assert profile(k1.diagram).is_trivial()


def test_unknown_crossing_rejected(trefoil):
    with pytest.raises(PolyknotError):
        apply_crossing_changes(trefoil, [99])


def test_link_rejected():
    with pytest.raises(NotAKnot):
        construct_polyknot(as_quasitoric(toric_braid(2, 4)))


def test_figure_eight_from_pattern():
    k = construct_polyknot(as_quasitoric(parse_braid("p=3; s1 s2^-1 s1 s2^-1")))
    assert "4_1" in [n for n, _ in identify(profile(k.diagram))]
    assert k.h.degree <= 2 * 2 - 1 + 4 * 2
