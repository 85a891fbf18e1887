import math

import pytest

from polyknot.braid import (BraidWord, QuasitoricPattern, as_quasitoric, braid_closure_diagram,
                            closure_components, closure_visits, crossing_change_count,
                            degree_sequence_bound, known_degree_sequences, parse_braid,
                            smallest_r0, toric_braid)
from polyknot.catalog import SECTION4_WORD
from polyknot.errors import (IndexOutOfRange, NotAKnot, NotCoprime, NotQuasitoric, OutOfFamily,
                             ParseError)


def test_parse_and_print():
    w = parse_braid(SECTION4_WORD)
    assert w.strands == 3 and len(w) == 14
    assert parse_braid(str(w)) == w
    assert parse_braid("s1 s1 s1").strands == 2


@pytest.mark.parametrize("text", ["", "s1 x2", "p=3; s1^2", "s"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_braid(text)


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse_braid("p=3; s1 s3")


def test_section4_pattern():
    pat = as_quasitoric(parse_braid(SECTION4_WORD))
    assert (pat.p, pat.q) == (3, 7)
    assert crossing_change_count(pat) == 7


def test_not_quasitoric():
    with pytest.raises(NotQuasitoric):
        as_quasitoric(parse_braid("p=3; s2 s1"))


def test_components():
    assert closure_components(toric_braid(2, 3)) == 1
    assert closure_components(toric_braid(2, 4)) == 2
    with pytest.raises(NotAKnot):
        closure_visits(toric_braid(3, 3))


def test_closure_visits_cover_each_crossing_twice():
    w = toric_braid(3, 5)
    vis = closure_visits(w)
    assert len(vis) == 2 * len(w)
    for k in range(1, len(w) + 1):
        roles = sorted(v.role for v in vis if v.crossing_id == k)
        assert roles == ["over", "under"]


def exhaustive_r0(p, q):
    return next(r for r in range(1, 100) if math.gcd(2 * p - 1, q + r) == 1)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (3, 8), (2, 9)])
def test_r0_against_exhaustive_search(p, q):
    assert smallest_r0(p, q) == exhaustive_r0(p, q)


def test_degree_bound_section4():
    b = degree_sequence_bound(3, 7, 7)
    assert str(b) == "(5, 8, ≤41)" and b.r0 == 1
    with pytest.raises(NotCoprime):
        degree_sequence_bound(2, 4, 0)


@pytest.mark.parametrize("family,params,expected", [
    ("torus_2_strand", (1,), (3, 4, 5)),       # n = 3m + 1: (3, 2n+2, 2n+3)
    ("torus_2_strand", (3,), (3, 8, 10)),      # n = 3m: (3, 2n+2, 2n+4)
    ("torus_2_strand", (2,), (3, 7, 8)),       # n = 3m + 2: (3, 2n+3, 2n+4)
    ("two_bridge", (5,), (3, 7, 8)),
    ("torus_pq", (3, 7), (5, 13, 14)),
])
def test_known_sequences(family, params, expected):
    assert known_degree_sequences(family, *params).as_tuple() == expected


def test_known_sequences_non_minimal_and_range():
    assert known_degree_sequences("torus_2_strand", 2, minimal=False).as_tuple() == (3, 8, 9)
    d = known_degree_sequences("torus_p_2pminus1", 3)
    assert (d.l, d.m, d.n, d.n_max) == (5, 6, 7, 9)
    with pytest.raises(OutOfFamily):
        known_degree_sequences("two_bridge", 2)


def test_from_ints_and_closure_diagram():
    d = braid_closure_diagram(BraidWord.from_ints([1, -2, 1, -2]))
    assert d.n_crossings == 4
