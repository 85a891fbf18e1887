import functools

import pytest

from polyknot.braid import as_quasitoric, parse_braid, toric_braid
from polyknot.catalog import SECTION4_WORD
from polyknot.lift import construct_polyknot

TORUS_PAIRS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7)]


@functools.lru_cache(maxsize=None)
def torus_knot(p, q):
    return construct_polyknot(as_quasitoric(toric_braid(p, q)), return_report=True)


@functools.lru_cache(maxsize=None)
def section4_knot():
    return construct_polyknot(as_quasitoric(parse_braid(SECTION4_WORD)), return_report=True)


@pytest.fixture(scope="session")
def trefoil():
    return torus_knot(2, 3)[0]
