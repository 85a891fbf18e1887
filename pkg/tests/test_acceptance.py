"""Acceptance criteria, one printed PASS/FAIL line each.

Criteria that the current build does not meet are left failing; the reason
is printed on the criterion line.
"""

import json
import math
import time
from importlib import resources

import numpy as np
import pytest

from conftest import TORUS_PAIRS, section4_knot, torus_knot
from polyknot.app import analyze
from polyknot.braid import BraidWord, braid_closure_diagram, known_degree_sequences, smallest_r0
from polyknot.catalog import SECTION4_FIXTURE, load_catalog, verify_catalog
from polyknot.diagram import lift_diagram, sign_variation_count
from polyknot.errors import ParseError
from polyknot.invariants import identify, profile
from polyknot.lift import apply_crossing_changes
from polyknot.nodal import PlaneCurve, double_points, double_points_bruteforce
from polyknot.polycore import Poly, parse_poly, print_poly
from polyknot.table import CURATED_BRAIDS

PAIR_TOL = 1e-6


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} | {detail}")
    return emit


@pytest.fixture(scope="module")
def catalog_reports():
    t0 = time.perf_counter()
    reps = verify_catalog()
    return reps, time.perf_counter() - t0


def _attributed(r) -> bool:
    return any("documented irregularity" in d or "rounded too coarsely" in d for d in r.diagnostics)


def test_criterion_1_catalog_verification(report, catalog_reports):
    reps, elapsed = catalog_reports
    ok = [r for r in reps if r.verified]
    others = [r for r in reps if not r.verified]
    attributed = all(_attributed(r) for r in others)
    overlay = sum(r.verified for r in verify_catalog(overlay=True))
    passed = len(ok) >= 33 and attributed and elapsed < 300
    report(1, passed,
           f"{len(ok)}/35 verified verbatim (target >= 33); not verified: "
           f"{', '.join(f'{r.name}={r.status}' for r in others)}; all attributed: {attributed}; "
           f"{elapsed:.1f}s (< 300s); with annotated overlay: {overlay}/35")
    assert attributed and elapsed < 300
    assert len(ok) >= 33


def test_criterion_2_section4_end_to_end(report):
    k, rep = section4_knot()
    names = [n for n, _ in identify(profile(k.diagram))]
    degs = k.degree_seq.as_tuple()
    bound = 2 * 7 - 1 + 4 * 7
    res = analyze(SECTION4_FIXTURE["f"], SECTION4_FIXTURE["g"], SECTION4_FIXTURE["h"])
    printed_names = [m["name"] for m in res.get("identified_as", [])]
    checks = {
        "deg f = 5": degs[0] == 5,
        "deg g = 8": degs[1] == 8,
        "deg h = 9": degs[2] == 9,
        "N = 9": rep.n_variations == 9,
        "9 <= 41": degs[2] <= bound == 41,
        "identified 8_17": "8_17" in names,
        "printed triple: 14 crossings": res["crossings"] == 14,
        "printed triple: 8_17": "8_17" in printed_names,
    }
    failed = [c for c, v in checks.items() if not v]
    report(2, not failed, f"constructed degrees {degs}, N = {rep.n_variations}, identified {names}; "
                          f"printed triple {res['crossings']} crossings -> {printed_names}"
                          + (f"; failed: {', '.join(failed)}" if failed else ""))
    assert not failed


def _exhaustive_r0(p, q):
    return next(r for r in range(1, 1000) if math.gcd(2 * p - 1, q + r) == 1)


# triples as printed in the cited theorems, for the parameters given
LOOKUPS = [
    (("torus_2_strand", 2), {"minimal": False}, (3, 8, 9)),   # (3, 4n, 4n+1)
    (("torus_pq", 3, 5), {}, (5, 9, 10)),                      # (2p-1, 2q-1, 2q)
    (("torus_2_strand", 3), {}, (3, 8, 10)),                   # n = 3m: (3, 2n+2, 2n+4)
    (("two_bridge", 7), {}, (3, 8, 10)),                       # N = 1 mod 3: (3, N+1, N+3)
    (("torus_p_2pminus1", 4), {}, (7, 8, 9)),                  # (2p-1, 2p, d), d in [2p+1, 4p-3]
]


def test_criterion_3_torus_degree_ledger(report):
    rows, failed = [], []
    for p, q in TORUS_PAIRS:
        k, rep = torus_knot(p, q)
        n_cross = len(k.points)
        dh = k.h.degree
        r0_ok = rep.bound.r0 == smallest_r0(p, q) == _exhaustive_r0(p, q)
        good = n_cross == (p - 1) * q and dh <= 2 * q - 1 and r0_ok
        rows.append(f"T({p},{q}) crossings {n_cross}, deg g {k.g.degree}, deg h {dh} <= {2 * q - 1}, "
                    f"r0 {rep.bound.r0}")
        if not good:
            failed.append(f"T({p},{q})")
    lookups_ok = all(known_degree_sequences(*args, **kw).as_tuple() == want
                     for args, kw, want in LOOKUPS)
    if not lookups_ok:
        failed.append("lookups")
    report(3, not failed, "; ".join(rows) + f"; 5 lookups verbatim: {lookups_ok}"
           + (f"; failed: {', '.join(failed)}" if failed else ""))
    assert not failed


def test_criterion_4_crossing_change_growth(report):
    knots = [torus_knot(p, q)[0] for p, q in TORUS_PAIRS] + [section4_knot()[0]]
    rng = np.random.default_rng(2024)
    worst, restored, grown_ok = -99, 0, 0
    for _ in range(50):
        k = knots[rng.integers(len(knots))]
        ids = sorted({v.crossing_id for v in k.diagram.visits})
        c = int(rng.choice(ids))
        n_old = sign_variation_count(k.diagram.visits)
        k1 = apply_crossing_changes(k, [c])
        worst = max(worst, k1.h.degree - n_old)
        grown_ok += k1.h.degree <= n_old + 4
        k2 = apply_crossing_changes(k1, [c])
        restored += k2.diagram.same_diagram(k.diagram)
    passed = grown_ok == 50 and restored == 50
    report(4, passed, f"50 flips: growth <= 4 in {grown_ok}/50 (max growth {worst}); "
                      f"double flip restores {restored}/50")
    assert passed


def _pairs_agree(a, b):
    return len(a) == len(b) and all(abs(p.s - q.s) <= PAIR_TOL and abs(p.t - q.t) <= PAIR_TOL
                                    for p, q in zip(a, b))


def test_criterion_5_solver_oracle(report):
    bad = []
    verbatim = {e.name: e for e in load_catalog()}
    for e in load_catalog(overlay=True):
        # the verbatim projection where it parses, the annotated one otherwise
        src = verbatim[e.name]
        try:
            f, g = parse_poly(src.f), parse_poly(src.g)
        except ParseError:
            f, g = parse_poly(e.f), parse_poly(e.g)
        c = PlaneCurve(f, g)
        if not _pairs_agree(double_points(c, check_transversal=False), double_points_bruteforce(c)):
            bad.append(e.name)
    rng = np.random.default_rng(37)
    n_random = 0
    for _ in range(10):
        f = Poly(np.r_[np.round(rng.normal(0, 2, 3), 3), 1.0])
        g = Poly(np.r_[np.round(rng.normal(0, 2, 7), 3), 1.0])
        c = PlaneCurve(f, g)
        n_random += 1
        if not _pairs_agree(double_points(c, check_transversal=False), double_points_bruteforce(c)):
            bad.append(f"random {print_poly(f)} / {print_poly(g)}")
    report(5, not bad, f"35 catalog projections + {n_random} random (3, 7) curves; disagreements: "
                       f"{bad or 'none'}")
    assert not bad


def _identities(prof) -> bool:
    a, j = prof.alexander, prof.jones
    return (a == a.invert_variable() and abs(a.evaluate(1)) == 1 and j.evaluate(1) == 1
            and prof.determinant % 2 == 1)


def test_criterion_6_invariant_identities(report, catalog_reports):
    profiles = []
    reps, _ = catalog_reports
    profiles += [r.profile for r in reps if r.profile is not None]
    profiles += [profile(torus_knot(p, q)[0].diagram) for p, q in TORUS_PAIRS]
    profiles.append(profile(section4_knot()[0].diagram))
    profiles += [profile(braid_closure_diagram(BraidWord.from_ints(w))) for w in CURATED_BRAIDS.values()]
    bad_id = sum(not _identities(p) for p in profiles)
    cat = {e.name: e for e in load_catalog()}
    names = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "7_4", "8_19"]
    mism = []
    for n in names:
        e = cat[n]
        f, g, h = parse_poly(e.f), parse_poly(e.g), parse_poly(e.h)
        c = PlaneCurve(f, g)
        pc = profile(lift_diagram(c, h, double_points(c)))
        pb = profile(braid_closure_diagram(BraidWord.from_ints(CURATED_BRAIDS[n])))
        if not pc.equals_up_to_mirror(pb):
            mism.append(n)
    passed = bad_id == 0 and not mism
    report(6, passed, f"identities hold on {len(profiles) - bad_id}/{len(profiles)} diagrams; "
                      f"catalog vs braid profile (up to mirror) equal on {len(names) - len(mism)}/10"
                      + (f"; mismatched: {mism}" if mism else ""))
    assert passed


MALFORMED = ["", "t^", "(t - 1", "t - 1)", "t^-2", "2 / t", "t ** 2", "t^{2", "t^2.5", "x + 1",
             "t + * 2", "t^^2", "+", "t^{}", "()", "t^(2)", "1 -", "t × × t", "(t)(", "t $ 2"]


def test_criterion_7_parser(report):
    data = json.loads(resources.files("polyknot").joinpath("data/catalog.json").read_text("utf-8"))
    overlay = {e.name: e for e in load_catalog(overlay=True)}
    total, round_trip, substituted = 0, 0, []
    for e in data["entries"]:
        for fld in ("f", "g", "h"):
            text = e[fld]
            try:
                p = parse_poly(text)
            except ParseError:
                # a documented transcription error; its annotated form is checked instead
                substituted.append(f"{e['name']}.{fld}")
                p = parse_poly(getattr(overlay[e["name"]], fld))
            total += 1
            round_trip += parse_poly(print_poly(p)) == p
    positioned = 0
    for text in MALFORMED:
        try:
            parse_poly(text)
        except ParseError as exc:
            positioned += exc.position is not None and 0 <= exc.position <= len(text)
    passed = round_trip == total and positioned == len(MALFORMED) == 20
    report(7, passed, f"round trip {round_trip}/{total} strings "
                      f"(unparsable verbatim, checked in annotated form: {substituted or 'none'}); "
                      f"positioned ParseErrors {positioned}/{len(MALFORMED)}")
    assert passed
