import json

import pytest

from polyknot.catalog import (SECTION4_FIXTURE, CatalogEntry, entries_checksum, height_margins,
                              literal_perturbations, load_catalog, verify_entry)
from polyknot.errors import PolyknotError
from polyknot.nodal import PlaneCurve
from polyknot.polycore import parse_poly


def entry(name, overlay=False):
    return next(e for e in load_catalog(overlay=overlay) if e.name == name)


def test_catalog_size_and_fixture():
    cat = load_catalog(include_fixture=True)
    assert len(cat) == 36
    assert cat[-1].source == "section4" and cat[-1].name == "8_17"


def test_checksum_guards_transcription(tmp_path):
    from importlib import resources
    data = json.loads(resources.files("polyknot").joinpath("data/catalog.json").read_text("utf-8"))
    assert data["sha256"] == entries_checksum(data["entries"])
    data["entries"][0]["g"] = data["entries"][0]["g"].replace("1.15", "1.16")
    bad = tmp_path / "cat.json"
    bad.write_text(json.dumps(data, ensure_ascii=False), encoding="utf-8")
    with pytest.raises(PolyknotError):
        load_catalog(bad)


def test_trefoil_entry():
    r = verify_entry(entry("3_1"))
    assert r.status == "verified" and r.crossing_count == 3 and r.degrees == (3, 4, 5)


def test_8_19_entry():
    r = verify_entry(entry("8_19"))
    assert r.status == "verified" and r.degrees == (5, 6, 7)


def test_corrupted_entry():
    e = entry("5_2")
    r = verify_entry(CatalogEntry("5_2", "0 t^3 - 17t", e.g, e.h))
    assert r.status in ("error", "degenerate", "mismatch") and r.diagnostics
    r = verify_entry(CatalogEntry("5_2", "t^3 - 17t", "t^7 - ", e.h))
    assert r.status == "error" and "ParseError" in r.diagnostics[0]


def test_8_4_transcription_error_documented():
    r = verify_entry(entry("8_4"))
    assert r.status == "error"
    assert any("documented irregularity" in d for d in r.diagnostics)
    assert verify_entry(entry("8_4", overlay=True)).status == "verified"


def test_overlay_is_recorded():
    e = entry("8_13", overlay=True)
    assert e.corrected == ("f",)
    r = verify_entry(e)
    assert any("overlay correction" in d for d in r.diagnostics)


def test_literal_perturbations_skip_power_of_ten():
    d = literal_perturbations("3 × 10^6 t + 1.25")
    # 3 (half unit 0.5 -> 5e5 t) and 1.25 (0.005), but not the base 10
    assert len(d) == 2


def test_height_margins_section4():
    f, g = parse_poly(SECTION4_FIXTURE["f"]), parse_poly(SECTION4_FIXTURE["g"])
    rows = height_margins(PlaneCurve(f, g), SECTION4_FIXTURE["h"])
    assert len(rows) == 14
    assert all(abs(gap) > unc for _, _, gap, unc in rows)
