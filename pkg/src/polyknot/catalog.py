"""The shipped catalog of polynomial knots and its verification harness.

``data/catalog.json`` holds the 35 parametrizations exactly as printed (only
``\\times`` is written as ``×``).  A transcription checksum guards the file.
``data/catalog_overlay.json`` carries annotated corrections for entries with
obvious typographical slips; it is applied only on request and every use is
recorded in the report diagnostics.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import re
from dataclasses import dataclass, field, replace
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path
from typing import Sequence

from .diagram import OVER, UNDER, CrossingVisit, diagram_from_visits, lift_diagram
from .errors import NoMatch, PolyknotError
from .invariants import InvariantProfile, identify, profile
from .nodal import PlaneCurve, double_points, validate_generic
from .polycore import Poly, parse_poly

# The worked example: projection of the (3, 7) torus knot and its height.
SECTION4_FIXTURE = {
    "name": "8_17",
    "f": "t(t^2 - 6.431)(t^2 - 15.91)",
    "g": "t(t^2 - 0.18)(t^2 - 2.4899)(t^2 - 17.458)(t^2 - 16.15)(t^2 - 14.8)(t^2 - 11)",
    "h": "(t + 4.138362)(t + 3.86)(t + 2.416735)(t + 1.2)(t)(t - 2.416735)(t - 1.2)"
         "(t - 3.86)(t - 4.138362)",
}
SECTION4_WORD = "p=3; s1^-1 s2 s1 s2^-1 s1^-1 s2 s1 s2^-1 s1^-1 s2 s1 s2^-1 s1^-1 s2"

MAX_FLIP_SEARCH = 10  # unresolved crossings tried exhaustively in diagnostics


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    f: str
    g: str
    h: str
    source: str = "section5"
    corrected: tuple[str, ...] = ()  # fields replaced from the overlay
    note: str = ""


@dataclass
class VerificationReport:
    name: str
    status: str  # verified | mismatch | degenerate | error
    crossing_count: int | None = None
    degrees: tuple[int, int, int] | None = None
    profile: InvariantProfile | None = None
    identified_as: list[str] = field(default_factory=list)
    mirror_flag: str | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "crossing_count": self.crossing_count,
                "degrees": list(self.degrees) if self.degrees else None,
                "profile": self.profile.to_json() if self.profile else None,
                "identified_as": self.identified_as, "mirror_flag": self.mirror_flag,
                "diagnostics": self.diagnostics}


def entries_checksum(entries: Sequence[dict]) -> str:
    text = json.dumps([[e["name"], e["f"], e["g"], e["h"]] for e in entries], ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _read_data(name: str) -> str:
    return resources.files("polyknot").joinpath(f"data/{name}").read_text(encoding="utf-8")


def load_overlay(path: str | Path | None = None) -> dict[str, dict]:
    text = Path(path).read_text(encoding="utf-8") if path else _read_data("catalog_overlay.json")
    return json.loads(text)["entries"]


def load_catalog(path: str | Path | None = None, overlay: bool = False,
                 include_fixture: bool = False) -> list[CatalogEntry]:
    text = Path(path).read_text(encoding="utf-8") if path else _read_data("catalog.json")
    data = json.loads(text)
    rows = data["entries"]
    stored = data.get("sha256")
    if stored and stored != entries_checksum(rows):
        raise PolyknotError("catalog transcription checksum mismatch")
    fixes = load_overlay() if overlay else {}
    out = []
    for r in rows:
        e = CatalogEntry(r["name"], r["f"], r["g"], r["h"], data.get("source", "section5"))
        fix = fixes.get(r["name"])
        if fix:
            changed = tuple(k for k in ("f", "g", "h") if k in fix)
            e = replace(e, corrected=changed, note=fix.get("note", ""),
                        **{k: fix[k] for k in changed})
        out.append(e)
    if include_fixture:
        out.append(CatalogEntry(source="section4", **SECTION4_FIXTURE))
    return out


def catalog_notes() -> dict[str, str]:
    """Transcription notes for entries with documented irregularities."""
    return {k: v.get("note", "") for k, v in load_overlay().items()}


# -- printed-precision analysis ---------------------------------------------

_LITERAL = re.compile(r"(?<![\^{\d.])(\d+\.\d*|\.\d+|\d+)")


def literal_perturbations(text: str) -> list[Poly]:
    """For each decimal literal, the change in the polynomial when the literal
    moves by half a unit in its last printed place."""
    base = parse_poly(text)
    out = []
    for m in _LITERAL.finditer(text):
        lit = m.group(1)
        before = text[:m.start()].rstrip()
        after = text[m.end():].lstrip()
        if lit == "10" and after.startswith("^") and before.endswith(("×", "*", "\\times")):
            continue  # base of a power of ten, not a measured digit string
        try:
            d = Decimal(lit)
        except InvalidOperation:  # pragma: no cover - regex guarantees a literal
            continue
        half = Decimal(1).scaleb(d.as_tuple().exponent) / 2
        alt = text[:m.start()] + str(d + half) + text[m.end():]
        try:
            out.append(parse_poly(alt) - base)
        except PolyknotError:
            continue
    return out


def height_margins(curve: PlaneCurve, h_text: str, pts=None) -> list[tuple[float, float, float, float]]:
    """(s, t, h(s) - h(t), rounding uncertainty) for every double point."""
    h = parse_poly(h_text)
    dh = literal_perturbations(h_text)
    pts = double_points(curve) if pts is None else pts
    rows = []
    for p in pts:
        gap = float(h(p.s) - h(p.t))
        unc = float(sum(abs(d(p.s) - d(p.t)) for d in dh))
        rows.append((p.s, p.t, gap, unc))
    return rows


def _flip_search(curve: PlaneCurve, h: Poly, pts, unresolved: list[int], name: str) -> list[int] | None:
    """Smallest set of unresolved crossings whose flip yields ``name``."""
    subsets = sorted((c for k in range(1, len(unresolved) + 1)
                      for c in itertools.combinations(unresolved, k)), key=len)
    for flips in subsets:
        vis = []
        for i, p in enumerate(pts):
            s_over = (h(p.s) > h(p.t)) != (i in flips)
            ot, ut = (p.tangent_s, p.tangent_t) if s_over else (p.tangent_t, p.tangent_s)
            sign = 1 if ot[0] * ut[1] - ot[1] * ut[0] > 0 else -1
            vis.append(CrossingVisit(p.s, i + 1, OVER if s_over else UNDER, sign))
            vis.append(CrossingVisit(p.t, i + 1, UNDER if s_over else OVER, sign))
        vis.sort(key=lambda v: v.param)
        try:
            names = [n for n, _ in identify(profile(diagram_from_visits(vis)))]
        except NoMatch:
            continue
        if name in names:
            return list(flips)
    return None


def verify_entry(e: CatalogEntry) -> VerificationReport:
    """Double points, regularity, lift, invariants and identification."""
    rep = VerificationReport(e.name, "error")
    if e.corrected:
        rep.diagnostics.append(f"overlay correction applied to {', '.join(e.corrected)}: {e.note}")
    notes = {} if e.corrected else _notes_safe()
    try:
        f, g, h = parse_poly(e.f), parse_poly(e.g), parse_poly(e.h)
    except PolyknotError as exc:
        rep.diagnostics.append(f"{type(exc).__name__}: {exc}")
        if e.name in notes:
            rep.diagnostics.append(f"documented irregularity: {notes[e.name]}")
        return rep
    rep.degrees = (f.degree, g.degree, h.degree)
    try:
        curve = PlaneCurve(f, g)
        pts = double_points(curve, check_transversal=False)
        val = validate_generic(curve, pts)
        rep.crossing_count = len(pts)
        if not val.valid:
            rep.status = "degenerate"
            rep.diagnostics.extend(val.violations)
            return rep
        d = lift_diagram(curve, h, pts)
        prof = profile(d)
        rep.profile = prof
        try:
            found = identify(prof)
        except NoMatch as exc:
            rep.status = "degenerate" if len(pts) == 0 or prof.is_trivial() else "mismatch"
            rep.diagnostics.append(str(exc))
            if e.name in notes:
                rep.diagnostics.append(f"documented irregularity: {notes[e.name]}")
            return rep
        rep.identified_as = [n for n, _ in found]
        flags = dict(found)
        if e.name in flags:
            rep.status = "verified"
            rep.mirror_flag = flags[e.name]
            return rep
        rep.status = "mismatch"
        rep.mirror_flag = found[0][1]
        _explain_mismatch(rep, e, curve, h, pts)
        if e.name in notes:
            rep.diagnostics.append(f"documented irregularity: {notes[e.name]}")
    except PolyknotError as exc:
        rep.status = "error"
        rep.diagnostics.append(f"{type(exc).__name__}: {exc}")
    return rep


def _notes_safe() -> dict[str, str]:
    try:
        return catalog_notes()
    except (OSError, KeyError, ValueError):
        return {}


def _explain_mismatch(rep: VerificationReport, e: CatalogEntry, curve, h, pts) -> None:
    rows = height_margins(curve, e.h, pts)
    unresolved = [i for i, (_, _, gap, unc) in enumerate(rows) if abs(gap) <= unc]
    if not unresolved:
        rep.diagnostics.append("every crossing is resolved beyond printed-coefficient rounding")
        return
    for i in unresolved:
        s, t, gap, unc = rows[i]
        rep.diagnostics.append(
            f"crossing at parameters ({s:.6g}, {t:.6g}): |h(s) - h(t)| = {abs(gap):.3g} is below "
            f"the printed-coefficient rounding uncertainty {unc:.3g}")
    if len(unresolved) <= MAX_FLIP_SEARCH:
        flips = _flip_search(curve, h, pts, unresolved, e.name)
        if flips is not None:
            where = ", ".join(f"({rows[i][0]:.6g}, {rows[i][1]:.6g})" for i in flips)
            rep.diagnostics.append(
                f"resolving the crossing(s) at {where} the other way yields {e.name}; "
                "the printed height is rounded too coarsely to fix these crossings")
            rep.status = "degenerate"


def verify_catalog(entries: Sequence[CatalogEntry] | None = None, names: Sequence[str] | None = None,
                   overlay: bool = False) -> list[VerificationReport]:
    entries = load_catalog(overlay=overlay) if entries is None else entries
    if names:
        wanted = set(names)
        entries = [e for e in entries if e.name in wanted]
    reports = [verify_entry(e) for e in entries]
    return sorted(reports, key=lambda r: _name_key(r.name))


def _name_key(name: str):
    a, _, b = name.partition("_")
    return (int(a), int(b)) if a.isdigit() and b.isdigit() else (999, 0)
