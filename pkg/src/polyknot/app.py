"""User-facing operations behind the command line: analysis of a triple and
sampled curve export."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .diagram import lift_diagram
from .errors import NoMatch, PolyknotError
from .invariants import identify, profile
from .lift import PolyKnot
from .nodal import PlaneCurve, double_points, validate_generic
from .polycore import Poly, parse_poly

EXPORT_FORMATS = ("csv", "json", "obj")
SIG_DIGITS = 9


def analyze(f_text: str, g_text: str, h_text: str) -> dict:
    """Crossings, degrees, invariants and table matches of a polynomial triple."""
    f, g, h = parse_poly(f_text), parse_poly(g_text), parse_poly(h_text)
    out: dict = {"degrees": [f.degree, g.degree, h.degree]}
    curve = PlaneCurve(f, g)
    pts = double_points(curve, check_transversal=False)
    val = validate_generic(curve, pts)
    out["crossings"] = len(pts)
    out["regular"] = val.valid
    out["violations"] = val.violations
    if not val.valid:
        return out
    d = lift_diagram(curve, h, pts)
    prof = profile(d)
    out["profile"] = prof.to_json()
    out["gauss"] = d.gauss
    try:
        out["identified_as"] = [{"name": n, "chirality": c} for n, c in identify(prof)]
    except NoMatch as exc:
        out["identified_as"] = []
        out["note"] = str(exc)
        if prof.is_trivial():
            out["unknot_candidate"] = True
    return out


def knot_from_triple(f: Poly, g: Poly, h: Poly) -> PolyKnot:
    curve = PlaneCurve(f, g)
    pts = tuple(double_points(curve))
    return PolyKnot(f, g, h, lift_diagram(curve, h, pts), pts)


def default_range(k: PolyKnot) -> tuple[float, float]:
    params = [p.s for p in k.points] + [p.t for p in k.points]
    if not params:
        return (-2.0, 2.0)
    return (min(params) - 1.0, max(params) + 1.0)


def sample(k: PolyKnot, npoints: int, t_range=None) -> np.ndarray:
    """Rows (t, x, y, z) at ``npoints`` uniformly spaced parameters."""
    if npoints < 2:
        raise ValueError("npoints must be at least 2")
    t0, t1 = default_range(k) if t_range is None else t_range
    if not t1 > t0:
        raise ValueError("empty parameter range")
    t = np.linspace(t0, t1, npoints)
    return np.column_stack([t, k.f(t), k.g(t), k.h(t)])


def _fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def export_samples(k: PolyKnot, npoints: int, path, t_range=None, fmt: str = "csv") -> Path:
    if fmt not in EXPORT_FORMATS:
        raise ValueError(f"format must be one of {', '.join(EXPORT_FORMATS)}")
    rows = sample(k, npoints, t_range)
    path = Path(path)
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "x", "y", "z"])
            w.writerows([[_fmt(v) for v in r] for r in rows])
    elif fmt == "json":
        data = {"columns": ["t", "x", "y", "z"], **k.to_json(),
                "samples": [[float(_fmt(v)) for v in r] for r in rows]}
        path.write_text(json.dumps(data))
    else:
        lines = [f"v {_fmt(r[1])} {_fmt(r[2])} {_fmt(r[3])}" for r in rows]
        lines.append("l " + " ".join(str(i + 1) for i in range(len(rows))))
        path.write_text("\n".join(lines) + "\n")
    return path


def load_knot(path) -> PolyKnot:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PolyknotError(f"{path}: not JSON ({exc.msg})") from exc
    if not all(k in data for k in ("f", "g", "h")):
        raise PolyknotError(f"{path}: expected keys f, g, h")
    return PolyKnot.from_json(data)
