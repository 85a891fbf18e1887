"""Command line interface: ``polyknot <command> ...``.

Exit codes: 0 success, 1 domain error (or a catalog entry that does not
verify), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import app
from .braid import as_quasitoric, degree_sequence_bound, parse_braid
from .catalog import load_catalog, verify_catalog
from .errors import ParseError, PolyknotError
from .invariants import profile
from .lift import construct_polyknot

GRAMMAR = """\
polynomial grammar (variable t):
  expr    := ['+'|'-'] term (('+'|'-') term)*
  term    := factor (['*' | '×' | '\\times' | '/'] factor)*   (division by constants only)
  factor  := primary ('^' integer | '^{' integer '}')*
  primary := number | t | '(' expr ')'
  example: "t(t^2 - 6.431)(t^2 - 15.91)" or "t^3 - 17.0275 × t"
braid grammar:
  [p=<strands>;] letters separated by spaces, letter := s<k> | s<k>^-1
  example: "p=3; s1^-1 s2 s1 s2^-1"
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR}")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polyknot", description="Polynomial knots: construction, analysis, catalog.",
                 epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="polynomial knot for a quasitoric braid word")
    c.add_argument("braid")
    c.add_argument("-o", "--output", help="write the knot JSON here")
    c.add_argument("--degree-slack", type=int, default=None,
                   help="extra deg g allowed when no template of degree q + r0 is known")

    for name, text in (("analyze", "crossings, invariants and identification of a triple"),
                       ("invariants", "Alexander and Jones polynomials of a triple")):
        s = sub.add_parser(name, help=text)
        s.add_argument("f")
        s.add_argument("g")
        s.add_argument("h")

    v = sub.add_parser("verify-catalog", help="verify the shipped parametrizations")
    v.add_argument("names", nargs="*")
    v.add_argument("--overlay", action="store_true", help="apply annotated transcription fixes")
    v.add_argument("--catalog", help="alternative catalog file")

    d = sub.add_parser("degree-bound", help="degree sequence bound for a quasitoric (p, q) knot")
    d.add_argument("p", type=int)
    d.add_argument("q", type=int)
    d.add_argument("r", type=int)

    e = sub.add_parser("export", help="sample a knot JSON file as csv, json or obj")
    e.add_argument("knot")
    e.add_argument("--points", type=int, default=1000)
    e.add_argument("--format", choices=app.EXPORT_FORMATS, default="csv")
    e.add_argument("--range", nargs=2, type=float, metavar=("T0", "T1"))
    e.add_argument("-o", "--output")
    return ap


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data, indent=2) if args.json else text)


def _cmd_construct(args) -> int:
    pat = as_quasitoric(parse_braid(args.braid))
    kw = {} if args.degree_slack is None else {"degree_slack": args.degree_slack}
    k, rep = construct_polyknot(pat, return_report=True, **kw)
    data = {**k.to_json(), "bound": str(rep.bound), "r0": rep.bound.r0,
            "sign_variations": rep.n_variations, "crossings": len(k.points),
            "profile": profile(k.diagram).to_json()}
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=2)
    lines = [f"f = {data['f']}", f"g = {data['g']}", f"h = {data['h']}",
             f"degrees {tuple(data['degrees'])}, bound {data['bound']}, r0={rep.bound.r0}, "
             f"{rep.n_variations} sign variations, {len(k.points)} crossings"]
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_analyze(args) -> int:
    res = app.analyze(args.f, args.g, args.h)
    if not res["regular"]:
        text = f"{res['crossings']} crossings; not a regular projection: " + "; ".join(res["violations"])
    elif res["identified_as"]:
        names = ", ".join(f"{m['name']} ({m['chirality']})" for m in res["identified_as"])
        text = f"{res['crossings']} crossings, degrees {tuple(res['degrees'])}: {names}"
    else:
        text = f"{res['crossings']} crossings, degrees {tuple(res['degrees'])}: {res.get('note', '')}"
    _emit(args, res, text)
    return 0 if res["regular"] else 1


def _cmd_invariants(args) -> int:
    res = app.analyze(args.f, args.g, args.h)
    if not res["regular"]:
        _emit(args, res, "not a regular projection: " + "; ".join(res["violations"]))
        return 1
    p = res["profile"]
    from .invariants import LaurentPoly
    text = (f"Alexander: {LaurentPoly.from_pairs(p['alexander'])}\n"
            f"Jones: {LaurentPoly.from_pairs(p['jones'], var='q')}\n"
            f"determinant: {p['determinant']}")
    _emit(args, p, text)
    return 0


def _cmd_verify(args) -> int:
    entries = load_catalog(args.catalog, overlay=args.overlay)
    known = {e.name for e in entries}
    unknown = [n for n in args.names if n not in known]
    if unknown:
        raise PolyknotError(f"no catalog entry named {', '.join(unknown)}")
    reports = verify_catalog(entries, names=args.names or None)
    lines = []
    for r in reports:
        lines.append(f"{r.name:6s} {r.status:10s} crossings={r.crossing_count} "
                     f"degrees={r.degrees} identified={','.join(r.identified_as) or '-'}")
        lines.extend(f"       {d}" for d in r.diagnostics)
    ok = sum(r.verified for r in reports)
    lines.append(f"{ok}/{len(reports)} verified")
    _emit(args, {"reports": [r.to_json() for r in reports], "verified": ok, "total": len(reports)},
          "\n".join(lines))
    return 0 if ok == len(reports) else 1


def _cmd_bound(args) -> int:
    b = degree_sequence_bound(args.p, args.q, args.r)
    _emit(args, {"l": b.l, "m": b.m, "n_max": b.n, "r0": b.r0}, f"{b}, r0={b.r0}")
    return 0


def _cmd_export(args) -> int:
    k = app.load_knot(args.knot)
    out = args.output or f"{args.knot.rsplit('.', 1)[0]}.{args.format}"
    path = app.export_samples(k, args.points, out, args.range, args.format)
    _emit(args, {"path": str(path), "points": args.points, "format": args.format},
          f"wrote {args.points} samples to {path}")
    return 0


COMMANDS = {"construct": _cmd_construct, "analyze": _cmd_analyze, "invariants": _cmd_invariants,
            "verify-catalog": _cmd_verify, "degree-bound": _cmd_bound, "export": _cmd_export}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n\n{GRAMMAR}")
        return 2
    except (PolyknotError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
