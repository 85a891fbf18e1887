"""Dense real univariate polynomials: arithmetic, real roots, text I/O.

Coefficients are stored in ascending order, ``coeffs[k]`` multiplies ``t**k``.
The zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NoConvergence, ParseError

EPS_LEAD = 1e-12
ROOT_TOL = 1e-10
GCD_CUTOFF = 1e-8
NEWTON_BUDGET = 100


def _trim(coeffs: Iterable[float], eps: float = EPS_LEAD) -> tuple[float, ...]:
    c = [float(x) for x in coeffs]
    for x in c:
        if not math.isfinite(x):
            raise ValueError(f"non-finite coefficient {x!r}")
    # a trailing coefficient is noise only relative to the rest
    scale = max((abs(x) for x in c), default=0.0)
    while c and abs(c[-1]) <= eps * scale:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[float, ...] = ()

    def __init__(self, coeffs: Iterable[float] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def constant(cls, c: float) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: float = 1.0) -> "Poly":
        return cls([0.0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> float:
        return self.coeffs[-1] if self.coeffs else 0.0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        return poly_eval(self, t)

    def __add__(self, other: "Poly") -> "Poly":
        return poly_arith(self, _as_poly(other), "add")

    __radd__ = __add__

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_arith(self, _as_poly(other), "sub")

    def __rsub__(self, other) -> "Poly":
        return poly_arith(_as_poly(other), self, "sub")

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_arith(self, _as_poly(other), "mul")

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly([1.0])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Poly":
        return poly_derivative(self)

    def compose_neg(self) -> "Poly":
        """p(-t)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def scaled(self, c: float) -> "Poly":
        return Poly([c * x for x in self.coeffs])

    def __str__(self) -> str:
        return print_poly(self)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([float(x)])


def poly_eval(p: Poly, t):
    """Horner evaluation; works for floats, numpy arrays and Fractions."""
    c = p.coeffs
    if not c:
        return 0.0 * t
    acc = c[-1] + 0.0 * t
    for a in reversed(c[:-1]):
        acc = acc * t + a
    return acc


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    ca, cb = a.coeffs, b.coeffs
    if op in ("add", "sub"):
        sgn = 1.0 if op == "add" else -1.0
        n = max(len(ca), len(cb))
        out = [0.0] * n
        for i, x in enumerate(ca):
            out[i] += x
        for i, x in enumerate(cb):
            out[i] += sgn * x
        return Poly(out)
    if op == "mul":
        if not ca or not cb:
            return Poly()
        out = [0.0] * (len(ca) + len(cb) - 1)
        for i, x in enumerate(ca):
            if x == 0.0:
                continue
            for j, y in enumerate(cb):
                out[i + j] += x * y
        return Poly(out)
    raise ValueError(f"unknown op {op!r}")


def poly_derivative(a: Poly) -> Poly:
    return Poly([k * c for k, c in enumerate(a.coeffs)][1:])


def poly_from_roots(roots: Sequence[float], lead: float = 1.0) -> Poly:
    """lead * prod(t - r).

    Expanded in exact rational arithmetic and rounded once, so the result does
    not depend on the order of ``roots``.
    """
    if lead == 0:
        raise ValueError("lead must be nonzero")
    acc = [Fraction(lead)]
    for r in roots:
        r = Fraction(r)
        nxt = [Fraction(0)] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i + 1] += c
            nxt[i] -= r * c
        acc = nxt
    return Poly([float(c) for c in acc])


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a.coeffs)
    db = b.degree
    if len(r) - 1 < db:
        return Poly(), a
    q = [0.0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / b.lead
        q[k - db] = c
        for j, y in enumerate(b.coeffs):
            r[k - db + j] -= c * y
        r[k] = 0.0
    return Poly(q), Poly(r[:db])


# ---------------------------------------------------------------------------
# real roots


@dataclass(frozen=True)
class RealRootList:
    roots: tuple[tuple[float, int], ...]
    tolerance: float

    @property
    def values(self) -> list[float]:
        return [r for r, _ in self.roots]

    def __len__(self) -> int:
        return len(self.roots)


def _norm_inf(c: Sequence[float]) -> float:
    return max((abs(x) for x in c), default=0.0)


def _approx_gcd(a: Poly, b: Poly, cutoff: float = GCD_CUTOFF) -> Poly:
    """Coefficient-tolerant Euclid; returns a monic gcd (degree 0 if coprime)."""
    if b.is_zero():
        return a
    x = a.scaled(1.0 / _norm_inf(a.coeffs))
    y = b.scaled(1.0 / _norm_inf(b.coeffs))
    while True:
        _, r = poly_divmod(x, y)
        if r.is_zero() or _norm_inf(r.coeffs) <= cutoff * _norm_inf(x.coeffs):
            break
        x, y = y, r.scaled(1.0 / _norm_inf(r.coeffs))
        if y.degree == 0:
            return Poly([1.0])
    g = y.scaled(1.0 / y.lead)
    if g.degree <= 0:
        return Poly([1.0])
    # reject a spurious common factor: it must divide both inputs
    for p in (a, b):
        _, rem = poly_divmod(p, g)
        if _norm_inf(rem.coeffs) > 1e3 * cutoff * _norm_inf(p.coeffs):
            return Poly([1.0])
    return g


def _sturm_chain(p: Sequence[Fraction]) -> list[list[Fraction]]:
    def rem(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1] / b[-1]
            s = len(a) - len(b)
            for j, y in enumerate(b):
                a[s + j] -= c * y
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        return a

    dp = [k * c for k, c in enumerate(p)][1:]
    chain = [list(p), dp]
    while len(chain[-1]) > 1:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        # normalise to keep rational sizes in check; sign must stay negated
        m = max(abs(x) for x in r)
        chain.append([-x / m for x in r])
    return chain


def _eval_exact(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for c in chain:
        v = _eval_exact(c, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _isolate(chain, lo: Fraction, hi: Fraction, min_width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Intervals (lo, hi] each holding exactly one root of chain[0]."""
    out = []
    stack = [(lo, hi, _sign_changes(chain, lo), _sign_changes(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n <= 0:
            continue
        if n == 1 or b - a < min_width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        # nudge off exact roots so sign counts are defined
        while _eval_exact(chain[0], m) == 0:
            m += (b - a) / 1024
        vm = _sign_changes(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def _polish(p: Poly, dp: Poly, a: float, b: float, tol: float) -> float:
    """Safeguarded Newton inside a sign-change bracket [a, b]."""
    fa, fb = p(a), p(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    x = 0.5 * (a + b)
    scale = _local_scale(p, x)
    for _ in range(NEWTON_BUDGET):
        fx = p(x)
        if abs(fx) <= tol * scale and b - a < 1e-6:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        d = dp(x)
        step_ok = False
        if d != 0:
            xn = x - fx / d
            if a < xn < b:
                step_ok = abs(xn - x) < 0.5 * (b - a) or b - a < 1e-12
                if step_ok:
                    if xn == x:
                        return x
                    x = xn
        if not step_ok:
            x = 0.5 * (a + b)
        if b - a <= 4 * math.ulp(max(abs(a), abs(b), 1.0)):
            return x
    if abs(p(x)) <= tol * scale:
        return x
    raise NoConvergence(f"root polishing did not converge near {x!r}")


def _local_scale(p: Poly, x: float) -> float:
    return max(1.0, max(abs(p(x + d)) for d in (-1.0, -0.5, 0.0, 0.5, 1.0)))


def real_roots(p: Poly, tol: float = ROOT_TOL) -> RealRootList:
    """All real roots of p with multiplicities.

    Roots of the squarefree part are isolated with an exact Sturm sequence on
    the (exactly converted) float coefficients, then polished by safeguarded
    Newton iteration.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    found: list[tuple[float, int]] = []
    coeffs = list(p.coeffs)
    zero_mult = 0
    while coeffs and coeffs[0] == 0.0:
        coeffs.pop(0)
        zero_mult += 1
    work = Poly(coeffs)
    if zero_mult:
        found.append((0.0, zero_mult))
    if work.degree >= 1:
        gcd_chain = []
        g = _approx_gcd(work, work.derivative())
        sqf = work
        if g.degree > 0:
            sqf, _ = poly_divmod(work, g)
            gcd_chain.append(g)
            while g.degree > 0:
                g = _approx_gcd(g, g.derivative())
                if g.degree > 0:
                    gcd_chain.append(g)
        exact = [Fraction(c) for c in sqf.coeffs]
        chain = _sturm_chain(exact)
        bound = 1.0 + max(abs(c / sqf.lead) for c in sqf.coeffs[:-1])
        B = Fraction(bound) + 1
        intervals = _isolate(chain, -B, B, Fraction(1, 2**60))
        dsq = sqf.derivative()
        for a, b in intervals:
            x = _polish(sqf, dsq, float(a), float(b), tol)
            scale = max(abs(sqf.lead), 1.0)
            mult = 1
            for gi in gcd_chain:
                if abs(gi(x)) <= 1e-6 * max(1.0, _norm_inf(gi.coeffs)) * scale:
                    mult += 1
            found.append((x, mult))
    found.sort()
    merged: list[tuple[float, int]] = []
    for x, m in found:
        if merged and x - merged[-1][0] <= 2 * tol:
            px, pm = merged[-1]
            merged[-1] = (px, pm + m)
        else:
            merged.append((x, m))
    for x, _ in merged:
        if abs(p(x)) > max(tol * _local_scale(p, x), 1e-6 * _local_scale(p, x)):
            raise NoConvergence(f"residual too large at root {x!r}")
    return RealRootList(tuple(merged), tol)


# ---------------------------------------------------------------------------
# text grammar
#
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (('*'|'×'|'/')? factor)*        division by constants only
#   factor := primary ('^' (integer | '{' integer '}'))*
#   primary:= number | 't' | '(' expr ')'

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\\\s|\\,)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<times>\\times|×|\*|·)
  | (?P<op>[-+/^(){}])
  | (?P<var>t)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos,
                             ("number", "t", "+", "-", "*", "(", ")", "^"))
        kind = m.lastgroup
        if kind != "ws":
            val = m.group(kind)
            if kind == "op":
                kind = val
            elif kind == "times":
                kind = "*"
            tokens.append((kind, val, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    _STARTS = ("number", "var", "(")

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, *kinds):
        kind, val, pos = self.toks[self.i]
        if kinds and kind not in kinds:
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"unexpected {what}", pos, kinds)
        self.i += 1
        return kind, val, pos

    def parse(self) -> Poly:
        if self.peek() == "end":
            raise ParseError("empty expression", 0, ("number", "t", "("))
        p = self.expr()
        self.take("end")
        return p

    def expr(self) -> Poly:
        sign = 1.0
        if self.peek() in ("+", "-"):
            sign = -1.0 if self.take()[0] == "-" else 1.0
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            k = self.peek()
            if k == "*":
                self.take()
                acc = acc * self.factor()
            elif k == "/":
                _, _, pos = self.take()
                d = self.factor()
                if d.degree != 0:
                    raise ParseError("division by a non-constant", pos, ("number",))
                acc = acc.scaled(1.0 / d.lead)
            elif k in self._STARTS:
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.primary()
        while self.peek() == "^":
            self.take()
            if self.peek() == "{":
                self.take()
                _, val, pos = self.take("number")
                self.take("}")
            else:
                _, val, pos = self.take("number")
            if not val.isdigit():
                raise ParseError("exponent must be a non-negative integer", pos, ("integer",))
            base = base ** int(val)
        return base

    def primary(self) -> Poly:
        kind, val, pos = self.toks[self.i]
        if kind == "number":
            self.i += 1
            x = float(val)
            return Poly([x]) if x != 0 else Poly()
        if kind == "var":
            self.i += 1
            return Poly([0.0, 1.0])
        if kind == "(":
            self.i += 1
            p = self.expr()
            self.take(")")
            return p
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos, ("number", "t", "("))


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in t.

    Accepts products of factors, powers (``t^3`` or ``t^{10}``), implicit
    multiplication (``16t``, ``t(t - 1)``), ``*``, ``×`` or ``\\times``, and
    division by a constant (``-1/1000(t + 3)``).
    """
    return _Parser(text).parse()


def print_poly(p: Poly) -> str:
    """Shortest round-trip text form, highest degree first."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0.0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = repr(mag)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if mag == 1.0 else f"{mag!r}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
