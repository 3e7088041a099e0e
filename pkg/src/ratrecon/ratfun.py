"""Canonical rational functions, univariate and multivariate.

RatFun1 keeps num/den coprime with a monic denominator.  RatFunN is
content-normalized: over Q both parts are integer with joint content 1 and
the denominator's lex-leading coefficient positive; over F_p that leading
coefficient is 1.  When multivariate gcd extraction cannot certify
coprimality the pair is kept uncancelled and flagged; equality testing then
falls back to cross-multiplication, which is always sound.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UndefinedAt, ZeroDenominator, ZeroFunction
from .fields import Field, QQ
from .poly import Poly1, PolyN, gcd_poly1, gcd_polyn


class RatFun1:
    """Univariate rational function in lowest terms, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly1, den: Poly1):
        # trusted constructor; use normalize_ratfun1 for raw pairs
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def eval(self, a):
        d = self.den.eval(a)
        if d == self.field.zero:
            raise UndefinedAt(a)
        return self.num.eval(a) / d

    def defined_at(self, a) -> bool:
        return self.den.eval(a) != self.field.zero

    def __eq__(self, other):
        if not isinstance(other, RatFun1):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun1({format_ratfun1(self)})"

    def to_ratfunn(self, nvars: int = 1, var: int = 0) -> "RatFunN":
        return normalize_ratfunn(self.num.to_polyn(nvars, var),
                                 self.den.to_polyn(nvars, var))


def normalize_ratfun1(num: Poly1, den: Poly1) -> RatFun1:
    """Cancel the gcd and scale the denominator monic."""
    if den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    field = num.field
    if num.is_zero():
        return RatFun1(Poly1.zero(field), Poly1(field, [field.one]))
    g = gcd_poly1(num, den)
    if int(g.degree) > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    inv = field.inv(den.leading())
    return RatFun1(num.scale(inv), den.scale(inv))


def degree_and_ord(f: RatFun1):
    """(mapping degree, order at infinity) of a nonzero canonical function.

    ord_inf is deg num - deg den, the convention under which
    n = deg f + min(0, ord) = deg num and m = deg f - max(0, ord) = deg den.
    """
    if f.is_zero():
        raise ZeroFunction("degree data of the zero function")
    dn, dd = int(f.num.degree), int(f.den.degree)
    return max(dn, dd), dn - dd


class RatFunN:
    """Multivariate rational function; see module docstring for the canonical
    form.  `coprime` records whether gcd extraction certified the pair."""

    __slots__ = ("num", "den", "coprime")

    def __init__(self, num: PolyN, den: PolyN, coprime: bool):
        self.num = num
        self.den = den
        self.coprime = coprime

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def eval(self, point):
        d = self.den.eval(point)
        if d == self.field.zero:
            raise UndefinedAt(tuple(point))
        return self.num.eval(point) / d

    def eval_or_none(self, point):
        d = self.den.eval(point)
        if d == self.field.zero:
            return None
        return self.num.eval(point) / d

    def defined_at(self, point) -> bool:
        return self.den.eval(point) != self.field.zero

    def same_function(self, other: "RatFunN") -> bool:
        """Cross-multiplication equality: sound regardless of coprimality."""
        if self.coprime and other.coprime:
            if self.num == other.num and self.den == other.den:
                return True
        return self.num * other.den == other.num * self.den

    def __eq__(self, other):
        if not isinstance(other, RatFunN):
            return NotImplemented
        return self.same_function(other)

    def __hash__(self):
        return hash((self.field, self.nvars))

    def __repr__(self):
        return f"RatFunN({format_ratfunn(self)})"

    def __add__(self, other):
        return normalize_ratfunn(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    def __sub__(self, other):
        return normalize_ratfunn(self.num * other.den - other.num * self.den,
                                 self.den * other.den)

    def __mul__(self, other):
        return normalize_ratfunn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero function")
        return normalize_ratfunn(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatFunN(-self.num, self.den, self.coprime)

    def slice_last(self, prefix) -> RatFun1:
        """Substitute the leading nvars-1 coordinates; returns the univariate
        function of the last variable, or raises ZeroDenominator if the
        denominator collapses to zero there."""
        num, den = self.num, self.den
        for i, v in enumerate(prefix):
            num = num.substitute(i, v)
            den = den.substitute(i, v)
        return normalize_ratfun1(num.to_poly1(self.nvars - 1),
                                 den.to_poly1(self.nvars - 1))


def normalize_ratfunn(num: PolyN, den: PolyN) -> RatFunN:
    """Cancel common factors as far as gcd extraction certifies, then scale
    to the canonical content form."""
    if den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    field = num.field
    nvars = num.nvars
    if num.is_zero():
        return RatFunN(PolyN.zero(field, nvars),
                       PolyN.const(field, nvars, field.one), True)
    g = gcd_polyn(num, den)
    coprime = True
    if not g.is_constant():
        n2, d2 = num.divides_exactly(g), den.divides_exactly(g)
        if n2 is not None and d2 is not None:
            num, den = n2, d2
        else:
            coprime = False
    num, den = _content_scale(num, den)
    return RatFunN(num, den, coprime)


def _content_scale(num: PolyN, den: PolyN):
    field = num.field
    if field == QQ:
        lcm = 1
        for c in list(num.terms.values()) + list(den.terms.values()):
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        g = 0
        for c in list(num.terms.values()) + list(den.terms.values()):
            g = math.gcd(g, int(c * lcm))
        scale = Fraction(lcm, g if g else 1)
        _, lead = den.lex_leading()
        if lead * scale < 0:
            scale = -scale
        return num.scale(scale), den.scale(scale)
    _, lead = den.lex_leading()
    inv = field.inv(lead)
    return num.scale(inv), den.scale(inv)


def eval_ratfun(f, point):
    """Evaluate RatFun1 or RatFunN; raises UndefinedAt on denominator zero
    (both parts vanishing is still UndefinedAt: no indeterminate forms)."""
    if isinstance(f, RatFun1):
        return f.eval(point)
    return f.eval(point)


def normalize_ratfun(num, den):
    """Dispatching normalizer for Poly1 or PolyN pairs."""
    if isinstance(num, Poly1):
        return normalize_ratfun1(num, den)
    return normalize_ratfunn(num, den)


# ---------------------------------------------------------------------------
# canonical text format


def default_var_names(nvars: int):
    return [f"x{i + 1}" for i in range(nvars)]


def format_polyn(p: PolyN, var_names=None) -> str:
    """Expanded form, terms in descending lex order: "x1*x2 + 1"."""
    if p.is_zero():
        return "0"
    names = var_names or default_var_names(p.nvars)
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i]
            for i, k in enumerate(e) if k)
        cs = _coeff_str(p.field, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        body = mono if (cs == "1" and mono) else (f"{cs}*{mono}" if mono else cs)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def _coeff_str(field, c) -> str:
    # prime field residues print as symmetric representatives so the text
    # form reads "x1 - x2" rather than "x1 + (p-1)*x2"
    if hasattr(c, "residue"):
        r = c.residue
        p = c.field.p
        return str(r - p) if r > p // 2 else str(r)
    return field.format(c)


def format_poly1(p: Poly1, var_name: str = "x1", ascending: bool = False) -> str:
    q = p.to_polyn(1, 0)
    if ascending:
        if p.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(p.coeffs):
            if c == p.field.zero:
                continue
            cs = _coeff_str(p.field, c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = f"{var_name}^{k}" if k > 1 else (var_name if k == 1 else "")
            body = mono if (cs == "1" and mono) else (f"{cs}*{mono}" if mono else cs)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)
    return format_polyn(q, [var_name])


def format_ratfunn(f: RatFunN, var_names=None) -> str:
    num, den = f.num, f.den
    if f.field == QQ:
        num, den = _content_scale(num, den)  # integer display form
    return f"({format_polyn(num, var_names)})/({format_polyn(den, var_names)})"


def format_ratfun1(f: RatFun1, var_name: str = "x1") -> str:
    return format_ratfunn(f.to_ratfunn(), [var_name])
