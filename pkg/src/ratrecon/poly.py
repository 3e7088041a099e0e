"""Dense univariate and sparse multivariate polynomials over an exact field.

Poly1 stores coefficients by ascending power with trailing zeros stripped;
the zero polynomial has an empty list and degree NEG_INF.  PolyN maps
exponent vectors to nonzero coefficients.  Both are immutable in practice:
no operation mutates its arguments.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import FieldMismatch
from .fields import Field, QQ

NEG_INF = float("-inf")


def _same_field(a: "Poly1 | PolyN", b: "Poly1 | PolyN"):
    if a.field != b.field:
        raise FieldMismatch("polynomials over different fields")


class Poly1:
    """Dense univariate polynomial."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        zero = field.zero
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def from_ints(cls, field: Field, ints) -> "Poly1":
        return cls(field, [field.from_int(k) for k in ints])

    @classmethod
    def zero(cls, field: Field) -> "Poly1":
        return cls(field, [])

    @classmethod
    def x(cls, field: Field) -> "Poly1":
        return cls(field, [field.zero, field.one])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other):
        _same_field(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        _same_field(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return Poly1(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            return self.scale(other)
        _same_field(self, other)
        if self.is_zero() or other.is_zero():
            return Poly1.zero(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly1(self.field, out)

    def scale(self, c) -> "Poly1":
        return Poly1(self.field, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "Poly1":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly1(self.field, [self.field.zero] * k + self.coeffs)

    def __pow__(self, e: int):
        out = Poly1(self.field, [self.field.one])
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def divmod(self, other: "Poly1"):
        _same_field(self, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = self.field.inv(other.leading())
        q = [self.field.zero] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == self.field.zero:
                continue
            f = c * lead_inv
            q[i - d] = f
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = rem[i - d + j] - f * b
        return Poly1(self.field, q), Poly1(self.field, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def eval(self, a):
        """Horner evaluation."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def derivative(self) -> "Poly1":
        return Poly1(self.field,
                     [c * self.field.from_int(i) for i, c in enumerate(self.coeffs)][1:])

    def to_polyn(self, nvars: int, var: int = 0) -> "PolyN":
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                e = [0] * nvars
                e[var] = i
                terms[tuple(e)] = c
        return PolyN(self.field, nvars, terms)

    def __repr__(self):
        return f"Poly1({self.coeffs!r})"


def eval_poly(p: Poly1, a):
    return p.eval(a)


def gcd_poly1(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd.  Over Q the computation runs on integer-primitive images
    with integer content bookkeeping, which avoids the coefficient blowup of
    naive fraction Euclid."""
    _same_field(a, b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.field == QQ:
        return _gcd_q(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _int_primitive(p: Poly1):
    """Scale a Q-polynomial to integer coefficients with content 1."""
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _gcd_q(a: Poly1, b: Poly1) -> Poly1:
    fa, fb = _int_primitive(a), _int_primitive(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        # pseudo-remainder keeps everything in Z
        da, db = len(fa) - 1, len(fb) - 1
        lead = fb[-1]
        rem = [c * lead ** (da - db + 1) for c in fa]
        for i in range(da, db - 1, -1):
            c = rem[i]
            if c:
                f, r = divmod(c, fb[-1])
                assert r == 0
                for j in range(db + 1):
                    rem[i - db + j] -= f * fb[j]
        while rem and rem[-1] == 0:
            rem.pop()
        g = 0
        for v in rem:
            g = math.gcd(g, v)
        if g > 1:
            rem = [v // g for v in rem]
        fa, fb = fb, rem
    return Poly1(QQ, [Fraction(c) for c in fa]).monic()


class PolyN:
    """Sparse multivariate polynomial: exponent vector -> nonzero coefficient."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms):
        zero = field.zero
        self.field = field
        self.nvars = nvars
        self.terms = {tuple(e): c for e, c in dict(terms).items() if c != zero}
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError("exponent vector length != nvars")

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "PolyN":
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field: Field, nvars: int, c) -> "PolyN":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "PolyN":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(v == 0 for v in e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, var: int):
        return max((e[var] for e in self.terms), default=NEG_INF)

    def __eq__(self, other):
        if not isinstance(other, PolyN):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        _same_field(self, other)
        zero = self.field.zero
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, zero) + c
        return PolyN(self.field, self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyN(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyN):
            return self.scale(other)
        _same_field(self, other)
        zero = self.field.zero
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, zero) + c1 * c2
        return PolyN(self.field, self.nvars, out)

    def scale(self, c) -> "PolyN":
        return PolyN(self.field, self.nvars, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exp, c) -> "PolyN":
        return PolyN(self.field, self.nvars,
                     {tuple(a + b for a, b in zip(e, exp)): v * c
                      for e, v in self.terms.items()})

    def __pow__(self, e: int):
        out = PolyN.const(self.field, self.nvars, self.field.one)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def eval(self, point):
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        acc = self.field.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v ** k
            acc = acc + t
        return acc

    def substitute(self, var: int, value) -> "PolyN":
        """Replace one variable by a field constant; result keeps nvars with
        exponent 0 in that slot."""
        zero = self.field.zero
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            ne = list(e)
            ne[var] = 0
            v = c * value ** k if k else c
            ne = tuple(ne)
            out[ne] = out.get(ne, zero) + v
        return PolyN(self.field, self.nvars, out)

    def lex_leading(self):
        """(exponent, coefficient) of the lex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial")
        e = max(self.terms)
        return e, self.terms[e]

    def pad_vars(self, nvars: int) -> "PolyN":
        """Reinterpret in a larger variable ring; new trailing slots get 0."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink variable count")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return PolyN(self.field, nvars, {e + pad: c for e, c in self.terms.items()})

    def coeffs_in(self, var: int) -> dict:
        """View as a polynomial in one variable: degree -> PolyN coefficient
        (exponent slot for var zeroed)."""
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            ne = list(e)
            ne[var] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        return {k: PolyN(self.field, self.nvars, t) for k, t in buckets.items()}

    def to_poly1(self, var: int = 0) -> Poly1:
        """Collapse to univariate; every other variable must be absent."""
        coeffs = [self.field.zero] * (int(self.degree_in(var)) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            if any(k != 0 for i, k in enumerate(e) if i != var):
                raise ValueError("polynomial involves other variables")
            coeffs[e[var]] = c
        return Poly1(self.field, coeffs)

    def divides_exactly(self, divisor: "PolyN"):
        """Return self / divisor when the division is exact, else None."""
        _same_field(self, divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return PolyN.zero(self.field, self.nvars)
        if divisor.is_constant():
            return self.scale(self.field.inv(divisor.constant_value()))
        rem = dict(self.terms)
        de, dc = divisor.lex_leading()
        dc_inv = self.field.inv(dc)
        zero = self.field.zero
        out = {}
        while rem:
            e = max(rem)
            c = rem[e]
            ne = tuple(a - b for a, b in zip(e, de))
            if any(v < 0 for v in ne):
                return None
            f = c * dc_inv
            out[ne] = f
            for e2, c2 in divisor.terms.items():
                t = tuple(a + b for a, b in zip(ne, e2))
                nv = rem.get(t, zero) - f * c2
                if nv == zero:
                    rem.pop(t, None)
                else:
                    rem[t] = nv
        return PolyN(self.field, self.nvars, out)

    def __repr__(self):
        return f"PolyN(nvars={self.nvars}, {self.terms!r})"


def _active_vars(f: PolyN, g: PolyN):
    seen = set()
    for p in (f, g):
        for e in p.terms:
            for i, k in enumerate(e):
                if k:
                    seen.add(i)
    return sorted(seen)


def _gcd_univariate_image(f: PolyN, g: PolyN, var: int) -> PolyN:
    a = Poly1(f.field, [f.coeffs_in(var).get(k, PolyN.zero(f.field, f.nvars)).constant_value()
                        for k in range(int(f.degree_in(var)) + 1)])
    b = Poly1(g.field, [g.coeffs_in(var).get(k, PolyN.zero(g.field, g.nvars)).constant_value()
                        for k in range(int(g.degree_in(var)) + 1)])
    return gcd_poly1(a, b).to_polyn(f.nvars, var)


def _content_in(f: PolyN, var: int) -> PolyN:
    """Gcd of the coefficients of f viewed in `var` (a PolyN without var)."""
    cs = list(f.coeffs_in(var).values())
    g = cs[0]
    for c in cs[1:]:
        if g.is_constant() and not g.is_zero():
            break
        g = gcd_polyn(g, c)
    return g


def _coprime_by_image(f: PolyN, g: PolyN, var: int) -> bool:
    """Sound certificate: specialize every variable except `var` at points
    where both leading coefficients in `var` survive; coprime univariate
    images then force gcd degree 0 in `var`."""
    others = [i for i in _active_vars(f, g) if i != var]
    fl = f.coeffs_in(var)[int(f.degree_in(var))]
    gl = g.coeffs_in(var)[int(g.degree_in(var))]
    from .fields import derive_rng, random_element
    for attempt in range(8):
        rng = derive_rng(0xC09, var, attempt, f.total_degree(), g.total_degree())
        point = {i: random_element(f.field, rng, 1000) for i in others}
        fi, gi, fli, gli = f, g, fl, gl
        for i, v in point.items():
            fi, gi = fi.substitute(i, v), gi.substitute(i, v)
            fli, gli = fli.substitute(i, v), gli.substitute(i, v)
        if fli.is_zero() or gli.is_zero():
            continue
        img = _gcd_univariate_image(fi, gi, var)
        if int(img.degree_in(var)) == 0:
            return True
        return False
    return False


def gcd_polyn(f: PolyN, g: PolyN) -> PolyN:
    """Multivariate gcd by recursive content / primitive-part computation
    (primitive PRS in the highest active variable), with a fast evaluation
    certificate for the coprime case.  Result is canonical: constant gcds
    come back as 1."""
    _same_field(f, g)
    one = PolyN.const(f.field, f.nvars, f.field.one)
    if f.is_zero() and g.is_zero():
        return PolyN.zero(f.field, f.nvars)
    if f.is_zero():
        return _canonical_gcd(g)
    if g.is_zero():
        return _canonical_gcd(f)
    if f.is_constant() or g.is_constant():
        return one
    av = _active_vars(f, g)
    if len(av) == 1:
        v = av[0]
        return _gcd_univariate_image(f, g, v)
    var = av[-1]
    if int(f.degree_in(var)) == 0 or int(g.degree_in(var)) == 0:
        # var absent from one side: gcd divides that side's content picture
        fv = f if int(f.degree_in(var)) == 0 else _content_in(f, var)
        gv = g if int(g.degree_in(var)) == 0 else _content_in(g, var)
        return gcd_polyn(fv, gv)
    cf, cg = _content_in(f, var), _content_in(g, var)
    cont = gcd_polyn(cf, cg)
    pf = f.divides_exactly(cf)
    pg = g.divides_exactly(cg)
    assert pf is not None and pg is not None
    if _coprime_by_image(pf, pg, var):
        pp = one
    else:
        pp = _primitive_prs_gcd(pf, pg, var)
    return _canonical_gcd(cont * pp)


def _canonical_gcd(h: PolyN) -> PolyN:
    if h.is_zero():
        return h
    if h.is_constant():
        return PolyN.const(h.field, h.nvars, h.field.one)
    _, lc = h.lex_leading()
    return h.scale(h.field.inv(lc))


def _primitive_prs_gcd(f: PolyN, g: PolyN, var: int) -> PolyN:
    """Primitive pseudo-remainder sequence in `var`; inputs primitive."""
    if int(f.degree_in(var)) < int(g.degree_in(var)):
        f, g = g, f
    while True:
        if g.is_zero():
            return _canonical_gcd(f)
        if int(g.degree_in(var)) == 0:
            return PolyN.const(f.field, f.nvars, f.field.one)
        r = _pseudo_rem(f, g, var)
        if r.is_zero():
            cr = _content_in(g, var)
            return _canonical_gcd(g.divides_exactly(cr))
        cr = _content_in(r, var)
        r = r.divides_exactly(cr)
        f, g = g, r


def _pseudo_rem(f: PolyN, g: PolyN, var: int) -> PolyN:
    dg = int(g.degree_in(var))
    glead = g.coeffs_in(var)[dg]
    r = f
    while not r.is_zero() and int(r.degree_in(var)) >= dg:
        dr = int(r.degree_in(var))
        rl = r.coeffs_in(var)[dr]
        shift = [0] * f.nvars
        shift[var] = dr - dg
        r = r * glead - g.mul_monomial(tuple(shift), f.field.one) * rl
    return r
