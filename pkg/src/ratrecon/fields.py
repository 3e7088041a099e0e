"""Exact field arithmetic over Q and prime fields F_p.

Rationals are plain ``fractions.Fraction`` values (always stored reduced,
denominator positive, so exact equality is structural).  Prime field elements
are immutable residue wrappers.  Elements of different fields never coerce
into each other; mixing raises FieldMismatch.  Plain ``int`` operands embed
through the canonical ring map and are always accepted.

All randomness flows through explicitly seeded ``random.Random`` streams;
``derive_rng`` builds independent child streams from (seed, path) so parallel
tasks stay reproducible.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

from .errors import FieldMismatch

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers any sane modulus)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpElement:
    """Residue in [0, p) of a fixed prime field."""

    __slots__ = ("residue", "field")

    def __init__(self, residue: int, field: "PrimeField"):
        self.residue = residue % field.p
        self.field = field

    def _other(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise FieldMismatch(
                    f"mixed prime fields F_{self.field.p} and F_{other.field.p}")
            return other.residue
        if isinstance(other, int):
            return other % self.field.p
        if isinstance(other, Fraction):
            raise FieldMismatch("cannot mix rational and prime field elements")
        return None

    def __add__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return FpElement(self.residue + r, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return FpElement(self.residue - r, self.field)

    def __rsub__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return FpElement(r - self.residue, self.field)

    def __mul__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return FpElement(self.residue * r, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        if r == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return FpElement(self.residue * pow(r, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        if self.residue == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return FpElement(r * pow(self.residue, -1, self.field.p), self.field)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0 and self.residue == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return FpElement(pow(self.residue, e, self.field.p), self.field)

    def __neg__(self):
        return FpElement(-self.residue, self.field)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.field.p == other.field.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.field.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"FpElement({self.residue}, p={self.field.p})"

    def __str__(self):
        return str(self.residue)


class Field:
    """Common surface of the two supported coefficient fields."""

    def from_int(self, k: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def element_of(self, x) -> bool:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def random_element(self, rng: random.Random, height_bound: int):
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self.one / x


class RationalField(Field):
    """The rational numbers; elements are fractions.Fraction."""

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def element_of(self, x) -> bool:
        return isinstance(x, Fraction)

    def parse(self, s: str) -> Fraction:
        return Fraction(s.strip())

    def format(self, x: Fraction) -> str:
        return str(x)

    def random_element(self, rng: random.Random, height_bound: int) -> Fraction:
        if height_bound < 1:
            raise ValueError("height_bound must be >= 1")
        return Fraction(rng.randint(-height_bound, height_bound),
                        rng.randint(1, height_bound))

    def descriptor(self) -> str:
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """F_p for prime p.  Rejects p < 5 unless allow_small is set: tiny fields
    have too few points for degree detection to mean anything."""

    def __init__(self, p: int, allow_small: bool = False):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        if p < 5 and not allow_small:
            raise ValueError(f"p = {p} rejected (too few points); pass allow_small=True")
        self.p = p

    def from_int(self, k: int) -> FpElement:
        return FpElement(k, self)

    def element_of(self, x) -> bool:
        return isinstance(x, FpElement) and x.field.p == self.p

    def parse(self, s: str) -> FpElement:
        s = s.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return self.from_int(int(a)) / self.from_int(int(b))
        return self.from_int(int(s))

    def format(self, x: FpElement) -> str:
        return str(x.residue)

    def random_element(self, rng: random.Random, height_bound: int = 0) -> FpElement:
        return FpElement(rng.randrange(self.p), self)

    def descriptor(self) -> str:
        return f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_from_string(desc: str, allow_small: bool = False) -> Field:
    """Parse a field descriptor: "q" or "fp:<p>"."""
    desc = desc.strip().lower()
    if desc == "q":
        return QQ
    if desc.startswith("fp:"):
        return PrimeField(int(desc[3:]), allow_small=allow_small)
    raise ValueError(f"bad field descriptor {desc!r} (want 'q' or 'fp:<p>')")


def random_element(field: Field, rng: random.Random, height_bound: int):
    """Draw one element; over Q uniform numerator/denominator in the height
    box (then reduced), over F_p a uniform residue."""
    return field.random_element(rng, height_bound)


def derive_rng(seed: int, *path) -> random.Random:
    """Independent child stream determined by (seed, path).  Streams derived
    with distinct paths are uncorrelated and platform-stable."""
    h = hashlib.sha256(repr((int(seed),) + tuple(path)).encode()).digest()
    return random.Random(int.from_bytes(h[:16], "big"))


def _calkin_wilf(k: int) -> Fraction:
    # k-th node (1-based, BFS order) of the Calkin-Wilf tree
    num, den = 1, 1
    for bit in bin(k)[3:]:
        if bit == "0":
            den += num
        else:
            num += den
    return Fraction(num, den)


def enumerate_countable(i: int) -> Fraction:
    """A fixed bijection N -> Q: 0 first, then for each Calkin-Wilf index the
    positive value followed by its negation."""
    if i < 0:
        raise ValueError("index must be >= 0")
    if i == 0:
        return Fraction(0)
    v = _calkin_wilf((i + 1) // 2)
    return v if i % 2 == 1 else -v
