"""Hankel matrices and rationality certificates for truncated power series.

A series prefix a_0..a_N is declared rational only with a checkable witness:
a rational function whose exact re-expansion reproduces the whole prefix.
The converse direction never claims irrationality, only the absence of a
witness within the scanned (l, m) bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoSolution, PoleAtOrigin, PrefixTooShort
from .fields import Field
from .matrix import ExactMatrix, det_exact, nullspace
from .poly import Poly1
from .ratfun import RatFun1, format_poly1, format_ratfun1, normalize_ratfun1


@dataclass
class SeriesPrefix:
    """Coefficients a_0..a_N of a formal power series."""
    field: Field
    coeffs: list

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("need at least a_0")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"field": self.field.descriptor(),
                "coeffs": [self.field.format(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> "SeriesPrefix":
        from .fields import field_from_string
        f = field or field_from_string(obj["field"])
        return cls(f, [f.parse(s) for s in obj["coeffs"]])


@dataclass
class RationalityCertificate:
    verdict: str                      # "RationalWitness" | "NoWitnessUpTo"
    l: int
    m: int
    witness: RatFun1 | None
    checked_prefix_length: int

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "l": self.l,
            "m": self.m,
            "checked_prefix_length": self.checked_prefix_length,
        }
        if self.witness is not None:
            out["witness"] = format_ratfun1(self.witness, "t")
            field = self.witness.field
            scale = field.inv(self.witness.den.eval(field.zero))
            out["witness_den_at0is1"] = format_poly1(
                self.witness.den.scale(scale), "t", ascending=True)
            out["witness_num_at0is1_den"] = format_poly1(
                self.witness.num.scale(scale), "t", ascending=True)
        return out


def hankel_matrix(s: SeriesPrefix, n: int, m: int) -> ExactMatrix:
    """(m+1)x(m+1) matrix with entry (i, j) = a_{n+i+j}."""
    if n + 2 * m > s.n_max:
        raise PrefixTooShort(f"need a_0..a_{n + 2 * m}, have a_0..a_{s.n_max}")
    return ExactMatrix.from_rows(
        [[s.coeffs[n + i + j] for j in range(m + 1)] for i in range(m + 1)])


def kronecker_scan(s: SeriesPrefix, l_max: int, m_max: int):
    """All (l, m) with l <= l_max, m <= m_max whose Hankel determinants
    vanish for every n with l <= n <= N - 2m; ordered by m then l."""
    if s.n_max < l_max + 2 * m_max:
        raise PrefixTooShort(
            f"need prefix length >= {l_max + 2 * m_max + 1}, have {s.n_max + 1}")
    zero = s.field.zero
    out = []
    for m in range(m_max + 1):
        dets = [det_exact(hankel_matrix(s, n, m), s.field)
                for n in range(s.n_max - 2 * m + 1)]
        # smallest l with dets[l:] all zero
        l_min = len(dets)
        while l_min > 0 and dets[l_min - 1] == zero:
            l_min -= 1
        for l in range(l_min, l_max + 1):
            out.append((l, m))
    out.sort(key=lambda lm: (lm[1], lm[0]))
    return out


def pade_reconstruct(s: SeriesPrefix, n_deg: int, m_deg: int) -> RatFun1:
    """Solve exactly for Q (deg <= m_deg, Q(0) = 1) and P (deg <= n_deg) with
    Q * s = P mod t^(n_deg+m_deg+1)."""
    if s.n_max < n_deg + m_deg + 1:
        raise PrefixTooShort(
            f"need prefix length >= {n_deg + m_deg + 2}, have {s.n_max + 1}")
    field = s.field
    zero = field.zero
    # unknowns q_0..q_m; rows force coefficients n_deg+1..n_deg+m_deg of Q*s to 0
    rows = []
    for k in range(n_deg + 1, n_deg + m_deg + 1):
        rows.append([s.coeffs[k - j] if 0 <= k - j <= s.n_max else zero
                     for j in range(m_deg + 1)])
    basis = nullspace(rows, m_deg + 1, field)
    sol = next((v for v in basis if v[0] != zero), None)
    if sol is None:
        raise NoSolution("no denominator with Q(0) != 0 fits the prefix window")
    inv = field.inv(sol[0])
    qcoeffs = [c * inv for c in sol]
    den = Poly1(field, qcoeffs)
    # P := Q*s truncated to degree n_deg
    pcoeffs = []
    for k in range(n_deg + 1):
        acc = zero
        for j in range(min(k, m_deg) + 1):
            acc = acc + qcoeffs[j] * s.coeffs[k - j]
        pcoeffs.append(acc)
    return normalize_ratfun1(Poly1(field, pcoeffs), den)


def series_of_ratfun(f: RatFun1, n_terms: int) -> SeriesPrefix:
    """First n_terms+1 Taylor coefficients at 0 by exact series division."""
    field = f.field
    q0 = f.den.eval(field.zero)
    if q0 == field.zero:
        raise PoleAtOrigin("denominator vanishes at 0")
    inv_q0 = field.inv(q0)
    out = []
    for k in range(n_terms + 1):
        acc = f.num[k]
        for j in range(1, min(k, int(f.den.degree)) + 1):
            acc = acc - f.den[j] * out[k - j]
        out.append(acc * inv_q0)
    return SeriesPrefix(field, out)


def _matches_prefix(f: RatFun1, s: SeriesPrefix) -> bool:
    try:
        exp = series_of_ratfun(f, s.n_max)
    except PoleAtOrigin:
        return False
    return exp.coeffs == s.coeffs


def certify_rationality(s: SeriesPrefix, l_max: int, m_max: int) -> RationalityCertificate:
    """Scan Hankel candidates, attempt a witness per candidate, and accept the
    first whose exact re-expansion matches the entire prefix."""
    for (l, m) in kronecker_scan(s, l_max, m_max):
        for n_deg in range(max(l + m - 1, 0), l_max + m_max + 1):
            if s.n_max < n_deg + m + 1:
                break
            try:
                f = pade_reconstruct(s, n_deg, m)
            except NoSolution:
                continue
            if _matches_prefix(f, s):
                return RationalityCertificate(
                    "RationalWitness", l, m, f, len(s.coeffs))
    return RationalityCertificate("NoWitnessUpTo", l_max, m_max, None, len(s.coeffs))
