"""Executable demonstration that slice-wise polynomial does not imply
rational over a countable field.

Over a fixed enumeration a_0, a_1, ... of Q, the function

    f(a_n, a_m) = sum_{i=0}^{n+m} prod_{l=0}^{i} (a_n - a_l)(a_m - a_l)

has polynomial slices (the slice at a_m is a polynomial of degree exactly m)
while no single bivariate rational function of bounded degree can match its
table: slice degrees grow without bound.  The report refutes every degree
bound D on a finite grid via an exact cross-multiplied linear system.

Q is countable but not algebraically closed; the construction and the
degree-growth phenomenon only need a fixed enumeration of a countable
infinite field, which is what is demonstrated here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, enumerate_countable
from .poly import Poly1


def _enum(n: int) -> Fraction:
    return enumerate_countable(n)


def f_counter(n: int, m: int, n_cap: int | None = None) -> Fraction:
    """The double sum-product, evaluated exactly.  Terms with i >= min(n, m)
    contain a vanishing factor, so the effective sum stops there."""
    if n_cap is not None and (n >= n_cap or m >= n_cap):
        raise ValueError("index beyond table cap")
    an, am = _enum(n), _enum(m)
    acc = Fraction(0)
    prod = Fraction(1)
    for i in range(min(n, m)):
        al = _enum(i)
        prod *= (an - al) * (am - al)
        acc += prod
    return acc


def f_counter_literal(n: int, m: int) -> Fraction:
    """Same sum with the full upper limit n+m; the extra terms each
    contain a factor (a_n - a_n) or (a_m - a_m) and vanish.  Kept as the
    tested equivalence for the effective-sum form."""
    an, am = _enum(n), _enum(m)
    acc = Fraction(0)
    for i in range(n + m + 1):
        prod = Fraction(1)
        for l in range(i + 1):
            al = _enum(l)
            prod *= (an - al) * (am - al)
        acc += prod
    return acc


def slice_poly(m: int, cap: int | None = None) -> Poly1:
    """The univariate slice at a_m: sum_{i<m} prod_{l<=i} (x - a_l)(a_m - a_l)
    in expanded coefficient form; degree exactly m for m >= 1."""
    if cap is not None and m >= cap:
        raise ValueError("index beyond table cap")
    am = _enum(m)
    acc = Poly1.zero(QQ)
    basis = Poly1.from_ints(QQ, [1])
    scalar = Fraction(1)
    for i in range(m):
        al = _enum(i)
        basis = basis * Poly1(QQ, [-al, Fraction(1)])
        scalar *= (am - al)
        acc = acc + basis.scale(scalar)
    return acc


@dataclass
class CounterexampleTable:
    """First N enumaration elements and the N x N value table."""
    enumeration: list
    values: list

    @classmethod
    def build(cls, n: int) -> "CounterexampleTable":
        enum = [_enum(i) for i in range(n)]
        values = [[f_counter(i, j) for j in range(n)] for i in range(n)]
        return cls(enum, values)

    def to_csv(self) -> str:
        lines = ["," + ",".join(str(a) for a in self.enumeration)]
        for a, row in zip(self.enumeration, self.values):
            lines.append(str(a) + "," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def _monomials_total_deg(d: int):
    return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]


class _IncrementalRank:
    """Row-by-row Gaussian elimination tracking rank (and inconsistency for
    augmented rows)."""

    def __init__(self, width: int):
        self.width = width
        self.pivots: dict[int, list] = {}

    def reduce(self, row):
        row = list(row)
        for c, prow in sorted(self.pivots.items()):
            if row[c] != 0:
                f = row[c]
                row = [a - f * b for a, b in zip(row, prow)]
        return row

    def add(self, row) -> bool:
        """Insert a reduced row; returns True if the rank grew."""
        row = self.reduce(row)
        lead = next((c for c, v in enumerate(row) if v != 0), None)
        if lead is None:
            return False
        inv = Fraction(1) / row[lead] if isinstance(row[lead], Fraction) \
            else 1 / row[lead]
        row = [v * inv for v in row]
        self.pivots[lead] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _refute_polynomial(table: CounterexampleTable, d: int):
    """First grid point (row-major) where no total-degree-<=d polynomial can
    match the table, or None if one fits everywhere."""
    monos = _monomials_total_deg(d)
    elim = _IncrementalRank(len(monos) + 1)
    n = len(table.enumeration)
    for i in range(n):
        for j in range(n):
            ai, aj = table.enumeration[i], table.enumeration[j]
            row = [ai ** p * aj ** q for (p, q) in monos] + [table.values[i][j]]
            red = elim.reduce(row)
            if all(v == 0 for v in red[:-1]) and red[-1] != 0:
                return (i, j)
            elim.add(row)
    return None


def _refute_rational(table: CounterexampleTable, d: int):
    """First grid point at which the homogeneous cross-multiplied system
    f*Q - P = 0 (num and den of total degree <= d) reaches full rank, i.e.
    only the zero pair survives; None if a nonzero pair remains."""
    monos = _monomials_total_deg(d)
    width = 2 * len(monos)
    elim = _IncrementalRank(width)
    n = len(table.enumeration)
    for i in range(n):
        for j in range(n):
            ai, aj = table.enumeration[i], table.enumeration[j]
            fv = table.values[i][j]
            row = [-(ai ** p * aj ** q) for (p, q) in monos] \
                + [fv * ai ** p * aj ** q for (p, q) in monos]
            elim.add(row)
            if elim.rank == width:
                return (i, j)
    return None


@dataclass
class NonrationalityReport:
    n_grid: int
    d_max: int
    slice_degrees: list
    table_symmetric: bool
    per_degree: list

    def to_json(self) -> dict:
        return {
            "kind": "nonrationality_refutation",
            "grid": self.n_grid,
            "d_max": self.d_max,
            "field": "q",
            "enumeration_note": ("enumeration of Q; countable but not "
                                 "algebraically closed, which the degree-growth "
                                 "demonstration does not need"),
            "slice_degrees": self.slice_degrees,
            "table_symmetric": self.table_symmetric,
            "per_degree": self.per_degree,
        }


def nonrationality_report(d_max: int, grid: int) -> NonrationalityReport:
    """Refute every bivariate rational degree bound D <= d_max on a
    grid x grid table of exact values."""
    if grid < 2 * d_max + 2:
        raise ValueError(f"grid must be >= 2*d_max + 2 = {2 * d_max + 2}")
    table = CounterexampleTable.build(grid)
    sym = all(table.values[i][j] == table.values[j][i]
              for i in range(grid) for j in range(grid))
    slice_degs = []
    for m in range(grid):
        p = slice_poly(m)
        slice_degs.append(int(p.degree) if not p.is_zero() else 0)
    per_degree = []
    for d in range(d_max + 1):
        poly_witness = _refute_polynomial(table, d)
        rational_witness = _refute_rational(table, d)
        per_degree.append({
            "degree_bound": d,
            "polynomial_refuted": poly_witness is not None,
            "polynomial_witness_index": list(poly_witness) if poly_witness else None,
            "rational_refuted": rational_witness is not None,
            "rational_rank_full_at_index": list(rational_witness) if rational_witness else None,
        })
    return NonrationalityReport(grid, d_max, slice_degs, sym, per_degree)
