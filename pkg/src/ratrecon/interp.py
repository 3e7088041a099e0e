"""Determinantal interpolation of univariate rational functions.

The two bordered (l+2)x(l+2) determinants share their data rows up to a
block swap, so both are recovered from one pass of maximal minors over the
shared (l+1)x(l+2) data matrix:

    numerator-style   det = sum_{j<=n} (-1)^j y^j M_j
    denominator-style det = (-1)^((n+1)m) sum_{j<=m} (-1)^j y^j M_{n+1+j}

where row i of the data matrix is [den_i*b_i^0..den_i*b_i^n,
num_i*b_i^0..num_i*b_i^m].  With den_i = 1 and num_i = f(a_i) these are the
pointwise interpolation determinants; with polynomial entries they are the
reconstruction determinants used by the multivariate engine.

The sign relating their ratio to f(a) is fixed by the matrix layout:
    interp_sign(n, m) = -(-1)^((n+1)(m+1))
frozen after calibration against known functions (see calibrate_sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import (
    AmbiguousFit,
    BetaZero,
    BudgetExhausted,
    CalibrationFailure,
    DegenerateInput,
    DomainTooSparse,
    NoFit,
    SizeMismatch,
)
from .fields import Field, derive_rng, random_element
from .matrix import ExactMatrix, det_exact, maximal_minors, nullspace
from .poly import Poly1
from .ratfun import RatFun1, degree_and_ord, normalize_ratfun1


@dataclass(frozen=True)
class DegreeProfile:
    """Degree data (d, e) of a univariate rational function along with the
    derived numerator/denominator degrees n, m and node count l = n + m."""
    d: int
    e: int
    n: int
    m: int
    l: int

    def __post_init__(self):
        if self.n != self.d + min(0, self.e) or self.m != self.d - max(0, self.e):
            raise ValueError("inconsistent degree profile")
        if self.l != self.n + self.m or self.n < 0 or self.m < 0:
            raise ValueError("inconsistent degree profile")

    @classmethod
    def from_de(cls, d: int, e: int) -> "DegreeProfile":
        n = d + min(0, e)
        m = d - max(0, e)
        return cls(d, e, n, m, n + m)

    @classmethod
    def of(cls, f: RatFun1) -> "DegreeProfile":
        if f.is_zero():
            return cls.from_de(0, 0)
        d, e = degree_and_ord(f)
        return cls.from_de(d, e)


@dataclass
class SampleSet1:
    """(a_i, f(a_i)) pairs with pairwise distinct abscissae."""
    points: list

    def __post_init__(self):
        if len({a for a, _ in self.points}) != len(self.points):
            raise DegenerateInput("duplicate sample abscissae")

    def __len__(self):
        return len(self.points)


def interp_sign(n: int, m: int) -> int:
    """Frozen calibration constant relating the determinant ratio to f(a)."""
    return -1 if ((n + 1) * (m + 1)) % 2 == 0 else 1


def delta_sign(n: int, m: int) -> int:
    """Frozen sign in the determinant = Q(a) * res(P,Q) * Vandermonde identity
    (resultant in this library's Sylvester convention)."""
    l = n + m
    return -1 if ((m * (m - 1) + n * (n + 1) + l * (l + 1)) // 2) % 2 else 1


def delta_det(p: Poly1, q: Poly1, a, points):
    """The bordered (l+2)x(l+2) determinant with first row
    [1, a, ..., a^m, 0..0] and data rows [P(a_i)*a_i^0..a_i^m,
    Q(a_i)*a_i^0..a_i^n]; equals delta_sign(n,m)*Q(a)*res(P,Q)*Vandermonde."""
    field = p.field
    n, m = int(p.degree), int(q.degree)
    if len(points) != n + m + 1:
        raise SizeMismatch(f"need {n + m + 1} points, got {len(points)}")
    if len(set(points)) != len(points):
        raise DegenerateInput("duplicate interpolation points")
    first = [a ** j for j in range(m + 1)] + [field.zero] * (n + 1)
    rows = [first]
    for ai in points:
        pv, qv = p.eval(ai), q.eval(ai)
        rows.append([pv * ai ** j for j in range(m + 1)]
                    + [qv * ai ** j for j in range(n + 1)])
    return det_exact(ExactMatrix.from_rows(rows), field)


def paired_determinants(dens, nums, points, n: int, m: int, powers):
    """Evaluate both bordered determinants from one minor pass.

    dens/nums: per-point denominator and numerator entries (field elements or
    PolyN); powers: list of the l+1 powers y^0..y^l of the evaluation object
    (only the first n+1 resp. m+1 are used).  Returns (numerator_det,
    denominator_det) exactly as the bordered matrices define them.
    """
    l = n + m
    rows = []
    for ai, den_i, num_i in zip(points, dens, nums):
        row = [den_i * ai ** j for j in range(n + 1)] \
            + [num_i * ai ** j for j in range(m + 1)]
        rows.append(row)
    zero = dens[0] - dens[0]
    minors = maximal_minors(rows, zero)
    num_det = zero
    for j in range(n + 1):
        term = powers[j] * minors[j]
        num_det = num_det - term if j % 2 else num_det + term
    den_det = zero
    for j in range(m + 1):
        term = powers[j] * minors[n + 1 + j]
        den_det = den_det - term if j % 2 else den_det + term
    if ((n + 1) * m) % 2:
        den_det = -den_det
    return num_det, den_det


def alpha_beta(samples: SampleSet1, profile: DegreeProfile, a):
    """The two bordered interpolation determinants."""
    if len(samples) != profile.l + 1:
        raise SizeMismatch(f"need {profile.l + 1} samples, got {len(samples)}")
    pts = [p for p, _ in samples.points]
    fvals = [v for _, v in samples.points]
    ones = [fvals[0] - fvals[0] + 1 for _ in fvals]
    powers = [a ** j for j in range(max(profile.n, profile.m) + 1)]
    return paired_determinants(ones, fvals, pts, profile.n, profile.m, powers)


def interp_point(samples: SampleSet1, profile: DegreeProfile, a):
    """Exact value of the underlying function at a, via the sign-calibrated
    determinant ratio."""
    alpha, beta = alpha_beta(samples, profile, a)
    zero = alpha - alpha
    if beta == zero:
        raise BetaZero("denominator determinant vanished (wrong profile or "
                       "target off the function's domain); resample")
    v = alpha / beta
    return -v if interp_sign(profile.n, profile.m) < 0 else v


@dataclass
class SignCalibration:
    grid: dict          # (n, m) -> observed sign
    closed_form: Callable[[int, int], int]

    def sign(self, n: int, m: int) -> int:
        return self.closed_form(n, m)


def calibrate_sign(field: Field = None, grid_max: int = 4, seed: int = 1) -> SignCalibration:
    """Recompute the sign table empirically against randomly generated known
    functions and verify it matches the frozen closed form."""
    from .fields import QQ
    field = field or QQ
    grid = {}
    for n in range(grid_max + 1):
        for m in range(grid_max + 1):
            rng = derive_rng(seed, "calibrate", n, m)
            grid[(n, m)] = _observe_sign(field, n, m, rng)
            if grid[(n, m)] != interp_sign(n, m):
                raise CalibrationFailure(
                    f"observed sign {grid[(n, m)]} at (n={n}, m={m}) differs "
                    f"from frozen closed form {interp_sign(n, m)}")
    return SignCalibration(grid, interp_sign)


def _observe_sign(field: Field, n: int, m: int, rng) -> int:
    for _ in range(100):
        p = _random_poly_of_degree(field, n, rng)
        q = _random_poly_of_degree(field, m, rng)
        from .poly import gcd_poly1
        if int(gcd_poly1(p, q).degree) > 0:
            continue
        f = normalize_ratfun1(p, q)
        prof = DegreeProfile.of(f)
        if (prof.n, prof.m) != (n, m):
            continue
        pts = []
        while len(pts) < prof.l + 1:
            c = random_element(field, rng, 50)
            if c not in pts and f.defined_at(c):
                pts.append(c)
        a = None
        while a is None:
            c = random_element(field, rng, 50)
            if f.defined_at(c):
                a = c
        want = f.eval(a)
        if want == field.zero:
            continue
        samples = SampleSet1([(c, f.eval(c)) for c in pts])
        alpha, beta = alpha_beta(samples, prof, a)
        if beta == field.zero or alpha == field.zero:
            continue
        ratio = want * beta / alpha
        if ratio == field.one:
            return 1
        if ratio == -field.one:
            return -1
        raise CalibrationFailure(f"ratio {ratio!r} not a sign at (n={n}, m={m})")
    raise CalibrationFailure(f"no usable instance at (n={n}, m={m})")


def _random_poly_of_degree(field: Field, deg: int, rng) -> Poly1:
    while True:
        p = Poly1(field, [random_element(field, rng, 9) for _ in range(deg + 1)])
        if not p.is_zero() and int(p.degree) == deg:
            return p


def fit_ratfun(samples: SampleSet1, n_deg: int, m_deg: int) -> RatFun1:
    """Solve the homogeneous system f_i*Q(a_i) - P(a_i) = 0 over all samples
    and return the unique canonical solution with Q nonvanishing at every
    sample.  Requires at least one sample beyond the square system."""
    if len(samples) < n_deg + m_deg + 2:
        raise SizeMismatch(
            f"need >= {n_deg + m_deg + 2} samples for degrees ({n_deg}, {m_deg})")
    field = samples.points[0][0].field if hasattr(samples.points[0][0], "field") else None
    from .fields import QQ
    field = field or QQ
    zero = field.zero
    rows = []
    for a, f in samples.points:
        rows.append([-(a ** j) for j in range(n_deg + 1)]
                    + [f * a ** j for j in range(m_deg + 1)])
    basis = nullspace(rows, n_deg + m_deg + 2, field)
    if not basis:
        raise NoFit("no rational function with these degree bounds fits the samples")
    candidates = list(basis)
    if len(basis) > 1:
        acc = basis[0]
        for v in basis[1:]:
            acc = [x + y for x, y in zip(acc, v)]
        candidates.append(acc)
    seen = []
    for v in candidates:
        num = Poly1(field, v[:n_deg + 1])
        den = Poly1(field, v[n_deg + 1:])
        if den.is_zero():
            continue
        if any(den.eval(a) == zero for a, _ in samples.points):
            continue
        f = normalize_ratfun1(num, den)
        if not any(f == g for g in seen):
            seen.append(f)
    if not seen:
        raise NoFit("every candidate denominator vanishes at a sample; "
                    "degree bounds are wrong")
    if len(seen) > 1:
        raise AmbiguousFit("distinct functions fit all samples; shrink bounds")
    return seen[0]


@dataclass
class SamplingBudget:
    """Knobs for black-box degree detection."""
    max_degree: int = 8
    validation_extra: int = 4
    height_bound: int = 10
    shift: int = 0
    max_consecutive_undefined: int = 100


UnivariateOracle = Callable[[object], Optional[object]]


def _draw_defined(oracle: UnivariateOracle, field: Field, budget: SamplingBudget,
                  rng, taken: set):
    """One (a, f(a)) pair with a fresh abscissa; resamples on Undefined."""
    misses = 0
    shift = field.from_int(budget.shift)
    while True:
        a = random_element(field, rng, budget.height_bound) + shift
        if a in taken:
            misses += 1
            if misses > budget.max_consecutive_undefined:
                raise DomainTooSparse("cannot find a fresh sample point")
            continue
        v = oracle(a)
        if v is None:
            misses += 1
            if misses > budget.max_consecutive_undefined:
                raise DomainTooSparse(
                    f"{misses} consecutive undefined oracle responses")
            continue
        taken.add(a)
        return a, v


def detect_profile_with_fit(oracle: UnivariateOracle, field: Field,
                            budget: SamplingBudget, rng):
    """Walk total degree 0, 1, ... and accept the first fit that survives
    validation at fresh points; returns (profile, fit)."""
    taken: set = set()
    pool: list = []

    def ensure(k):
        while len(pool) < k:
            pool.append(_draw_defined(oracle, field, budget, rng, taken))

    for total in range(budget.max_degree + 1):
        for n_deg in range(total + 1):
            m_deg = total - n_deg
            ensure(n_deg + m_deg + 2)
            try:
                fit = fit_ratfun(SampleSet1(list(pool)), n_deg, m_deg)
            except (NoFit, AmbiguousFit):
                continue
            fresh = [_draw_defined(oracle, field, budget, rng, taken)
                     for _ in range(budget.validation_extra)]
            pool.extend(fresh)
            if all(fit.defined_at(a) and fit.eval(a) == v for a, v in fresh):
                return DegreeProfile.of(fit), fit
    raise BudgetExhausted(
        f"no rational profile up to total degree {budget.max_degree}")


def detect_profile(oracle: UnivariateOracle, field: Field,
                   budget: SamplingBudget, rng) -> DegreeProfile:
    return detect_profile_with_fit(oracle, field, budget, rng)[0]
