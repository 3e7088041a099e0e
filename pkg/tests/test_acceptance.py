"""Acceptance suite: every criterion checked exactly (tolerance zero), with
its stated runtime target.  Each test prints one PASS line on success; a
pytest failure is the corresponding FAIL line.
"""

import io
import json
import math
import time
from contextlib import redirect_stdout
from fractions import Fraction

from ratrecon.cli import main as cli_main
from ratrecon.counterexample import nonrationality_report, slice_poly
from ratrecon.fields import QQ, PrimeField, derive_rng, random_element
from ratrecon.hankel import SeriesPrefix, certify_rationality, series_of_ratfun
from ratrecon.interp import (
    DegreeProfile,
    SampleSet1,
    alpha_beta,
    delta_det,
    delta_sign,
    interp_point,
)
from ratrecon.matrix import resultant, vandermonde_product
from ratrecon.poly import Poly1, PolyN, gcd_poly1
from ratrecon.ratfun import (
    RatFunN,
    normalize_ratfun1,
    normalize_ratfunn,
)
from ratrecon.reconstruct import ReconConfig, SliceOracle, reconstruct

FP = PrimeField(1000003)


def _rand_poly_deg(field, rng, deg, height=9):
    while True:
        p = Poly1(field, [random_element(field, rng, height) for _ in range(deg + 1)])
        if not p.is_zero() and int(p.degree) == deg:
            return p


def _rand_coprime(field, rng, n, m):
    while True:
        p = _rand_poly_deg(field, rng, n)
        q = _rand_poly_deg(field, rng, m)
        if int(gcd_poly1(p, q).degree) == 0:
            return p, q


def _distinct_points(field, rng, k, avoid=lambda v: False, height=50):
    pts = []
    while len(pts) < k:
        v = random_element(field, rng, height)
        if v not in pts and not avoid(v):
            pts.append(v)
    return pts


def _rand_ratfunn(field, rng, nvars, maxdeg, height=9):
    while True:
        def rand_pn():
            terms = {}
            for _ in range(rng.randint(1, 5)):
                e = tuple(rng.randint(0, maxdeg) for _ in range(nvars))
                terms[e] = random_element(field, rng, height)
            return PolyN(field, nvars, terms)

        num, den = rand_pn(), rand_pn()
        if not den.is_zero():
            return normalize_ratfunn(num, den)


def _oracle(f: RatFunN) -> SliceOracle:
    return SliceOracle(f.nvars, f.field, lambda pt: f.eval_or_none(pt))


def test_criterion_1_determinant_identity():
    t0 = time.perf_counter()
    count = 0
    for field in (QQ, FP):
        rng = derive_rng(101, "acc1", field.descriptor())
        for _ in range(200):
            n, m = rng.randint(0, 3), rng.randint(0, 3)
            p, q = _rand_coprime(field, rng, n, m)
            pts = _distinct_points(field, rng, n + m + 1)
            a = random_element(field, rng, 50)
            want = q.eval(a) * resultant(p, q) * vandermonde_product(pts)
            want = want * field.from_int(delta_sign(n, m))
            assert delta_det(p, q, a, pts) == want
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    print(f"\nPASS criterion 1 (determinant identity): {count} instances exact, "
          f"{elapsed:.2f}s < 10s")


def test_criterion_2_pointwise_formula():
    t0 = time.perf_counter()
    count = 0
    for field in (QQ, FP):
        rng = derive_rng(102, "acc2", field.descriptor())
        while count < (250 if field == QQ else 500):
            n, m = rng.randint(0, 3), rng.randint(0, 3)
            p, q = _rand_coprime(field, rng, n, m)
            f = normalize_ratfun1(p, q)
            prof = DegreeProfile.of(f)
            if (prof.n, prof.m) != (n, m):
                continue
            pts = _distinct_points(field, rng, prof.l + 1,
                                   avoid=lambda v: not f.defined_at(v))
            a = _distinct_points(field, rng, 1,
                                 avoid=lambda v: not f.defined_at(v))[0]
            samples = SampleSet1([(v, f.eval(v)) for v in pts])
            alpha, beta = alpha_beta(samples, prof, a)
            assert beta != field.zero
            assert interp_point(samples, prof, a) == f.eval(a)
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    print(f"\nPASS criterion 2 (pointwise interpolation): {count} instances "
          f"exact with nonzero denominator determinant, {elapsed:.2f}s < 10s")


def test_criterion_3_kronecker_hankel():
    t0 = time.perf_counter()
    fib = [1, 1]
    while len(fib) < 21:
        fib.append(fib[-1] + fib[-2])
    cert = certify_rationality(SeriesPrefix(QQ, [Fraction(v) for v in fib]), 5, 5)
    assert cert.verdict == "RationalWitness"
    scale = QQ.inv(cert.witness.den.eval(QQ.zero))
    assert cert.witness.den.scale(scale) == Poly1.from_ints(QQ, [1, -1, -1])

    squares = [Fraction(1 if math.isqrt(i) ** 2 == i else 0) for i in range(41)]
    cert2 = certify_rationality(SeriesPrefix(QQ, squares), 4, 4)
    assert cert2.verdict == "NoWitnessUpTo" and (cert2.l, cert2.m) == (4, 4)

    rng = derive_rng(103, "acc3")
    done = 0
    while done < 50:
        num = Poly1(QQ, [random_element(QQ, rng, 9) for _ in range(rng.randint(1, 4))])
        den = Poly1(QQ, [random_element(QQ, rng, 9) for _ in range(rng.randint(1, 4))])
        if num.is_zero() or den.is_zero() or den.eval(QQ.zero) == QQ.zero:
            continue
        f = normalize_ratfun1(num, den)
        if f.is_zero() or f.den.eval(QQ.zero) == QQ.zero:
            continue
        s = series_of_ratfun(f, 20)
        c = certify_rationality(s, 4, 4)
        assert c.verdict == "RationalWitness"
        assert c.witness == f
        done += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 5
    print(f"\nPASS criterion 3 (rationality certificates): Fibonacci witness "
          f"1 - t - t^2, squares refused, {done} roundtrips, {elapsed:.2f}s < 5s")


def test_criterion_4_reconstruction_roundtrips():
    t0 = time.perf_counter()
    rng = derive_rng(104, "acc4")
    for k in range(50):
        f = _rand_ratfunn(FP, rng, 2, 3)
        report = reconstruct(_oracle(f), ReconConfig(seed=4000 + k))
        assert report.result.same_function(f)
        trials, agreements, skips = report.verification
        assert agreements == trials - skips
    for k in range(10):
        f = _rand_ratfunn(FP, rng, 3, 2)
        report = reconstruct(_oracle(f), ReconConfig(seed=5000 + k))
        assert report.result.same_function(f)
        trials, agreements, skips = report.verification
        assert agreements == trials - skips
    rngq = derive_rng(104, "acc4q")
    for k in range(5):
        f = _rand_ratfunn(QQ, rngq, 2, 2, height=10)
        report = reconstruct(_oracle(f), ReconConfig(seed=6000 + k, height_bound=10))
        assert report.result.same_function(f)
        trials, agreements, skips = report.verification
        assert agreements == trials - skips
    elapsed = time.perf_counter() - t0
    assert elapsed < 120
    print(f"\nPASS criterion 4 (reconstruction roundtrips): 50 bivariate + "
          f"10 trivariate over F_1000003 + 5 over Q, all exact with 100% "
          f"verification, {elapsed:.1f}s < 120s")


def test_criterion_5_cube_example():
    t0 = time.perf_counter()
    one = PolyN.const(FP, 2, FP.one)
    f = normalize_ratfunn(
        PolyN(FP, 2, {(3, 0): FP.one, (1, 3): FP.one}), one)
    report = reconstruct(_oracle(f), ReconConfig(seed=55))
    assert report.result.same_function(f)
    assert report.result.den == one

    # slices match the closed forms z -> z^3 + a^3*z and w -> a*w^3 + a^3
    rng = derive_rng(105, "acc5")
    from ratrecon.reconstruct import slice_oracle
    oracle = _oracle(f)
    for _ in range(10):
        a = random_element(FP, rng, 50)
        z = random_element(FP, rng, 50)
        assert slice_oracle(oracle, 0, (a,))(z) == z ** 3 + a ** 3 * z
        assert slice_oracle(oracle, 1, (a,))(z) == a * z ** 3 + a ** 3
    elapsed = time.perf_counter() - t0
    assert elapsed < 2
    print(f"\nPASS criterion 5 (cube example): exact polynomial recovered and "
          f"slices match their closed forms, {elapsed:.2f}s < 2s")


def test_criterion_6_counterexample_demonstrator():
    t0 = time.perf_counter()
    for m in range(1, 31):
        assert int(slice_poly(m).degree) == m
    rep = nonrationality_report(5, 16)
    assert rep.table_symmetric
    for entry in rep.per_degree:
        assert entry["rational_refuted"]
        assert entry["polynomial_refuted"]
    elapsed = time.perf_counter() - t0
    assert elapsed < 30
    print(f"\nPASS criterion 6 (slice-polynomial counterexample): slice degrees "
          f"1..30 exact, 16x16 table symmetric, every D <= 5 refuted, "
          f"{elapsed:.2f}s < 30s")


def _run_cli(*argv) -> tuple:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def test_criterion_7_determinism():
    t0 = time.perf_counter()
    recon_args = ("reconstruct", "--expr", "(x1*x2+1)/(x1-x2)", "--arity", "2",
                  "--field", "fp:1000003", "--seed", "99")
    assert _run_cli(*recon_args) == _run_cli(*recon_args)

    ce_args = ("counterexample", "--n", "8", "--dmax", "2", "--grid", "8")
    assert _run_cli(*ce_args) == _run_cli(*ce_args)

    f = normalize_ratfunn(PolyN(FP, 2, {(1, 1): FP.one, (0, 0): FP.one}),
                          PolyN(FP, 2, {(1, 0): FP.one, (0, 1): -FP.one}))
    r1 = reconstruct(_oracle(f), ReconConfig(seed=77))
    r2 = reconstruct(_oracle(f), ReconConfig(seed=77))
    assert json.dumps(r1.to_json(), sort_keys=True) == \
        json.dumps(r2.to_json(), sort_keys=True)
    elapsed = time.perf_counter() - t0
    print(f"\nPASS criterion 7 (determinism): byte-identical CLI stdout and "
          f"serialized reports under a fixed seed, {elapsed:.1f}s")
