"""Multivariate reconstruction from a slice-rational black box.

The engine peels the last variable: it samples random slices to find the
dominant (degree, order-at-infinity) class, picks anchor values where the
oracle is widely defined, recursively reconstructs the function on each
anchor hyperplane, and combines the results through the paired interpolation
determinants.  Every reconstruction is verified against the oracle at random
points; exact arithmetic means any disagreement at all is a failure.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .errors import (
    AnchorSearchFailed,
    EmptyHistogram,
    TooManyFailures,
    VerificationFailed,
)
from .errors import BudgetExhausted, DomainTooSparse
from .fields import Field, derive_rng, random_element
from .interp import (
    DegreeProfile,
    SamplingBudget,
    detect_profile_with_fit,
    interp_sign,
    paired_determinants,
)
from .poly import PolyN
from .ratfun import RatFunN, format_ratfunn, normalize_ratfunn

ANCHOR_PROBE_BATCH = 20
ANCHOR_MIN_DEFINED = 0.95
MAX_ANCHOR_ATTEMPTS = 100
MAX_CLASSIFY_FAILURE_RATE = 0.20


@dataclass
class SliceOracle:
    """Partial black-box function on field^arity.  Undefined inputs are
    reported as None, never raised.  `serial` declares that the callable must
    not be invoked concurrently; the engine evaluates serially either way."""
    arity: int
    field: Field
    fn: Callable[[tuple], Optional[object]]
    serial: bool = False

    def eval(self, point: tuple):
        if len(point) != self.arity:
            raise ValueError(f"point arity {len(point)} != oracle arity {self.arity}")
        return self.fn(tuple(point))


def slice_oracle(oracle: SliceOracle, axis: int, fixed: tuple):
    """Univariate restriction: a -> oracle(..., a, ...) with `a` at `axis`."""
    if not 0 <= axis < oracle.arity:
        raise ValueError("axis out of range")
    if len(fixed) != oracle.arity - 1:
        raise ValueError("fixed tuple must have arity-1 coordinates")
    pre, post = tuple(fixed[:axis]), tuple(fixed[axis:])

    def fn(a):
        return oracle.eval(pre + (a,) + post)

    return fn


@dataclass
class ReconConfig:
    samples_per_class: int = 20
    max_degree: int = 8
    validation_extra: int = 4
    verify_trials: int = 200
    height_bound: int = 10
    seed: int = 0

    def budget(self) -> SamplingBudget:
        return SamplingBudget(max_degree=self.max_degree,
                              validation_extra=self.validation_extra,
                              height_bound=self.height_bound)

    def to_json(self) -> dict:
        return {
            "samples_per_class": self.samples_per_class,
            "max_degree": self.max_degree,
            "validation_extra": self.validation_extra,
            "verify_trials": self.verify_trials,
            "height_bound": self.height_bound,
            "seed": self.seed,
        }


@dataclass
class ClassifyResult:
    histogram: Counter
    failures: int
    total: int


def classify_slices(oracle: SliceOracle, axis: int, cfg: ReconConfig, rng) -> ClassifyResult:
    """Profile `samples_per_class` random slices along `axis`; failed
    detections are tallied separately and capped at 20%."""
    if oracle.arity < 2:
        raise ValueError("classification needs arity >= 2")
    hist: Counter = Counter()
    failures = 0
    budget = cfg.budget()
    for i in range(cfg.samples_per_class):
        fixed = tuple(random_element(oracle.field, rng, cfg.height_bound)
                      for _ in range(oracle.arity - 1))
        sub = slice_oracle(oracle, axis, fixed)
        sub_rng = derive_rng(rng.getrandbits(63), "classify-slice", axis, i)
        try:
            prof, _ = detect_profile_with_fit(sub, oracle.field, budget, sub_rng)
            hist[(prof.d, prof.e)] += 1
        except (BudgetExhausted, DomainTooSparse):
            failures += 1
    if failures > MAX_CLASSIFY_FAILURE_RATE * cfg.samples_per_class:
        raise TooManyFailures(
            f"{failures}/{cfg.samples_per_class} slices failed profile detection; "
            "oracle is likely not slice-rational within the budget")
    return ClassifyResult(hist, failures, cfg.samples_per_class)


def dominant_class(hist) -> tuple:
    """Most frequent (d, e); ties break to smaller d, then smaller |e|,
    then e >= 0 first."""
    if not hist:
        raise EmptyHistogram("no classified slices")
    return min(hist, key=lambda de: (-hist[de], de[0], abs(de[1]), de[1] < 0))


def choose_anchors(oracle: SliceOracle, axis: int, profile: DegreeProfile,
                   cfg: ReconConfig, rng) -> list:
    """l+1 distinct values along `axis` at which the oracle is defined for at
    least 95% of a fresh random batch of fixed-tuples."""
    anchors: list = []
    need = profile.l + 1
    min_defined = ANCHOR_MIN_DEFINED * ANCHOR_PROBE_BATCH
    while len(anchors) < need:
        for _ in range(MAX_ANCHOR_ATTEMPTS):
            b = random_element(oracle.field, rng, cfg.height_bound)
            if b in anchors:
                continue
            defined = 0
            for _ in range(ANCHOR_PROBE_BATCH):
                fixed = tuple(random_element(oracle.field, rng, cfg.height_bound)
                              for _ in range(oracle.arity - 1))
                point = fixed[:axis] + (b,) + fixed[axis:]
                if oracle.eval(point) is not None:
                    defined += 1
            if defined >= min_defined:
                anchors.append(b)
                break
        else:
            raise AnchorSearchFailed(
                f"no usable anchor after {MAX_ANCHOR_ATTEMPTS} attempts "
                f"(found {len(anchors)}/{need})")
    return anchors


def verify_agreement(oracle: SliceOracle, g: RatFunN, trials: int, rng,
                     height_bound: int = 10) -> tuple:
    """(trials, agreements, undefined_skips) over random points; points where
    either side is undefined are skipped, the rest compared exactly."""
    agreements = 0
    skips = 0
    for _ in range(trials):
        point = tuple(random_element(oracle.field, rng, height_bound)
                      for _ in range(oracle.arity))
        want = oracle.eval(point)
        got = g.eval_or_none(point)
        if want is None or got is None:
            skips += 1
        elif want == got:
            agreements += 1
    return trials, agreements, skips


@dataclass
class ReconReport:
    result: RatFunN
    arity: int
    field: Field
    class_histogram: dict
    failures: int
    anchors: list              # per recursion level, in processing order
    verification: tuple        # (trials, agreements, undefined_skips)
    config: ReconConfig
    timings: dict = dc_field(default_factory=dict)

    def to_json(self, include_timings: bool = False) -> dict:
        fmt = self.field.format
        out = {
            "result": format_ratfunn(self.result),
            "coprime_certified": self.result.coprime,
            "arity": self.arity,
            "field": self.field.descriptor(),
            "class_histogram": {f"{d},{e}": c for (d, e), c in
                                sorted(self.class_histogram.items())},
            "classify_failures": self.failures,
            "anchors": [[fmt(b) for b in level] for level in self.anchors],
            "verification": {
                "trials": self.verification[0],
                "agreements": self.verification[1],
                "undefined_skips": self.verification[2],
            },
            "config": self.config.to_json(),
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def reconstruct(oracle: SliceOracle, cfg: ReconConfig) -> ReconReport:
    """Full reconstruction with verification; see module docstring."""
    t0 = time.perf_counter()
    anchors_by_level: dict = {}
    info: dict = {"hist": Counter(), "failures": 0}
    timings: dict = {"classify": 0.0, "anchors": 0.0, "fit": 0.0,
                     "assemble": 0.0, "verify": 0.0}
    result = _reconstruct_level(oracle, cfg, (), anchors_by_level, info, timings)
    t1 = time.perf_counter()
    rng = derive_rng(cfg.seed, "verify")
    verification = verify_agreement(oracle, result, cfg.verify_trials, rng,
                                    cfg.height_bound)
    timings["verify"] += time.perf_counter() - t1
    timings["total"] = time.perf_counter() - t0
    trials, agreements, skips = verification
    if agreements != trials - skips:
        raise VerificationFailed("random verification point", trials - skips, agreements)
    levels = [anchors_by_level[k] for k in sorted(anchors_by_level)]
    return ReconReport(result, oracle.arity, oracle.field, dict(info["hist"]),
                       info["failures"], levels, verification, cfg, timings)


def _reconstruct_level(oracle: SliceOracle, cfg: ReconConfig, path: tuple,
                       anchors_by_level: dict, info: dict, timings: dict) -> RatFunN:
    field = oracle.field
    level = len(path)
    if oracle.arity == 1:
        t0 = time.perf_counter()
        rng = derive_rng(cfg.seed, "fit", *path)
        prof, fit = detect_profile_with_fit(
            lambda a: oracle.eval((a,)), field, cfg.budget(), rng)
        timings["fit"] += time.perf_counter() - t0
        if level == 0:
            info["hist"][(prof.d, prof.e)] += 1
        result = fit.to_ratfunn(1)
        _verify_node(oracle, result, cfg, path, timings)
        return result

    axis = oracle.arity - 1
    t0 = time.perf_counter()
    cls = classify_slices(oracle, axis, cfg, derive_rng(cfg.seed, "classify", *path))
    timings["classify"] += time.perf_counter() - t0
    if level == 0:
        info["hist"].update(cls.histogram)
        info["failures"] += cls.failures
    d, e = dominant_class(cls.histogram)
    profile = DegreeProfile.from_de(d, e)

    t0 = time.perf_counter()
    anchors = choose_anchors(oracle, axis, profile, cfg,
                             derive_rng(cfg.seed, "anchors", *path))
    timings["anchors"] += time.perf_counter() - t0
    anchors_by_level.setdefault(level, []).extend(anchors)

    parts = []
    for i, b in enumerate(anchors):
        sub = SliceOracle(oracle.arity - 1, field,
                          lambda pt, _b=b: oracle.eval(tuple(pt) + (_b,)),
                          serial=oracle.serial)
        parts.append(_reconstruct_level(sub, cfg, path + (i,),
                                        anchors_by_level, info, timings))

    t0 = time.perf_counter()
    result = _combine(parts, anchors, profile, field, oracle.arity)
    timings["assemble"] += time.perf_counter() - t0
    _verify_node(oracle, result, cfg, path, timings)
    return result


def _combine(parts, anchors, profile: DegreeProfile, field: Field,
             nvars: int) -> RatFunN:
    """Assemble the paired determinants from the per-anchor reconstructions.

    Each data row is cleared by that row's denominator; the same factor
    multiplies the row in both matrices, so the quotient is unchanged."""
    dens = [h.den.pad_vars(nvars) for h in parts]
    nums = [h.num.pad_vars(nvars) for h in parts]
    dens_again = [h.den.pad_vars(nvars) for h in parts]
    assert dens == dens_again  # identical row factors for both determinants
    y = PolyN.var(field, nvars, nvars - 1)
    powers = [PolyN.const(field, nvars, field.one)]
    while len(powers) <= max(profile.n, profile.m):
        powers.append(powers[-1] * y)
    phi, psi = paired_determinants(dens, nums, anchors, profile.n, profile.m,
                                   powers)
    if interp_sign(profile.n, profile.m) < 0:
        phi = -phi
    return normalize_ratfunn(phi, psi)


def _verify_node(oracle: SliceOracle, result: RatFunN, cfg: ReconConfig,
                 path: tuple, timings: dict):
    t0 = time.perf_counter()
    rng = derive_rng(cfg.seed, "verify", *path)
    trials, agreements, skips = verify_agreement(
        oracle, result, cfg.verify_trials, rng, cfg.height_bound)
    timings["verify"] += time.perf_counter() - t0
    if agreements != trials - skips:
        raise VerificationFailed(
            f"recursion path {path}", trials - skips, agreements)
