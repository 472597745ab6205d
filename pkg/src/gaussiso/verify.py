"""Inequality and identity verification suites over set corpora and grids.

Each suite evaluates a family of claims — isoperimetric lower bounds, the
deficit-controls-asymmetry estimate with its explicit constant, asymmetry
comparisons, the boundary-excess identity, auxiliary scalar-function sign
conditions, and stationarity structure of the two-ray family — and returns
one record per check with the violation count and the worst margin.  An
inequality a <= b counts as violated when a - b > 1e-9 * max(1, |b|); the
recorded margin folds that tolerance in, so it is negative exactly when the
check has violations.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import log_ndtr as _vector_log_cdf
from scipy.special import ndtr as _vector_cdf

from .corpus import RandomSetSpec, mixed_corpus, random_interval_union
from .functionals import (
    STABILITY_CONSTANT,
    FunctionalParams,
    QuantityBundle,
    penalized_functional,
    quantities,
    stability_params,
)
from .optimize import half_line_set, two_ray_set
from .quadrature import QuadSettings, adaptive_quad
from .sets import (
    CenteredBall,
    IntervalUnion1D,
    SlabSet,
    contains_points,
    mc_measure,
    measure,
)
from .special import SQRT_2PI, gauss_cdf, gauss_cdf_inv, gauss_density, gauss_weight
from .stationarity import (
    boundary_points,
    euler_residual,
    psd_on_zero_average,
    second_variation_form,
)

__all__ = [
    "SUITE_NAMES",
    "SuiteConfig",
    "CheckRecord",
    "VerificationReport",
    "run_suite",
    "render_report",
    "emit_report",
]

#: Relative scale of the violation tolerance for inequality checks.
SLACK_REL = 1e-9

#: Tighter relative tolerance for exact-identity checks.
IDENTITY_REL = 1e-10

SUITE_NAMES = (
    "measure-oracle",
    "iso",
    "barycenter-max",
    "main",
    "strong-vs-standard",
    "alpha-hat-corollary",
    "excess-identity",
    "scalar-functions",
    "stationarity",
)


@dataclass(frozen=True)
class SuiteConfig:
    """Corpus size, seeding, parallelism, and the falsification hook.

    ``main_constant`` overrides the explicit constant of the
    deficit-controls-asymmetry estimate; lowering it demonstrates the
    suite's sensitivity through the reported margins.
    """

    samples: int = 10_000
    seed: int = 42
    jobs: int = 1
    main_constant: float = STABILITY_CONSTANT

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples!r}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive, got {self.jobs!r}")
        if not (self.main_constant > 0.0 and math.isfinite(self.main_constant)):
            raise ValueError(f"main_constant must be positive, got {self.main_constant!r}")


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one verified claim."""

    name: str
    anchor: str
    samples: int
    violations: int
    worst_margin: float
    params: dict = field(default_factory=dict)
    seed: int = 0
    wall_time: float = 0.0

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("check name must be nonempty")
        if not self.anchor:
            raise ValueError("check anchor must be nonempty")
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples!r}")
        if self.violations < 0:
            raise ValueError(f"violations must be nonnegative, got {self.violations!r}")
        if not math.isfinite(self.worst_margin):
            raise ValueError(f"worst_margin must be finite, got {self.worst_margin!r}")
        if (self.violations > 0) != (self.worst_margin < 0.0):
            raise ValueError(
                f"margin sign must track violations: {self.violations} violations "
                f"with worst margin {self.worst_margin!r}"
            )
        if self.wall_time < 0.0:
            raise ValueError(f"wall_time must be nonnegative, got {self.wall_time!r}")


@dataclass(frozen=True)
class VerificationReport:
    """All check records of one suite run."""

    suite: str
    checks: tuple[CheckRecord, ...]

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.checks)


def _margins_le(a, b) -> np.ndarray:
    """Tolerance-adjusted slack of the claims a_i <= b_i (negative iff violated)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return b - a + SLACK_REL * np.maximum(1.0, np.abs(b))


def _margins_identity(a, b, rel=IDENTITY_REL) -> np.ndarray:
    """Tolerance-adjusted slack of the claims a_i == b_i (negative iff violated)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return rel * np.maximum(1.0, np.abs(b)) - np.abs(a - b)


def _record(
    name: str,
    anchor: str,
    margins,
    started: float,
    config: SuiteConfig,
    params: dict | None = None,
) -> CheckRecord:
    margins = np.asarray(margins, dtype=float).ravel()
    if margins.size == 0:
        raise ValueError(f"check {name} evaluated no samples")
    return CheckRecord(
        name=name,
        anchor=anchor,
        samples=int(margins.size),
        violations=int(np.count_nonzero(margins < 0.0)),
        worst_margin=float(margins.min()),
        params=dict(params or {}),
        seed=config.seed,
        wall_time=time.perf_counter() - started,
    )


def _child_seed(seed: int, stream: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, stream, index]).generate_state(1)[0])


class _CorpusCache:
    """Lazily generated corpus and per-set quantity bundles, shared across suites."""

    def __init__(self, config: SuiteConfig) -> None:
        self._config = config
        self._sets = None
        self._bundles = None

    @property
    def sets(self):
        if self._sets is None:
            self._sets = mixed_corpus(self._config.samples, self._config.seed)
        return self._sets

    @property
    def bundles(self) -> tuple[QuantityBundle, ...]:
        if self._bundles is None:
            members = self.sets
            if self._config.jobs > 1:
                with ProcessPoolExecutor(max_workers=self._config.jobs) as pool:
                    chunk = max(1, len(members) // (4 * self._config.jobs))
                    self._bundles = tuple(pool.map(quantities, members, chunksize=chunk))
            else:
                self._bundles = tuple(quantities(e) for e in members)
        return self._bundles

    def columns(self) -> dict[str, np.ndarray]:
        bundles = self.bundles
        return {
            "s": np.array([b.mass_level for b in bundles]),
            "perimeter": np.array([b.perimeter for b in bundles]),
            "deficit": np.array([b.deficit for b in bundles]),
            "beta": np.array([b.strong_asymmetry for b in bundles]),
            "alpha_hat": np.array([b.directed_fraenkel for b in bundles]),
            "excess": np.array([b.excess for b in bundles]),
            "b_norm": np.array([math.hypot(*b.barycenter) for b in bundles]),
            "b_max": np.array([b.max_barycenter_norm for b in bundles]),
        }


# ---------------------------------------------------------------------------
# corpus suites


def _suite_measure_oracle(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    checks = []
    started = time.perf_counter()
    quad_settings = QuadSettings(abs_tol=1e-13, rel_tol=1e-13, max_depth=60)
    margins = []
    one_dim = [e for e in cache.sets if isinstance(e, IntervalUnion1D)]
    for e in one_dim:
        for lo, hi in e.intervals:
            closed = gauss_cdf(hi) - gauss_cdf(lo)
            via_quad = adaptive_quad(gauss_density, lo, hi, settings=quad_settings).value
            margins.append(_margins_identity(via_quad, closed))
    checks.append(
        _record(
            "interval-measure-vs-quadrature",
            "gamma(E) = int_E (2 pi)^{-n/2} e^{-|x|^2/2} dx",
            np.array(margins),
            started,
            config,
            params={"oracle": "adaptive quadrature of the density per interval"},
        )
    )

    started = time.perf_counter()
    high_dim = [e for e in cache.sets if isinstance(e, (CenteredBall, SlabSet))][:20]
    if high_dim:
        diffs = []
        bounds = []
        for idx, e in enumerate(high_dim):
            est, err = mc_measure(e, n_samples=200_000, seed=_child_seed(config.seed, 11, idx))
            diffs.append(abs(measure(e) - est))
            bounds.append(6.0 * err)
        checks.append(
            _record(
                "highdim-measure-vs-monte-carlo",
                "gamma(E) = int_E (2 pi)^{-n/2} e^{-|x|^2/2} dx",
                _margins_le(diffs, bounds),
                started,
                config,
                params={"oracle": "Monte Carlo indicator average within 6 standard errors"},
            )
        )
    return checks


def _suite_iso(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    started = time.perf_counter()
    cols = cache.columns()
    floor = np.exp(-0.5 * cols["s"] ** 2)
    margins = _margins_le(floor, cols["perimeter"])
    equality = int(np.count_nonzero(np.abs(cols["perimeter"] - floor) < 1e-10))
    return [
        _record(
            "isoperimetric-lower-bound",
            "P_gamma(E) >= e^{-s^2/2}",
            margins,
            started,
            config,
            params={"equality_members": equality},
        )
    ]


def _suite_barycenter_max(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    started = time.perf_counter()
    cols = cache.columns()
    margins = _margins_le(cols["b_norm"], cols["b_max"])
    equality = int(np.count_nonzero(cols["b_max"] - cols["b_norm"] < 1e-10))
    return [
        _record(
            "barycenter-norm-maximality",
            "|b(E)| <= b_s = e^{-s^2/2}/sqrt(2 pi)",
            margins,
            started,
            config,
            params={"equality_members": equality},
        )
    ]


def _suite_main(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    checks = []
    started = time.perf_counter()
    cols = cache.columns()
    c = config.main_constant
    bound = c * (1.0 + cols["s"] ** 2) * cols["deficit"]
    checks.append(
        _record(
            "deficit-controls-strong-asymmetry",
            "beta(E) <= c (1+s^2) D(E) with c = 80 pi^2 sqrt(2 pi)",
            _margins_le(cols["beta"], bound),
            started,
            config,
            params={"main_constant": c},
        )
    )

    started = time.perf_counter()
    eligible = cols["beta"] > 1e-12
    if np.any(eligible):
        ratios = bound[eligible] / cols["beta"][eligible]
        checks.append(
            _record(
                "minimum-constant-ratio",
                "beta(E) <= c (1+s^2) D(E) with c = 80 pi^2 sqrt(2 pi)",
                _margins_le(np.ones_like(ratios), ratios),
                started,
                config,
                params={"main_constant": c, "min_ratio": float(ratios.min())},
            )
        )
    return checks


def _suite_strong_vs_standard(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    started = time.perf_counter()
    cols = cache.columns()
    lower = 0.25 * np.exp(0.5 * cols["s"] ** 2) * cols["alpha_hat"] ** 2
    return [
        _record(
            "strong-asymmetry-dominates-directed",
            "beta(E) >= (e^{s^2/2}/4) alpha_hat(E)^2",
            _margins_le(lower, cols["beta"]),
            started,
            config,
        )
    ]


def _suite_alpha_hat_corollary(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    started = time.perf_counter()
    cols = cache.columns()
    c = config.main_constant
    bound = c * (1.0 + cols["s"] ** 2) * np.exp(-0.5 * cols["s"] ** 2) * cols["deficit"]
    return [
        _record(
            "deficit-controls-directed-asymmetry",
            "alpha_hat(E)^2 <= c (1+s^2) e^{-s^2/2} D(E)",
            _margins_le(cols["alpha_hat"] ** 2, bound),
            started,
            config,
            params={"main_constant": c},
        )
    ]


def _suite_excess_identity(config: SuiteConfig, cache: _CorpusCache) -> list[CheckRecord]:
    started = time.perf_counter()
    cols = cache.columns()
    via = 2.0 * cols["deficit"] + 2.0 * SQRT_2PI * cols["beta"]
    return [
        _record(
            "boundary-excess-identity",
            "excess(E) = 2 D(E) + 2 sqrt(2 pi) beta(E)",
            _margins_identity(cols["excess"], via),
            started,
            config,
        )
    ]


# ---------------------------------------------------------------------------
# grid suites (corpus-independent)


def _slab_gain(s: float, t: np.ndarray) -> np.ndarray:
    """Gain of widening the matched slab: nonnegative for every t >= 0, s <= 0."""
    delta = _vector_cdf(s) - _vector_cdf(s - t)
    linear = gauss_weight(s) - np.exp(-0.5 * (s - t) ** 2) + SQRT_2PI * s * delta
    return linear - 0.5 * math.exp(0.5 * s * s) * (SQRT_2PI * delta) ** 2


def _suite_scalar_functions(config: SuiteConfig) -> list[CheckRecord]:
    checks = []
    s_deep = np.linspace(-40.0, 0.0, 4001)

    started = time.perf_counter()
    g = np.exp(-0.5 * s_deep**2) + (SQRT_2PI * s_deep - math.pi) * _vector_cdf(s_deep)
    checks.append(
        _record(
            "mass-gap-function-nonpositive",
            "e^{-s^2/2} + (sqrt(2 pi) s - pi) Phi(s) <= 0 for s <= 0",
            _margins_le(g, np.zeros_like(g)),
            started,
            config,
            params={"grid": "[-40, 0] with 4001 points"},
        )
    )

    started = time.perf_counter()
    log_lam = 0.5 * math.log(2.0) - 0.5 * s_deep**2 - _vector_log_cdf(s_deep)
    lam = np.exp(log_lam)
    checks.append(
        _record(
            "penalty-weight-square-bound",
            "Lambda^2 + 1 <= (9/2) pi^2 (1+s^2)",
            _margins_le(lam**2 + 1.0, 4.5 * math.pi**2 * (1.0 + s_deep**2)),
            started,
            config,
            params={"grid": "[-40, 0] with 4001 points"},
        )
    )

    started = time.perf_counter()
    checks.append(
        _record(
            "weight-dominates-twice-mass",
            "e^{-s^2/2} >= 2 Phi(s) for s <= 0",
            _margins_le(2.0 * _vector_cdf(s_deep), np.exp(-0.5 * s_deep**2)),
            started,
            config,
            params={"grid": "[-40, 0] with 4001 points"},
        )
    )

    started = time.perf_counter()
    t_grid = np.linspace(0.0, 40.0, 801)
    gain_margins = [
        _margins_le(np.zeros_like(t_grid), _slab_gain(s, t_grid))
        for s in (0.0, -0.5, -1.0, -2.0, -3.0, -5.0)
    ]
    checks.append(
        _record(
            "slab-widening-gain-nonnegative",
            "int_{s-t}^{s} (s-x) e^{-x^2/2} dx >= (e^{s^2/2}/2) (int_{s-t}^{s} e^{-x^2/2} dx)^2",
            np.concatenate(gain_margins),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3 -5", "t_grid": "[0, 40] with 801 points"},
        )
    )

    started = time.perf_counter()
    lowers = []
    betas = []
    for s in (0.0, -0.5, -1.0, -2.0, -3.0):
        mass = gauss_cdf(s)
        for fraction in (0.002, 0.01, 0.05, 0.2, 0.5):
            m = fraction * min(mass, 1.0 - mass)
            below = gauss_cdf_inv(mass - m)
            above = gauss_cdf_inv(mass + m)
            competitor = IntervalUnion1D(intervals=((-math.inf, below), (s, above)))
            bundle = quantities(competitor)
            # the construction keeps the barycenter on the negative side, so
            # the strong asymmetry equals the moment gap the bound controls
            if sum(bundle.barycenter) > 0.0:
                raise RuntimeError(
                    f"slab competitor at level {s}, fraction {fraction} has positive barycenter"
                )
            lowers.append(math.sqrt(math.pi / 2.0) * math.exp(0.5 * s * s) * m * m)
            betas.append(bundle.strong_asymmetry)
    checks.append(
        _record(
            "slab-competitor-asymmetry-bound",
            "beta(F) >= sqrt(pi/2) e^{s^2/2} gamma(E minus H)^2",
            _margins_le(lowers, betas),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3", "mass_fractions": "0.002 0.01 0.05 0.2 0.5"},
        )
    )

    started = time.perf_counter()
    diffs = []
    bounds = []
    n_mc = 200_000
    for j, dim in enumerate((2, 3, 4, 5)):
        profile = random_interval_union(
            RandomSetSpec(k_range=(1, 3), seed=_child_seed(config.seed, 13, j))
        )
        slab = SlabSet(dim=dim, profile=profile)
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, 17, j]))
        points = rng.standard_normal((n_mc, dim))
        inside = contains_points(slab, points)
        for axis in range(dim - 1):
            vals = points[:, axis] * inside
            diffs.append(abs(float(vals.mean())))
            bounds.append(6.0 * float(vals.std()) / math.sqrt(n_mc))
    checks.append(
        _record(
            "slab-transverse-barycenter-vanishes",
            "b(E).e_j = 0 for every axis transverse to a slab",
            _margins_le(diffs, bounds),
            started,
            config,
            params={"oracle": "Monte Carlo moment within 6 standard errors", "dims": "2 3 4 5"},
        )
    )

    started = time.perf_counter()
    product = np.exp(-np.log(40.0 * math.pi**2 * (1.0 + s_deep**2)) - math.log(SQRT_2PI))
    checks.append(
        _record(
            "penalty-times-barycenter-small",
            "eps |b| <= eps b_s <= 1/4",
            _margins_le(product, np.full_like(product, 0.25)),
            started,
            config,
            params={"grid": "[-40, 0] with 4001 points"},
        )
    )

    started = time.perf_counter()
    s_mid = np.linspace(-5.0, 0.0, 501)
    values = np.array(
        [penalized_functional(half_line_set(s), stability_params(s)) for s in s_mid]
    )
    checks.append(
        _record(
            "half-line-objective-bound",
            "F(H_s) <= (10/9) e^{-s^2/2}",
            _margins_le(values, (10.0 / 9.0) * np.exp(-0.5 * s_mid**2)),
            started,
            config,
            params={"grid": "[-5, 0] with 501 points"},
        )
    )
    return checks


# ---------------------------------------------------------------------------
# stationarity suite (structured families)

_STATION_LEVELS = (0.0, -0.5, -1.0, -2.0, -3.0, -5.0)
_J_ANCHOR = (
    "J[phi] = sum_i (-1 + eps b nu_i) phi_i^2 w_i + eps (sum_i phi_i x_i w_i)^2 "
    "on zero-average phi"
)


def _suite_stationarity(config: SuiteConfig) -> list[CheckRecord]:
    checks = []

    started = time.perf_counter()
    devs = []
    for s in _STATION_LEVELS + (-10.0,):
        report = euler_residual(two_ray_set(s), stability_params(s))
        devs.append(report.max_dev)
    checks.append(
        _record(
            "two-ray-criticality",
            "-(x.nu) + eps (b.x) = lambda on the boundary",
            _margins_le(devs, np.full(len(devs), 1e-10)),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3 -5 -10"},
        )
    )

    started = time.perf_counter()
    min_eigs = []
    witness_margins = []
    for s in _STATION_LEVELS:
        params = stability_params(s)
        e = two_ray_set(s)
        form = second_variation_form(e, params)
        min_eig, witness = psd_on_zero_average(form)
        min_eigs.append(min_eig)
        norm_sq = float(np.dot(witness, witness))
        witness_margins.append(
            _margins_identity(form.value(witness), min_eig * norm_sq)
        )
        witness_margins.append(
            _margins_identity(float(np.dot(witness, form.constraint)), 0.0)
        )
    checks.append(
        _record(
            "two-ray-negative-mode",
            _J_ANCHOR + " attains negative values at the stability eps",
            _margins_le(min_eigs, np.full(len(min_eigs), -1e-8)),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3 -5"},
        )
    )

    started = time.perf_counter()
    checks.append(
        _record(
            "negative-mode-witness-consistency",
            _J_ANCHOR,
            np.array(witness_margins),
            started,
            config,
        )
    )

    started = time.perf_counter()
    a0 = gauss_cdf_inv(0.25)
    hand_threshold = 1.0 / (2.0 * a0 * a0 * gauss_weight(a0))
    lo_eps, hi_eps = 1.0, 1.8
    e0 = two_ray_set(0.0)
    base = stability_params(0.0)
    for _ in range(60):
        mid = 0.5 * (lo_eps + hi_eps)
        probe = FunctionalParams(s=0.0, eps=mid, lambda_pen=base.lambda_pen)
        min_eig, _ = psd_on_zero_average(second_variation_form(e0, probe))
        if min_eig < 0.0:
            lo_eps = mid
        else:
            hi_eps = mid
    solver_threshold = 0.5 * (lo_eps + hi_eps)
    checks.append(
        _record(
            "instability-threshold-level-zero",
            _J_ANCHOR + " changes sign in eps at 1/(2 a^2 w)",
            _margins_identity(solver_threshold, hand_threshold, rel=1e-9),
            started,
            config,
            params={"hand_threshold": hand_threshold, "solver_threshold": solver_threshold},
        )
    )

    started = time.perf_counter()
    lam_abs = []
    lam_bounds = []
    for s in _STATION_LEVELS + (-10.0, -20.0):
        params = stability_params(s)
        report = euler_residual(half_line_set(s), params)
        lam_abs.append(abs(report.lambda_fit))
        lam_bounds.append(params.lambda_pen)
    checks.append(
        _record(
            "half-line-multiplier-bound",
            "|lambda| <= Lambda",
            _margins_le(lam_abs, lam_bounds),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3 -5 -10 -20"},
        )
    )

    started = time.perf_counter()
    moments = []
    bounds = []
    for s in _STATION_LEVELS:
        for e in (two_ray_set(s), half_line_set(s)):
            pts = boundary_points(e)
            moments.append(sum(p.x * p.x * p.weight for p in pts))
            bounds.append(20.0 * math.pi**2 * (1.0 + s * s) * math.exp(-0.5 * s * s))
    checks.append(
        _record(
            "boundary-second-moment-bound",
            "int over the boundary of (x.omega)^2 dH_gamma <= 20 pi^2 (1+s^2) e^{-s^2/2}",
            _margins_le(moments, bounds),
            started,
            config,
            params={"levels": "0 -0.5 -1 -2 -3 -5", "families": "two-ray and half-line"},
        )
    )
    return checks


# ---------------------------------------------------------------------------
# dispatch and emission


def run_suite(name: str, config: SuiteConfig = SuiteConfig()) -> VerificationReport:
    """Run one named suite (or ``all``) and return its report."""
    if name != "all" and name not in SUITE_NAMES:
        raise ValueError(
            f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES + ('all',))}"
        )
    cache = _CorpusCache(config)
    corpus_suites = {
        "measure-oracle": _suite_measure_oracle,
        "iso": _suite_iso,
        "barycenter-max": _suite_barycenter_max,
        "main": _suite_main,
        "strong-vs-standard": _suite_strong_vs_standard,
        "alpha-hat-corollary": _suite_alpha_hat_corollary,
        "excess-identity": _suite_excess_identity,
    }
    grid_suites = {
        "scalar-functions": _suite_scalar_functions,
        "stationarity": _suite_stationarity,
    }
    names = SUITE_NAMES if name == "all" else (name,)
    checks: list[CheckRecord] = []
    for suite in names:
        if suite in corpus_suites:
            checks.extend(corpus_suites[suite](config, cache))
        else:
            checks.extend(grid_suites[suite](config))
    return VerificationReport(suite=name, checks=tuple(checks))


def _format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _json_value(value) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (bool, int, float)):
        return _format_number(value)
    if isinstance(value, dict):
        inner = ", ".join(
            f"{json.dumps(str(k))}: {_json_value(value[k])}" for k in sorted(value)
        )
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in value) + "]"
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def _check_json(check: CheckRecord) -> str:
    parts = [
        f'"name": {json.dumps(check.name)}',
        f'"anchor": {json.dumps(check.anchor)}',
        f'"samples": {check.samples}',
        f'"violations": {check.violations}',
        f'"worst_margin": {_format_number(check.worst_margin)}',
        f'"params": {_json_value(check.params)}',
        f'"seed": {check.seed}',
        f'"wall_time": {_format_number(check.wall_time)}',
    ]
    return "{" + ", ".join(parts) + "}"


def render_report(report: VerificationReport, format: str = "json") -> str:
    """Serialize the report as JSON or CSV text with 17-significant-digit numbers."""
    if format not in ("json", "csv"):
        raise ValueError(f"format must be 'json' or 'csv', got {format!r}")
    if format == "json":
        return (
            '{"suite": '
            + json.dumps(report.suite)
            + ', "checks": ['
            + ", ".join(_check_json(c) for c in report.checks)
            + "]}\n"
        )
    lines = ["name,anchor,samples,violations,worst_margin,seed,wall_time"]
    for c in report.checks:
        if "," in c.name or "," in c.anchor:
            raise ValueError(f"comma in check name or anchor breaks the CSV layout: {c.name!r}")
        lines.append(
            f"{c.name},{c.anchor},{c.samples},{c.violations},"
            f"{_format_number(c.worst_margin)},{c.seed},{_format_number(c.wall_time)}"
        )
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, path: str, format: str = "json") -> None:
    """Write the report to ``path`` as JSON or CSV with 17-significant-digit numbers."""
    body = render_report(report, format)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(body)
    except OSError as exc:
        raise OSError(f"failed writing report to {path}: {exc}") from exc
