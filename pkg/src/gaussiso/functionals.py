"""Derived scalar quantities for Gaussian sets.

Built on the exact set primitives: the isoperimetric deficit, the two
asymmetries (barycenter gap and symmetric-difference), the boundary excess,
the penalized objective used by the optimizer, and the explicit penalization
constants under which half-spaces are the unique minimizers.

Conventions: ``s`` always denotes the mass level of a set, the number with
``measure(E) = gauss_cdf(s)``. All quantities are invariant under taking
complements except the mass level itself, which flips sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sets import (
    CenteredBall,
    GaussianSet,
    HalfSpace,
    IntervalUnion1D,
    SlabSet,
    barycenter,
    dimension,
    mass_level,
    measure,
    perimeter,
    symm_diff_measure,
)
from .special import SQRT_2PI, gauss_cdf, gauss_cdf_inv, gauss_weight, log_gauss_cdf

__all__ = [
    "STABILITY_CONSTANT",
    "BARYCENTER_ZERO_TOL",
    "FunctionalParams",
    "QuantityBundle",
    "max_barycenter_norm",
    "isoperimetric_deficit",
    "strong_asymmetry",
    "directed_fraenkel",
    "axis_fraenkel",
    "boundary_excess",
    "excess_identity",
    "penalized_functional",
    "stability_params",
    "quantities",
]

# 80 pi^2 sqrt(2 pi): the explicit constant in the deficit-controls-asymmetry
# estimate produced by the penalization constants of stability_params.
STABILITY_CONSTANT = 80.0 * math.pi**2 * math.sqrt(2.0 * math.pi)

# |b(E)| below this is treated as a zero barycenter (degenerate direction).
BARYCENTER_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class FunctionalParams:
    """Target mass level and penalization weights of the objective.

    ``eps`` weighs the squared barycenter norm, ``lambda_pen`` the mass
    constraint violation. Zero values are accepted to allow degenerate
    (pure-perimeter) objectives.
    """

    s: float
    eps: float
    lambda_pen: float

    def __post_init__(self) -> None:
        s = float(self.s)
        eps = float(self.eps)
        lam = float(self.lambda_pen)
        if not math.isfinite(s):
            raise ValueError(f"FunctionalParams.s must be finite, got {s!r}")
        if not (math.isfinite(eps) and eps >= 0.0):
            raise ValueError(f"FunctionalParams.eps must be finite and >= 0, got {eps!r}")
        if not (math.isfinite(lam) and lam >= 0.0):
            raise ValueError(
                f"FunctionalParams.lambda_pen must be finite and >= 0, got {lam!r}"
            )
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "lambda_pen", lam)


def max_barycenter_norm(s: float) -> float:
    """Largest possible |b(E)| at mass level s: exp(-s^2/2)/sqrt(2 pi).

    Attained exactly by half-spaces at level s; even in s.
    """
    return gauss_weight(s) / SQRT_2PI


def _nondegenerate_level(e: GaussianSet) -> float:
    m = measure(e)
    if not 0.0 < m < 1.0:
        raise ValueError(
            f"quantity undefined for degenerate set with measure {m!r}; need measure in (0, 1)"
        )
    return gauss_cdf_inv(m)


def isoperimetric_deficit(e: GaussianSet) -> float:
    """perimeter(E) minus the half-space perimeter at the same mass level."""
    return perimeter(e) - gauss_weight(mass_level(e))


def strong_asymmetry(e: GaussianSet) -> float:
    """Gap between the maximal and the actual barycenter norm at the set's level.

    Equals the minimal distance from b(E) to a half-space barycenter of the
    same mass, attained in the direction -b/|b| when b is nonzero.
    """
    s = mass_level(e)
    return max_barycenter_norm(s) - float(np.linalg.norm(barycenter(e)))


def _axis_halfspace(e: GaussianSet, sign: float, s: float) -> HalfSpace:
    n = dimension(e)
    omega = [0.0] * n
    omega[-1] = sign
    return HalfSpace(omega=tuple(omega), s=s)


def directed_fraenkel(e: GaussianSet) -> float:
    """Symmetric-difference asymmetry with the comparison half-space taken
    opposite to the barycenter.

    For zero barycenter the direction degenerates and the value is the
    ceiling 2 * gauss_cdf(-|s|), which bounds the directed value for every set.
    """
    s = _nondegenerate_level(e)
    b = barycenter(e)
    norm_b = float(np.linalg.norm(b))
    if norm_b < BARYCENTER_ZERO_TOL:
        return 2.0 * gauss_cdf(-abs(s))
    if isinstance(e, HalfSpace):
        # -b/|b| recovers the set's own direction exactly
        return symm_diff_measure(e, HalfSpace(omega=e.omega, s=s))
    if isinstance(e, (IntervalUnion1D, SlabSet)):
        sign = -1.0 if float(b[-1]) > 0.0 else 1.0
        return symm_diff_measure(e, _axis_halfspace(e, sign, s))
    omega = tuple(float(c) for c in (-b / norm_b))
    return symm_diff_measure(e, HalfSpace(omega=omega, s=s))


def axis_fraenkel(e: GaussianSet) -> float:
    """Minimal symmetric-difference asymmetry over the directions pinned by
    the representation's symmetry.

    For 1D sets and slabs the minimum runs over the two profile-axis
    directions; for a half-space over its own axis; for a centered ball every
    direction gives the same value.
    """
    s = _nondegenerate_level(e)
    if isinstance(e, (IntervalUnion1D, SlabSet)):
        return min(
            symm_diff_measure(e, _axis_halfspace(e, 1.0, s)),
            symm_diff_measure(e, _axis_halfspace(e, -1.0, s)),
        )
    if isinstance(e, HalfSpace):
        flipped = HalfSpace(omega=tuple(-c for c in e.omega), s=s)
        return min(
            symm_diff_measure(e, HalfSpace(omega=e.omega, s=s)),
            symm_diff_measure(e, flipped),
        )
    if isinstance(e, CenteredBall):
        return symm_diff_measure(e, _axis_halfspace(e, 1.0, s))
    raise TypeError(f"unsupported set representation: {type(e).__name__}")


def _normal_weight_split(e: IntervalUnion1D) -> tuple[float, float]:
    """Total boundary weight with exterior normal -1 (interval left ends)
    and +1 (interval right ends)."""
    w_minus = 0.0
    w_plus = 0.0
    for lo, hi in e.intervals:
        if math.isfinite(lo):
            w_minus += gauss_weight(lo)
        if math.isfinite(hi):
            w_plus += gauss_weight(hi)
    return w_minus, w_plus


def boundary_excess(e: GaussianSet) -> float:
    """Minimal weighted boundary integral of |normal - omega|^2 over unit omega.

    Computed directly from the boundary: in 1D (and for slab profiles) the
    normal is +-1 at each endpoint and |normal - omega|^2 is 0 or 4, so the
    minimum over omega in {-1, +1} is four times the smaller of the two
    normal-weight totals. For a ball the odd part integrates to zero and the
    value is 2 * perimeter regardless of omega.
    """
    if isinstance(e, IntervalUnion1D):
        w_minus, w_plus = _normal_weight_split(e)
        return 4.0 * min(w_minus, w_plus)
    if isinstance(e, SlabSet):
        return boundary_excess(e.profile)
    if isinstance(e, HalfSpace):
        return 0.0
    if isinstance(e, CenteredBall):
        return 2.0 * perimeter(e)
    raise TypeError(f"unsupported set representation: {type(e).__name__}")


def excess_identity(e: GaussianSet) -> tuple[float, float]:
    """(direct boundary excess, 2*deficit + 2*sqrt(2 pi)*strong asymmetry).

    The two agree identically; comparing them end to end exercises every
    quantity in the chain.
    """
    direct = boundary_excess(e)
    via = 2.0 * isoperimetric_deficit(e) + 2.0 * SQRT_2PI * strong_asymmetry(e)
    return direct, via


def penalized_functional(e: GaussianSet, params: FunctionalParams) -> float:
    """perimeter + (eps/2)|b|^2 + lambda_pen * |measure - gauss_cdf(s)|."""
    norm_b = float(np.linalg.norm(barycenter(e)))
    mass_gap = abs(measure(e) - gauss_cdf(params.s))
    return perimeter(e) + 0.5 * params.eps * norm_b * norm_b + params.lambda_pen * mass_gap


def stability_params(s: float) -> FunctionalParams:
    """Penalization weights under which half-spaces are the unique minimizers.

    eps = exp(s^2/2) / (40 pi^2 (1+s^2)), lambda_pen = sqrt(2) exp(-s^2/2) /
    gauss_cdf(s). Defined for s <= 0; a positive level maps to its negation,
    matching the reduction by complement (a set at level s > 0 and its
    complement at level -s have identical perimeter, barycenter norm, and
    asymmetries).
    """
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"stability_params: s must be finite, got {s!r}")
    s_eff = -abs(s)
    eps = math.exp(0.5 * s_eff * s_eff) / (40.0 * math.pi**2 * (1.0 + s_eff * s_eff))
    # log-form guards gauss_cdf underflow at very negative levels
    log_lam = 0.5 * math.log(2.0) - 0.5 * s_eff * s_eff - log_gauss_cdf(s_eff)
    return FunctionalParams(s=s, eps=eps, lambda_pen=math.exp(log_lam))


@dataclass(frozen=True)
class QuantityBundle:
    """Every derived quantity of one set, mutually consistent."""

    mass_level: float
    measure: float
    perimeter: float
    barycenter: tuple[float, ...]
    max_barycenter_norm: float
    deficit: float
    strong_asymmetry: float
    directed_fraenkel: float
    excess: float

    def validate(self) -> None:
        if self.deficit < -1e-10:
            raise ValueError(f"negative deficit {self.deficit!r}")
        if self.strong_asymmetry < -1e-10:
            raise ValueError(f"negative strong asymmetry {self.strong_asymmetry!r}")
        if self.excess < -1e-10:
            raise ValueError(f"negative excess {self.excess!r}")
        via = 2.0 * self.deficit + 2.0 * SQRT_2PI * self.strong_asymmetry
        if abs(self.excess - via) > 1e-10 * max(1.0, abs(self.excess)):
            raise ValueError(
                f"excess {self.excess!r} inconsistent with deficit/asymmetry value {via!r}"
            )

    def as_dict(self) -> dict:
        return {
            "mass_level": self.mass_level,
            "measure": self.measure,
            "perimeter": self.perimeter,
            "barycenter": list(self.barycenter),
            "max_barycenter_norm": self.max_barycenter_norm,
            "deficit": self.deficit,
            "strong_asymmetry": self.strong_asymmetry,
            "directed_fraenkel": self.directed_fraenkel,
            "excess": self.excess,
        }


def quantities(e: GaussianSet) -> QuantityBundle:
    """Compute the full consistent bundle for a nondegenerate set."""
    s = _nondegenerate_level(e)
    bundle = QuantityBundle(
        mass_level=s,
        measure=measure(e),
        perimeter=perimeter(e),
        barycenter=tuple(float(c) for c in barycenter(e)),
        max_barycenter_norm=max_barycenter_norm(s),
        deficit=isoperimetric_deficit(e),
        strong_asymmetry=strong_asymmetry(e),
        directed_fraenkel=directed_fraenkel(e),
        excess=boundary_excess(e),
    )
    bundle.validate()
    return bundle
