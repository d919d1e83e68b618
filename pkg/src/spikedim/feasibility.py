"""Feasibility region for consistent dimension estimation.

Parameterize the growth of the ambient dimension and of the weakest spike as

    p_n = c * n^alpha   (c != 1 when alpha = 1),     lambda_d = n^beta.

Consistency of the forward-testing estimator needs three limit conditions,
which become strict exponent inequalities:

* bounded ratio p/n (alpha <= 1):   p / lambda_d^2 -> 0        <=>  beta > alpha/2
* divergent ratio  (alpha > 1):     p / (n sqrt(lambda_d)) -> 0 <=>  beta > 2(alpha-1)
                                    p / (sqrt(n) lambda_d) -> 0 <=>  beta > alpha - 1/2

Boundary points are infeasible because every condition is a strict limit.
The resulting region's lower boundary has slope 1/2 for alpha < 1 and slope
2 for alpha > 3/2, a factor-of-four steepening.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidExponent

COND_SPIKE_SQ = "p_over_lambda_sq"
COND_N_SQRT_SPIKE = "p_over_n_sqrt_lambda"
COND_SQRT_N_SPIKE = "p_over_sqrt_n_lambda"


class GrowthCase(enum.Enum):
    """Which concentration case the exponent pair falls into."""

    BOUNDED_RATIO = "p_over_n_bounded"
    DIVERGENT_RATIO = "p_over_n_divergent"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    regime: GrowthCase
    binding: tuple[str, ...]


def _check_exponents(alpha_exp: float, beta_exp: float) -> tuple[float, float]:
    alpha_exp, beta_exp = float(alpha_exp), float(beta_exp)
    if not alpha_exp >= 0:
        raise InvalidExponent(f"alpha exponent must be >= 0, got {alpha_exp}")
    if not beta_exp > 0:
        raise InvalidExponent(f"beta exponent must be > 0, got {beta_exp}")
    return alpha_exp, beta_exp


def _conditions(alpha_exp: float) -> tuple[GrowthCase, dict[str, float]]:
    """Map an alpha exponent to its case and the beta thresholds to beat."""
    if alpha_exp <= 1:
        return GrowthCase.BOUNDED_RATIO, {COND_SPIKE_SQ: alpha_exp / 2.0}
    return GrowthCase.DIVERGENT_RATIO, {
        COND_N_SQRT_SPIKE: 2.0 * (alpha_exp - 1.0),
        COND_SQRT_N_SPIKE: alpha_exp - 0.5,
    }


def feasibility(alpha_exp: float, beta_exp: float) -> FeasibilityVerdict:
    """Classify an exponent pair (alpha, beta).

    ``binding`` names the decisive conditions: the violated ones when
    infeasible, otherwise the condition(s) forming the local boundary.
    """
    alpha_exp, beta_exp = _check_exponents(alpha_exp, beta_exp)
    case, thresholds = _conditions(alpha_exp)
    boundary = max(thresholds.values())
    feasible = beta_exp > boundary
    if feasible:
        binding = tuple(
            name for name, t in thresholds.items() if t == boundary
        )
    else:
        binding = tuple(
            name for name, t in thresholds.items() if beta_exp <= t
        )
    return FeasibilityVerdict(feasible=feasible, regime=case, binding=binding)


def feasibility_boundary(alpha_exp: float) -> float:
    """Infimum of feasible beta at a given alpha (itself infeasible)."""
    if not float(alpha_exp) >= 0:
        raise InvalidExponent(f"alpha exponent must be >= 0, got {alpha_exp}")
    _, thresholds = _conditions(float(alpha_exp))
    return max(thresholds.values())


def feasibility_grid(
    resolution: int,
    alpha_range: tuple[float, float] = (0.0, 2.0),
    beta_max: float = 2.5,
) -> list[dict]:
    """Rasterize the region on a resolution x resolution grid.

    Alpha spans ``alpha_range`` inclusively; beta takes the ``resolution``
    values beta_max * i / resolution for i = 1..resolution, staying strictly
    positive.  Returns resolution^2 row dicts.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    lo, hi = alpha_range
    rows = []
    for i in range(resolution):
        alpha_exp = lo + (hi - lo) * i / (resolution - 1)
        for j in range(1, resolution + 1):
            beta_exp = beta_max * j / resolution
            verdict = feasibility(alpha_exp, beta_exp)
            rows.append(
                {
                    "alpha_exp": alpha_exp,
                    "beta_exp": beta_exp,
                    "feasible": verdict.feasible,
                    "regime": verdict.regime.value,
                }
            )
    return rows
