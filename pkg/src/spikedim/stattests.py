"""Subsphericity test statistics and their reference distributions.

For a hypothesized signal dimension k, the raw statistic is the relative
dispersion of the trailing eigenvalue block,

    T = m2 / m1^2 - 1,

with the centered form g = (n-k-1) * T - (p-k) and the standardized value
z = (g - 1) / 2.  Two reference regimes are supported:

* ``FIXED_P``: the classical test refers s = n (p-k) T / 2 to a chi-square
  with (p-k)(p-k+1)/2 - 1 degrees of freedom, rejecting for large s.
* ``HIGH_DIM``: g is referred to its N(1, 4) limit with a two-sided
  rejection region |z| > z_{1-alpha/2}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from scipy.special import chdtr, chdtrc, ndtr

from .errors import DegenerateTrailingBlock, InsufficientDf, KOutOfRange
from .spectra import SpectralSummary, trailing_moments


class Regime(enum.Enum):
    """Which reference distribution a test outcome used."""

    FIXED_P = "fixed-p"
    HIGH_DIM = "high-dim"


@dataclass(frozen=True)
class SubsphericityStat:
    """Raw, centered and standardized dispersion statistics at dimension k."""

    k: int
    T: float
    g: float
    z: float
    n: int
    p: int


@dataclass(frozen=True)
class TestOutcome:
    """A single hypothesis-test decision; ``reject`` iff ``p_value < alpha``."""

    stat: SubsphericityStat
    regime: Regime
    p_value: float
    alpha: float
    reject: bool


def normal_cdf(x: float) -> float:
    """Standard normal CDF (absolute error below 1e-10)."""
    return float(ndtr(x))


def chi_square_cdf(x: float, df: float) -> float:
    """Chi-square CDF via the regularized incomplete gamma (error below 1e-8)."""
    if df < 1:
        raise InsufficientDf(f"df must be >= 1, got {df}")
    if x <= 0:
        return 0.0
    return float(chdtr(df, x))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    return alpha


def statistic(spec: SpectralSummary, k: int, n: int | None = None) -> SubsphericityStat:
    """Dispersion statistics of the trailing p-k block of ``spec``.

    ``n`` defaults to the sample size recorded in the summary; it may be
    overridden for synthetic spectra.  Requires n >= k+2 so the centering
    multiplier n-k-1 is positive.

    Raises
    ------
    DegenerateTrailingBlock
        If every trailing eigenvalue is zero (m1 = 0).
    """
    n = spec.n if n is None else int(n)
    k = int(k)
    if k < 0 or k > spec.p - 1:
        raise KOutOfRange(f"k must be in [0, {spec.p - 1}], got {k}")
    if n < k + 2:
        raise ValueError(f"need n >= k+2 (n={n}, k={k})")
    tm = trailing_moments(spec, k)
    if tm.m1 <= 0.0:
        raise DegenerateTrailingBlock(
            f"all {tm.r} trailing eigenvalues are zero at k={k}"
        )
    T = tm.m2 / (tm.m1 * tm.m1) - 1.0
    g = (n - k - 1) * T - (spec.p - k)
    z = (g - 1.0) / 2.0
    return SubsphericityStat(k=k, T=T, g=g, z=z, n=n, p=spec.p)


def chi_square_test(stat: SubsphericityStat, alpha: float) -> TestOutcome:
    """Classical fixed-p test: upper-tail chi-square on s = n (p-k) T / 2."""
    alpha = _check_alpha(alpha)
    r = stat.p - stat.k
    df = r * (r + 1) // 2 - 1
    if df < 1:
        raise InsufficientDf(f"p-k={r} leaves df={df} < 1")
    s = max(0.5 * stat.n * r * stat.T, 0.0)
    p_value = float(chdtrc(df, s))
    return TestOutcome(
        stat=stat,
        regime=Regime.FIXED_P,
        p_value=p_value,
        alpha=alpha,
        reject=p_value < alpha,
    )


def high_dim_test(stat: SubsphericityStat, alpha: float) -> TestOutcome:
    """High-dimensional test: two-sided N(1, 4) reference on g.

    The p-value is 2 * (1 - Phi(|z|)), so rejection at level alpha matches
    |z| > z_{1-alpha/2}.
    """
    alpha = _check_alpha(alpha)
    p_value = 2.0 * float(ndtr(-abs(stat.z)))
    return TestOutcome(
        stat=stat,
        regime=Regime.HIGH_DIM,
        p_value=p_value,
        alpha=alpha,
        reject=p_value < alpha,
    )
