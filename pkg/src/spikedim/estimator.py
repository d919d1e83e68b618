"""Sequential dimension estimation by chaining per-k subsphericity tests.

The estimate is driven by a per-k accept/reject rule derived from the
configured decision:

* ``AlphaLevel(alpha)``: reject when the regime's test p-value falls below
  alpha (two-sided N(1, 4) in the high-dimensional regime, upper-tail
  chi-square in the fixed-p regime);
* ``Threshold(c)``: reject when g > c, the one-sided consistency rule whose
  default cutoff sqrt(n) grows without bound while staying O(n).

Search strategies over k:

* ``FORWARD``: test k = 0, 1, ... and return the first accepted k.
* ``BACKWARD``: test k = k_max, k_max-1, ... and return one past the first
  (i.e. largest) rejected k, or 0 when nothing rejects.
* ``BISECTION``: binary search for the first accepted k under the assumption
  that rejections precede acceptances; the skipped indices below the located
  candidate are then confirmed in ascending order, and if that scan uncovers
  an earlier acceptance (a non-monotone pattern) the scan's answer wins.
  Bisection therefore always returns the forward answer, spending extra
  tests only to locate and confirm it.

When every k <= k_max is rejected the estimate is k_max + 1 and the trace
carries ``exhausted=True``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from .spectra import SpectralSummary
from .stattests import Regime, chi_square_test, high_dim_test, statistic


class Strategy(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BISECTION = "bisection"


@dataclass(frozen=True)
class AlphaLevel:
    """Decide each k by a level-alpha hypothesis test."""

    alpha: float = 0.05

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class Threshold:
    """Decide each k by comparing g against a fixed cutoff c > 0."""

    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"threshold must be positive, got {self.c}")


@dataclass(frozen=True)
class EstimatorConfig:
    """Strategy, per-k decision rule, optional search cap and test regime."""

    strategy: Strategy = Strategy.FORWARD
    decision: AlphaLevel | Threshold = field(default_factory=AlphaLevel)
    k_max: int | None = None
    regime: Regime = Regime.HIGH_DIM


@dataclass(frozen=True)
class VisitedTest:
    """One tested dimension: statistics, diagnostic p-value and decision."""

    k: int
    g: float
    z: float
    p_value: float
    reject: bool


@dataclass(frozen=True)
class EstimateTrace:
    """Estimator result with the ordered list of visited dimensions."""

    d_hat: int
    visited: tuple[VisitedTest, ...]
    tests_run: int
    exhausted: bool


def threshold_default(n: int) -> float:
    """Default consistency cutoff sqrt(n): diverges, yet is O(n)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return math.sqrt(n)


def default_k_max(n: int, p: int, regime: Regime = Regime.HIGH_DIM) -> int:
    """Largest testable k: the statistic needs n >= k+2 and a nonempty
    trailing block; the fixed-p chain additionally needs p-k >= 2."""
    cap = p - 2 if regime is Regime.FIXED_P else p - 1
    return min(n - 2, cap)


def _forward(decide: Callable[[int], VisitedTest], k_max: int):
    visited = []
    for k in range(k_max + 1):
        v = decide(k)
        visited.append(v)
        if not v.reject:
            return k, visited, False
    return k_max + 1, visited, True


def _backward(decide: Callable[[int], VisitedTest], k_max: int):
    visited = []
    for k in range(k_max, -1, -1):
        v = decide(k)
        visited.append(v)
        if v.reject:
            return k + 1, visited, k == k_max
    return 0, visited, False


def _bisection(decide: Callable[[int], VisitedTest], k_max: int):
    cache: dict[int, VisitedTest] = {}
    visited: list[VisitedTest] = []

    def test(k: int) -> VisitedTest:
        if k not in cache:
            cache[k] = decide(k)
            visited.append(cache[k])
        return cache[k]

    lo, hi = 0, k_max + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if test(mid).reject:
            lo = mid + 1
        else:
            hi = mid
    candidate = lo
    # Confirm the monotone-boundary assumption on the indices the binary
    # search skipped; an earlier acceptance means the pattern was
    # non-monotone and the linear scan's answer is the forward answer.
    for k in range(candidate):
        if not test(k).reject:
            return k, visited, False
    if candidate == k_max + 1:
        return candidate, visited, True
    return candidate, visited, False


_SEARCHES = {
    Strategy.FORWARD: _forward,
    Strategy.BACKWARD: _backward,
    Strategy.BISECTION: _bisection,
}


def run_search(
    decide: Callable[[int], VisitedTest], k_max: int, strategy: Strategy
) -> EstimateTrace:
    """Drive a search strategy over an arbitrary per-k decision callback."""
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    d_hat, visited, exhausted = _SEARCHES[strategy](decide, k_max)
    return EstimateTrace(
        d_hat=d_hat,
        visited=tuple(visited),
        tests_run=len(visited),
        exhausted=exhausted,
    )


def estimate_dimension(
    spec: SpectralSummary,
    n: int | None = None,
    cfg: EstimatorConfig | None = None,
) -> EstimateTrace:
    """Estimate the signal dimension from a covariance spectrum.

    The per-k decision propagates :class:`DegenerateTrailingBlock` from the
    statistic should a visited trailing block be entirely zero.
    """
    cfg = cfg or EstimatorConfig()
    n = spec.n if n is None else int(n)
    k_max = cfg.k_max
    if k_max is None:
        k_max = default_k_max(n, spec.p, cfg.regime)
    if k_max > spec.p - 1:
        raise ValueError(f"k_max={k_max} exceeds p-1={spec.p - 1}")

    def decide(k: int) -> VisitedTest:
        st = statistic(spec, k, n)
        if isinstance(cfg.decision, Threshold):
            reject = st.g > cfg.decision.c
            # Diagnostic p-value against the N(1, 4) reference.
            outcome = high_dim_test(st, 0.5)
            p_value = outcome.p_value
        elif cfg.regime is Regime.FIXED_P:
            outcome = chi_square_test(st, cfg.decision.alpha)
            reject, p_value = outcome.reject, outcome.p_value
        else:
            outcome = high_dim_test(st, cfg.decision.alpha)
            reject, p_value = outcome.reject, outcome.p_value
        return VisitedTest(k=k, g=st.g, z=st.z, p_value=p_value, reject=reject)

    return run_search(decide, k_max, cfg.strategy)
