"""Monte Carlo experiment engine.

A :class:`SimulationSetting` pins one scenario: sample sizes, a power rule
p_n = round(c * n^alpha) for the ambient dimension, power rules for the
spike variances, a noise family and the dimensions to test.  Studies run a
fixed number of replicates, replicate r drawing from the substream keyed by
``seed XOR r``, so tables are bit-stable for any worker count.

Four built-in presets cover the standard scenarios:

* setting1: d=3, n in {216, 512}, p = n^(3/4), spikes (3n, sqrt(n), sqrt(n))
* setting2: d=3, n in {216, 512}, p = n^(3/4), spikes (3 sqrt(n), n^(1/4), n^(1/4))
* setting3: d=2, n in {36, 64},  p = n^(3/2), spikes (2 n^2, n^(3/2))
* setting4: d=2, n in {36, 64},  p = n^(3/2), spikes (2 n^2, n^(1/4))

Settings 1 and 3 lie inside the feasibility region of
:mod:`spikedim.feasibility`; 2 and 4 do not.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import SpikedimError
from .rng import check_seed
from .samplers import (
    Family,
    SpikedModel,
    sample_spiked,
    wishart_cross_coordinates,
    wishart_cross_moments,
)
from .spectra import sample_covariance_spectrum
from .stattests import high_dim_test, statistic

REFERENCE_MEAN = 1.0
REFERENCE_VARIANCE = 4.0


@dataclass(frozen=True)
class PowerRule:
    """coefficient * n^exponent, evaluated at integer sample sizes."""

    coefficient: float
    exponent: float

    def __call__(self, n: int) -> float:
        return self.coefficient * float(n) ** self.exponent


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SimulationSetting:
    """One Monte Carlo scenario; spikes must evaluate above the unit noise."""

    label: str
    n_values: tuple[int, ...]
    dim_rule: PowerRule
    spike_rules: tuple[PowerRule, ...]
    hypotheses: tuple[int, ...]
    family: Family = Family.GAUSSIAN
    replicates: int = 2000
    noise_var: float = 1.0

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not self.n_values:
            raise ValueError("need at least one sample size")

    @property
    def d(self) -> int:
        return len(self.spike_rules)

    def dimension_for(self, n: int) -> int:
        return round_half_up(self.dim_rule(n))

    def model_for(self, n: int) -> SpikedModel:
        spikes = tuple(rule(n) for rule in self.spike_rules)
        return SpikedModel(
            n=n,
            d=self.d,
            spikes=spikes,
            p=self.dimension_for(n),
            noise_var=self.noise_var,
            family=self.family,
        )


PRESETS: dict[str, SimulationSetting] = {
    "setting1": SimulationSetting(
        label="setting1",
        n_values=(216, 512),
        dim_rule=PowerRule(1.0, 0.75),
        spike_rules=(PowerRule(3.0, 1.0), PowerRule(1.0, 0.5), PowerRule(1.0, 0.5)),
        hypotheses=(2, 3, 4),
    ),
    "setting2": SimulationSetting(
        label="setting2",
        n_values=(216, 512),
        dim_rule=PowerRule(1.0, 0.75),
        spike_rules=(PowerRule(3.0, 0.5), PowerRule(1.0, 0.25), PowerRule(1.0, 0.25)),
        hypotheses=(2, 3, 4),
    ),
    "setting3": SimulationSetting(
        label="setting3",
        n_values=(36, 64),
        dim_rule=PowerRule(1.0, 1.5),
        spike_rules=(PowerRule(2.0, 2.0), PowerRule(1.0, 1.5)),
        hypotheses=(1, 2, 3),
    ),
    "setting4": SimulationSetting(
        label="setting4",
        n_values=(36, 64),
        dim_rule=PowerRule(1.0, 1.5),
        spike_rules=(PowerRule(2.0, 2.0), PowerRule(1.0, 0.25)),
        hypotheses=(1, 2, 3),
    ),
}


def preset(
    name: str,
    family: Family | None = None,
    replicates: int | None = None,
    n_values: tuple[int, ...] | None = None,
    hypotheses: tuple[int, ...] | None = None,
) -> SimulationSetting:
    """Built-in setting by name, with optional overrides."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    setting = PRESETS[name]
    changes: dict = {}
    if family is not None and family is not setting.family:
        changes["family"] = family
        suffix = "" if family is Family.GAUSSIAN else f"-{family.value}"
        changes["label"] = f"{name}{suffix}"
    if replicates is not None:
        changes["replicates"] = int(replicates)
    if n_values is not None:
        changes["n_values"] = tuple(int(v) for v in n_values)
    if hypotheses is not None:
        changes["hypotheses"] = tuple(int(k) for k in hypotheses)
    return dataclasses.replace(setting, **changes) if changes else setting


@dataclass(frozen=True)
class RejectionRow:
    n: int
    k: int
    rate: float


@dataclass(frozen=True)
class RejectionTable:
    """Per-(n, k) rejection frequencies of the two-sided high-dim test."""

    setting: str
    alpha: float
    seed: int
    replicates: int
    rows: tuple[RejectionRow, ...]

    def rate(self, n: int, k: int) -> float:
        for row in self.rows:
            if row.n == n and row.k == k:
                return row.rate
        raise KeyError(f"no cell for n={n}, k={k}")


@dataclass(frozen=True)
class HistogramRun:
    """All replicate g-values at the true dimension, plus summary stats."""

    setting: str
    n: int
    d: int
    seed: int
    g_values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g_values, dtype=float)
        g.flags.writeable = False
        object.__setattr__(self, "g_values", g)

    @property
    def mean(self) -> float:
        if self.g_values.size == 0:
            return float("nan")
        return float(self.g_values.mean())

    @property
    def variance(self) -> float:
        if self.g_values.size < 2:
            return float("nan")
        return float(self.g_values.var(ddof=1))

    @property
    def reference(self) -> tuple[float, float]:
        return (REFERENCE_MEAN, REFERENCE_VARIANCE)


class ReplicateError(SpikedimError):
    """A replicate failed; the message carries the replicate index."""


def _replicate_stats(setting: SimulationSetting, n: int, ks, seed: int, r: int):
    """Sample one replicate and return its statistics at each k in ks."""
    try:
        data = sample_spiked(setting.model_for(n), seed ^ r)
        spec = sample_covariance_spectrum(data)
        return [statistic(spec, k, n) for k in ks]
    except SpikedimError as exc:
        raise ReplicateError(
            f"replicate {r} of {setting.label} at n={n} failed: {exc}"
        ) from exc


def _map_replicates(fn, count: int, threads: int):
    """Evaluate fn(r) for r in range(count), results in replicate order."""
    if threads <= 1:
        return [fn(r) for r in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))


def run_rejection_study(
    setting: SimulationSetting, alpha: float, seed: int, threads: int = 1
) -> RejectionTable:
    """Rejection frequency of each hypothesized k, per sample size.

    Each replicate draws a data set, computes g at every requested k and
    applies the two-sided level-alpha decision.  Replicate r uses the
    substream keyed by ``seed XOR r``; aggregation is in replicate order.
    """
    seed = check_seed(seed)
    ks = setting.hypotheses
    rows = []
    for n in setting.n_values:

        def one(r: int, n=n):
            stats = _replicate_stats(setting, n, ks, seed, r)
            return [high_dim_test(st, alpha).reject for st in stats]

        decisions = np.asarray(_map_replicates(one, setting.replicates, threads))
        rates = decisions.sum(axis=0) / setting.replicates
        rows.extend(
            RejectionRow(n=n, k=k, rate=float(rate)) for k, rate in zip(ks, rates)
        )
    return RejectionTable(
        setting=setting.label,
        alpha=float(alpha),
        seed=seed,
        replicates=setting.replicates,
        rows=tuple(rows),
    )


def run_histogram_study(
    setting: SimulationSetting,
    seed: int,
    n: int | None = None,
    threads: int = 1,
) -> HistogramRun:
    """Collect every replicate's g at the true dimension d for one n."""
    seed = check_seed(seed)
    n = setting.n_values[0] if n is None else int(n)
    d = setting.d

    def one(r: int):
        return _replicate_stats(setting, n, (d,), seed, r)[0].g

    g = np.asarray(_map_replicates(one, setting.replicates, threads))
    return HistogramRun(setting=setting.label, n=n, d=d, seed=seed, g_values=g)


@dataclass(frozen=True)
class CrossTraceStudy:
    """Empirical vs exact moments of per-coordinate Wishart cross-traces."""

    n: int
    p: int
    d: int
    seed: int
    matrix_replicates: int
    values: int
    empirical_mean: float
    empirical_variance: float
    mean_se: float
    variance_se: float
    exact_mean: float
    exact_variance: float


def run_cross_trace_study(
    n: int,
    p: int,
    d: int,
    seed: int,
    min_values: int = 100_000,
    threads: int = 1,
) -> CrossTraceStudy:
    """Monte Carlo check of the per-coordinate cross-trace moments.

    Draws ceil(min_values / d) matrices, each contributing d per-coordinate
    values.  Standard errors are computed on per-matrix averages so the
    within-matrix correlation between coordinates never understates them.
    """
    seed = check_seed(seed)
    reps = -(-min_values // d)
    rows = _map_replicates(
        lambda r: wishart_cross_coordinates(n, p, d, seed ^ r), reps, threads
    )
    y = np.asarray(rows)  # (reps, d)
    total = y.size
    mean = float(y.mean())
    mean_se = float(y.mean(axis=1).std(ddof=1)) / math.sqrt(reps)
    sq_dev = (y - mean) ** 2
    variance = float(sq_dev.sum()) / (total - 1)
    variance_se = float(sq_dev.mean(axis=1).std(ddof=1)) / math.sqrt(reps)
    exact_mean, exact_variance = wishart_cross_moments(n, p, d)
    return CrossTraceStudy(
        n=n,
        p=p,
        d=d,
        seed=seed,
        matrix_replicates=reps,
        values=total,
        empirical_mean=mean,
        empirical_variance=variance,
        mean_se=mean_se,
        variance_se=variance_se,
        exact_mean=exact_mean,
        exact_variance=exact_variance,
    )
