"""Sample covariance spectra and trailing eigenvalue moments.

The dispersion statistics downstream depend on the data only through the
eigenvalues of the unbiased sample covariance matrix

    S = (1/(n-1)) * sum_i (x_i - xbar)(x_i - xbar)^T,

and through the first two sample moments of its trailing eigenvalue block.
When p exceeds n-1 the spectrum is rank deficient; the nonzero eigenvalues
are computed from the (n x n) Gram matrix of centered rows, and the missing
p - (n-1) eigenvalues are implied zeros that still enter every moment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KOutOfRange, NonFiniteInput, TooFewRows

# Eigenvalues below RANK_TOL * (leading eigenvalue) are clamped to exact zero
# so numerical rank decisions are deterministic.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class DataMatrix:
    """An n x p matrix of observations, rows = samples.

    Raises
    ------
    TooFewRows
        If n < 2 (centering needs at least two rows).
    NonFiniteInput
        If any entry is NaN or infinite.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {values.shape}")
        if values.shape[0] < 2:
            raise TooFewRows(f"need at least 2 rows, got {values.shape[0]}")
        if values.shape[1] < 1:
            raise ValueError("need at least one column")
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("data matrix contains NaN or Inf entries")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class SpectralSummary:
    """Eigenvalues of a sample covariance matrix, sorted descending.

    ``eigenvalues`` has length min(n-1, p).  When ``rank_deficient`` is set
    (p > n-1) the full p-spectrum is the stored values padded with implied
    zeros; :meth:`full_spectrum` materializes that padding.
    """

    eigenvalues: np.ndarray
    p: int
    n: int
    rank_deficient: bool

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        if ev.ndim != 1:
            raise ValueError("eigenvalues must be a 1-d array")
        if ev.size != min(self.n - 1, self.p):
            raise ValueError(
                f"expected {min(self.n - 1, self.p)} eigenvalues for n={self.n}, "
                f"p={self.p}, got {ev.size}"
            )
        if np.any(ev[:-1] < ev[1:]):
            raise ValueError("eigenvalues must be sorted non-increasing")
        if ev.size and ev[-1] < 0:
            raise ValueError("eigenvalues must be non-negative after clamping")
        ev = ev.copy()
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)

    @classmethod
    def from_eigenvalues(cls, values, n: int, p: int | None = None) -> "SpectralSummary":
        """Build a summary from a raw spectrum (descending or any order).

        Handy for synthetic spectra in tests and for statistics that are
        defined directly on eigenvalues.  ``p`` defaults to ``len(values)``;
        a larger ``p`` declares implied trailing zeros.
        """
        ev = np.sort(np.asarray(values, dtype=float))[::-1]
        if p is None:
            p = ev.size
        if p < ev.size:
            raise ValueError(f"p={p} smaller than number of eigenvalues {ev.size}")
        stored = min(n - 1, p)
        if ev.size > stored:
            # Only min(n-1, p) values can be nonzero; the rest must be zero.
            extra = ev[stored:]
            if np.any(extra != 0.0):
                raise ValueError(
                    f"spectrum has {ev.size} nonzero-capable entries but only "
                    f"{stored} fit for n={n}, p={p}"
                )
            ev = ev[:stored]
        elif ev.size < stored:
            ev = np.concatenate([ev, np.zeros(stored - ev.size)])
        return cls(eigenvalues=ev, p=int(p), n=int(n), rank_deficient=p > n - 1)

    def full_spectrum(self) -> np.ndarray:
        """Length-p spectrum including implied zeros."""
        if self.eigenvalues.size == self.p:
            return self.eigenvalues
        out = np.zeros(self.p)
        out[: self.eigenvalues.size] = self.eigenvalues
        return out


@dataclass(frozen=True)
class TrailingMoments:
    """First two sample moments of the trailing p-k eigenvalues.

    ``m1`` and ``m2`` average over the full p-spectrum (implied zeros
    included), so ``r = p - k`` is always the divisor.
    """

    m1: float
    m2: float
    k: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("trailing block must contain at least one eigenvalue")
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("trailing moments must be non-negative")
        # Power-mean inequality m2 >= m1^2, allowing for rounding noise.
        if self.m2 < self.m1**2 - 1e-9 * max(self.m1**2, 1e-300):
            raise ValueError(f"m2={self.m2} < m1^2={self.m1 ** 2}")


def _clamp_spectrum(ev: np.ndarray) -> np.ndarray:
    """Sort descending and clamp values below RANK_TOL * leading to zero."""
    ev = np.sort(ev)[::-1]
    lead = max(float(ev[0]), 0.0) if ev.size else 0.0
    ev[ev < RANK_TOL * lead] = 0.0
    if lead == 0.0:
        ev[:] = 0.0
    return ev


def sample_covariance_spectrum(X: DataMatrix) -> SpectralSummary:
    """Eigenvalues of the unbiased sample covariance of ``X``.

    For p <= n-1 this diagonalizes the p x p covariance directly.  For
    p > n-1 it diagonalizes the n x n Gram matrix of centered rows divided
    by n-1, whose nonzero spectrum equals that of the covariance; the
    direction annihilated by centering is dropped, leaving n-1 stored
    eigenvalues.
    """
    A = X.values
    n, p = A.shape
    centered = A - A.mean(axis=0)
    if p <= n - 1:
        cov = centered.T @ centered / (n - 1)
        ev = np.linalg.eigvalsh(cov)
        stored = _clamp_spectrum(ev)
    else:
        gram = centered @ centered.T / (n - 1)
        ev = np.linalg.eigvalsh(gram)
        stored = _clamp_spectrum(ev)[: n - 1]
    return SpectralSummary(
        eigenvalues=stored, p=p, n=n, rank_deficient=p > n - 1
    )


def trailing_moments(spec: SpectralSummary, k: int) -> TrailingMoments:
    """Moments m1, m2 of the last p-k eigenvalues of ``spec``.

    Implied zeros count toward the divisor r = p - k but not the sums, so
    slicing the stored spectrum suffices.
    """
    k = int(k)
    if k < 0 or k >= spec.p:
        raise KOutOfRange(f"k must be in [0, {spec.p - 1}], got {k}")
    r = spec.p - k
    tail = spec.eigenvalues[k:]
    m1 = float(tail.sum()) / r
    m2 = float((tail * tail).sum()) / r
    return TrailingMoments(m1=m1, m2=m2, k=k, r=r)
