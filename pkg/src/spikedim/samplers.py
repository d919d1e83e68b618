"""Deterministic samplers for spiked models and Wishart cross-blocks.

Data models
-----------
``sample_spiked`` draws n independent rows whose j-th coordinate has variance
``spikes[j]`` for j < d and ``noise_var`` otherwise, with independent
coordinates.  Coordinates are either Gaussian or drawn from a symmetric
two-component Laplace location mixture whose parameters are chosen to match
the standard normal's first four moments (see ``LaplaceMixtureParams``).

Draw-order contract (frozen for reproducibility): the Gaussian sampler makes
one uniform block of shape (n, p), filled in C order, mapped through the
inverse normal CDF.  The mixture sampler makes two consecutive (n, p)
uniform blocks: the first selects each entry's mixture component, the second
feeds the Laplace inverse CDF.

Wishart cross-blocks
--------------------
``wishart_cross_trace`` draws Z as n x p iid standard normal, forms
W = Z'Z/n, and returns tr(W12 W21) where W12 is the d x (p-d) off-diagonal
block; ``wishart_cross_coordinates`` returns the d per-coordinate summands.
Their exact per-coordinate moments,

    mean = (p-d)/n,     variance = 2 (p-d) {2 + (p-d) + n} / n^3,

are exposed by ``wishart_cross_moments`` for oracle checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidModel
from .rng import generator, open_uniforms, standard_normals
from .spectra import DataMatrix


class Family(enum.Enum):
    GAUSSIAN = "gaussian"
    LAPLACE_MIXTURE = "laplace"


@dataclass(frozen=True)
class LaplaceMixtureParams:
    """Parameters of the symmetric mixture (1/2) L(-mu, b) + (1/2) L(mu, b).

    ``b`` is the Laplace scale (component variance 2 b^2) and ``mu`` the
    component location.  The mixture has mean 0 and variance mu^2 + 2 b^2.
    ``moment_matched()`` returns the canonical instance with b^2 = sqrt(3/2)-1
    and mu^2 = 1 - 2 b^2, the unique choice (given that location/scale
    coupling) making the variance 1 and the fourth moment 3, i.e. matching
    the standard normal's first four moments.
    """

    b: float
    mu: float

    def __post_init__(self):
        if not (self.b >= 0 and math.isfinite(self.b)):
            raise ValueError(f"b must be finite and >= 0, got {self.b}")
        if not (self.mu >= 0 and math.isfinite(self.mu)):
            raise ValueError(f"mu must be finite and >= 0, got {self.mu}")

    @classmethod
    def moment_matched(cls) -> "LaplaceMixtureParams":
        b_sq = math.sqrt(1.5) - 1.0
        return cls(b=math.sqrt(b_sq), mu=math.sqrt(1.0 - 2.0 * b_sq))

    @property
    def variance(self) -> float:
        return self.mu**2 + 2.0 * self.b**2

    @property
    def fourth_moment(self) -> float:
        return self.mu**4 + 12.0 * self.mu**2 * self.b**2 + 24.0 * self.b**4


@dataclass(frozen=True)
class SpikedModel:
    """A spiked diagonal covariance model for n observations in p dimensions."""

    n: int
    d: int
    spikes: tuple[float, ...]
    p: int
    noise_var: float = 1.0
    family: Family = Family.GAUSSIAN

    def __post_init__(self):
        object.__setattr__(self, "spikes", tuple(float(s) for s in self.spikes))
        if self.n < 2:
            raise InvalidModel(f"need n >= 2, got {self.n}")
        if self.d != len(self.spikes):
            raise InvalidModel(f"d={self.d} but {len(self.spikes)} spikes given")
        if not self.d < self.p:
            raise InvalidModel(f"need d < p, got d={self.d}, p={self.p}")
        if not self.noise_var > 0:
            raise InvalidModel(f"noise_var must be > 0, got {self.noise_var}")
        if any(not math.isfinite(s) for s in self.spikes):
            raise InvalidModel("spikes must be finite")
        if any(a < b for a, b in zip(self.spikes, self.spikes[1:])):
            raise InvalidModel(f"spikes must be non-increasing, got {self.spikes}")
        if self.spikes and self.spikes[-1] <= self.noise_var:
            raise InvalidModel(
                f"weakest spike {self.spikes[-1]} must exceed noise_var "
                f"{self.noise_var}"
            )


def laplace_mixture_draws(
    params: LaplaceMixtureParams, gen: np.random.Generator, size
) -> np.ndarray:
    """Mixture draws using one uniform block for the component sign and one
    for the Laplace inverse CDF."""
    signs = np.where(gen.random(size) < 0.5, -1.0, 1.0)
    u = open_uniforms(gen, size)
    w = u - 0.5
    laplace = -params.b * np.sign(w) * np.log1p(-2.0 * np.abs(w))
    return signs * params.mu + laplace


def sample_laplace_mixture_scalar(
    params: LaplaceMixtureParams, gen: np.random.Generator
) -> float:
    """One mixture draw from an explicit generator stream."""
    return float(laplace_mixture_draws(params, gen, size=()))


def sample_spiked(model: SpikedModel, seed: int) -> DataMatrix:
    """Draw an n x p data matrix from ``model`` with a fixed seed.

    Column j is an iid sample with mean 0 and variance ``spikes[j]`` for
    j < d, ``noise_var`` otherwise; standardized draws are scaled by each
    coordinate's standard deviation.
    """
    gen = generator(seed)
    sd = np.full(model.p, math.sqrt(model.noise_var))
    sd[: model.d] = np.sqrt(model.spikes)
    if model.family is Family.GAUSSIAN:
        z = standard_normals(gen, (model.n, model.p))
    else:
        z = laplace_mixture_draws(
            LaplaceMixtureParams.moment_matched(), gen, (model.n, model.p)
        )
    return DataMatrix(z * sd)


def wishart_cross_coordinates(n: int, p: int, d: int, seed: int) -> np.ndarray:
    """Per-coordinate cross-block traces y_j = sum_k W[j, k]^2, j < d <= k.

    Draws Z as n x p iid standard normal and forms only the needed block
    W12 = Z1'Z2 / n of W = Z'Z / n.
    """
    if not 1 <= d < p:
        raise ValueError(f"need 1 <= d < p, got d={d}, p={p}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    gen = generator(seed)
    z = standard_normals(gen, (n, p))
    block = z[:, :d].T @ z[:, d:] / n
    return np.einsum("jk,jk->j", block, block)


def wishart_cross_trace(n: int, p: int, d: int, seed: int) -> float:
    """tr(W12 W21) for W = Z'Z/n: the sum of the per-coordinate traces."""
    return float(wishart_cross_coordinates(n, p, d, seed).sum())


def wishart_cross_moments(n: int, p: int, d: int) -> tuple[float, float]:
    """Exact (mean, variance) of a single per-coordinate cross-block trace."""
    r = p - d
    mean = r / n
    variance = 2.0 * r * (2.0 + r + n) / n**3
    return mean, variance
