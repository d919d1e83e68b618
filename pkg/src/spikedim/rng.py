"""Deterministic random number generation.

All sampling in this package is driven by the counter-based Philox-4x64-10
bit generator, keyed directly by a 64-bit unsigned seed.  Parallel replicates
use substreams keyed by ``seed XOR replicate_index``, so results never depend
on scheduling or worker count.

Variate transforms are frozen for cross-platform reproducibility:

* uniforms are ``Generator.random()`` doubles in [0, 1), shifted by 2**-54 so
  they lie strictly inside (0, 1);
* standard normals are the inverse normal CDF applied to those uniforms;
* Laplace variates use the textbook inverse CDF (see :mod:`spikedim.samplers`).
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

MAX_SEED = 2**64

# Smallest uniform offset: random() yields multiples of 2**-53 in [0, 1), so
# adding 2**-54 keeps every value strictly inside (0, 1).
_UNIFORM_SHIFT = 2.0**-54


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed and return it as a plain int."""
    seed = int(seed)
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed must be in [0, 2^64), got {seed}")
    return seed


def generator(seed: int) -> np.random.Generator:
    """Philox generator keyed by ``seed``."""
    return np.random.Generator(np.random.Philox(key=check_seed(seed)))


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for replicate ``index``, keyed by ``seed XOR index``."""
    if index < 0:
        raise ValueError(f"substream index must be >= 0, got {index}")
    return generator(check_seed(seed) ^ int(index))


def open_uniforms(gen: np.random.Generator, size) -> np.ndarray:
    """Uniform draws strictly inside (0, 1)."""
    return gen.random(size) + _UNIFORM_SHIFT


def standard_normals(gen: np.random.Generator, size) -> np.ndarray:
    """Standard normal draws via the inverse-CDF transform."""
    return ndtri(open_uniforms(gen, size))
