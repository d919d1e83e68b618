"""Latent signal dimension estimation for spiked covariance models.

The public surface groups into:

* :mod:`spikedim.spectra`: covariance spectra and trailing moments;
* :mod:`spikedim.stattests`: subsphericity statistics, chi-square and
  high-dimensional reference tests;
* :mod:`spikedim.estimator`: forward / backward / bisection dimension search;
* :mod:`spikedim.samplers`: seeded spiked-model and Wishart cross-block draws;
* :mod:`spikedim.harness`: Monte Carlo studies and the built-in scenarios;
* :mod:`spikedim.feasibility`: the exponent region for consistent estimation;
* :mod:`spikedim.exports`: CSV/JSON result schemas;
* :mod:`spikedim.cli`: the ``spikedim`` command-line tool.
"""

from .errors import (
    ConfigError,
    DegenerateTrailingBlock,
    InsufficientDf,
    InvalidExponent,
    InvalidModel,
    KOutOfRange,
    NonFiniteInput,
    SpikedimError,
    TooFewRows,
)
from .estimator import (
    AlphaLevel,
    EstimateTrace,
    EstimatorConfig,
    Strategy,
    Threshold,
    VisitedTest,
    estimate_dimension,
    threshold_default,
)
from .feasibility import (
    FeasibilityVerdict,
    GrowthCase,
    feasibility,
    feasibility_boundary,
    feasibility_grid,
)
from .harness import (
    HistogramRun,
    PowerRule,
    RejectionTable,
    SimulationSetting,
    preset,
    run_cross_trace_study,
    run_histogram_study,
    run_rejection_study,
)
from .samplers import (
    Family,
    LaplaceMixtureParams,
    SpikedModel,
    sample_laplace_mixture_scalar,
    sample_spiked,
    wishart_cross_moments,
    wishart_cross_trace,
)
from .spectra import (
    DataMatrix,
    SpectralSummary,
    TrailingMoments,
    sample_covariance_spectrum,
    trailing_moments,
)
from .stattests import (
    Regime,
    SubsphericityStat,
    TestOutcome,
    chi_square_cdf,
    chi_square_test,
    high_dim_test,
    normal_cdf,
    statistic,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaLevel",
    "ConfigError",
    "DataMatrix",
    "DegenerateTrailingBlock",
    "EstimateTrace",
    "EstimatorConfig",
    "Family",
    "FeasibilityVerdict",
    "GrowthCase",
    "HistogramRun",
    "InsufficientDf",
    "InvalidExponent",
    "InvalidModel",
    "KOutOfRange",
    "LaplaceMixtureParams",
    "NonFiniteInput",
    "PowerRule",
    "Regime",
    "RejectionTable",
    "SimulationSetting",
    "SpectralSummary",
    "SpikedModel",
    "SpikedimError",
    "Strategy",
    "SubsphericityStat",
    "TestOutcome",
    "Threshold",
    "TooFewRows",
    "TrailingMoments",
    "VisitedTest",
    "chi_square_cdf",
    "chi_square_test",
    "estimate_dimension",
    "feasibility",
    "feasibility_boundary",
    "feasibility_grid",
    "high_dim_test",
    "normal_cdf",
    "preset",
    "run_cross_trace_study",
    "run_histogram_study",
    "run_rejection_study",
    "sample_covariance_spectrum",
    "sample_laplace_mixture_scalar",
    "sample_spiked",
    "statistic",
    "threshold_default",
    "trailing_moments",
    "wishart_cross_moments",
    "wishart_cross_trace",
]
