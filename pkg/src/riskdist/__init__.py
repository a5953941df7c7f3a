"""Identify two-parameter risk distributions on [0, 1] from their mean and
c-statistic."""
from .counterex import (
    median_family,
    median_of,
    mode_family,
    mode_of,
    verify_median_counterexample,
    verify_mode_counterexample,
)
from .dists import (
    Beta,
    CDFDistribution,
    Distribution,
    LogitNormal,
    Mirrored,
    ProbitNormal,
    Triangular,
    TwoComponentMixture,
    make_family,
    mirror,
)
from .estimators import McMapTransformer
from .exceptions import BracketError, DomainError, NonConvergenceError, RiskDistError
from .mapping import (
    MeanCstat,
    SolveReport,
    TargetIntegrals,
    mc_of,
    mcmap,
    mcmap_beta,
    mcmap_generic,
    mcmap_logitnorm,
    mcmap_probitnorm,
    mirror_solution,
    target_integrals,
)
from .quad import QuadResult, cdf_moments, integrate01

__version__ = "0.1.0"
