"""Phase estimation by the ideal (canonical) measurement under photon loss.

The pipeline: build an input amplitude vector, push it through the
beam-splitter loss channel, and read off the phase distribution, sharpness,
and Holevo variance, either in closed form or through the reduced density
matrix. The sweep module scans photon number to locate the loss-dependent
optimum and the sub-shot-noise operating range.
"""

from .loss import (
    DENSITY_MATRIX_MAX_PHOTONS,
    LossChannel,
    PureLossyState,
    ReducedDensity,
    channel_from_loss,
    pure_lossy_state,
    reduced_density,
)
from .povm import (
    PhaseDistribution,
    PhaseEstimate,
    distribution,
    distribution_from_density,
    holevo,
    lossless_reference,
    sharpness_closed,
)
from .spin import MAX_PHOTON_NUMBER, HalfInt, SpinRange, from_photon_number, k_of
from .states import AmplitudeVector, optimal_amplitudes
from .sweep import (
    DEFAULT_MAX_PHOTONS,
    CurvePoint,
    SweepResult,
    curve,
    find_n_opt,
    find_subshot_bound,
    nopt_vs_loss,
)
from .wigner import d_element, jacobi_poly, log_factorial

__version__ = "0.1.0"

__all__ = [
    "AmplitudeVector",
    "CurvePoint",
    "DEFAULT_MAX_PHOTONS",
    "DENSITY_MATRIX_MAX_PHOTONS",
    "HalfInt",
    "LossChannel",
    "MAX_PHOTON_NUMBER",
    "PhaseDistribution",
    "PhaseEstimate",
    "PureLossyState",
    "ReducedDensity",
    "SpinRange",
    "SweepResult",
    "channel_from_loss",
    "curve",
    "d_element",
    "distribution",
    "distribution_from_density",
    "find_n_opt",
    "find_subshot_bound",
    "from_photon_number",
    "holevo",
    "jacobi_poly",
    "k_of",
    "log_factorial",
    "lossless_reference",
    "nopt_vs_loss",
    "optimal_amplitudes",
    "pure_lossy_state",
    "reduced_density",
    "sharpness_closed",
]
