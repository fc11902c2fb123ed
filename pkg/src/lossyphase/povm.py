"""Ideal phase-measurement statistics: distribution, sharpness, Holevo variance.

The canonical measurement projects onto equal-weight phase states of the full
photon number, so with loss only the zero-photons-lost sector of the density
matrix contributes. Two routes to the same distribution are provided: the
closed form built directly from the input amplitudes, and the extraction from
a reduced density matrix; their agreement is a standing cross-check.

With loss the distribution integrates to less than one (the measured sector
is reached with probability sum_mu psi_mu^2 (1-L)^(j+mu)). That raw quantity
is the default everywhere; dividing the sharpness by the integral is offered
behind an explicit ``normalized`` flag and is never switched on silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .loss import LossChannel, ReducedDensity
from .spin import HalfInt
from .states import AmplitudeVector

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class PhaseDistribution:
    """Trigonometric-polynomial phase distribution via its coefficient matrix.

    P(phi) = sum_{mu,nu} coeff[mu,nu] e^{i(nu-mu)phi}; row/column index i
    corresponds to mu = -j + i, so only integer harmonics appear. The matrix
    is real and symmetric. When the distribution comes from a pure input the
    factor vector g with coeff = outer(g,g)/2pi is kept alongside, which lets
    evaluation go through the manifestly nonnegative |G(phi)|^2 form.
    """

    j: HalfInt
    coeff: np.ndarray
    factor: np.ndarray | None = None

    def __post_init__(self):
        dim = self.j.twice + 1
        arr = np.asarray(self.coeff, dtype=float)
        if arr.shape != (dim, dim):
            raise ValueError(f"coeff has shape {arr.shape}, expected {(dim, dim)}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coeff entries must be finite")
        if np.max(np.abs(arr - arr.T), initial=0.0) > 1e-12:
            raise ValueError("coeff must be symmetric")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeff", arr)
        if self.factor is not None:
            g = np.asarray(self.factor, dtype=float).copy()
            if g.shape != (dim,):
                raise ValueError(f"factor has shape {g.shape}, expected {(dim,)}")
            g.flags.writeable = False
            object.__setattr__(self, "factor", g)

    def evaluate(self, phi) -> np.ndarray:
        """P(phi) on an array of angles."""
        phi = np.asarray(phi, dtype=float)
        if self.factor is not None:
            harmonics = np.arange(self.factor.shape[0])
            g_of_phi = np.exp(1j * np.multiply.outer(phi, harmonics)) @ self.factor
            return np.abs(g_of_phi) ** 2 / TWO_PI
        dim = self.coeff.shape[0]
        result = np.full(phi.shape, np.trace(self.coeff))
        for d in range(1, dim):
            a_d = float(np.trace(self.coeff, offset=d))
            if a_d != 0.0:
                result += 2.0 * a_d * np.cos(d * phi)
        return result

    def total_mass(self) -> float:
        """Integral of P over a full turn; below 1 whenever photons are lost."""
        return TWO_PI * float(np.trace(self.coeff))

    def fourier_sharpness(self) -> float:
        """First Fourier coefficient int P(phi) e^{i phi} dphi, summed exactly.

        Real by construction: the coefficient matrix is real and the mean
        phase of every state built here is zero, so no centering is needed.
        """
        return TWO_PI * float(np.trace(self.coeff, offset=-1))


def _survival_factors(state: AmplitudeVector, channel: LossChannel) -> np.ndarray:
    """cos(theta/2)^(j+mu) over the ladder, in the log domain to dodge underflow."""
    t = np.arange(state.n_photons + 1, dtype=float)
    c = channel.amplitude_transmission
    if c >= 1.0:
        return np.ones_like(t)
    return np.exp(t * math.log(c))


def distribution(state: AmplitudeVector, channel: LossChannel) -> PhaseDistribution:
    """Closed-form phase distribution of the surviving-photon sector.

    The measured sector weights each amplitude by cos(theta/2)^(j+mu), giving
    the factorized coefficients g_mu g_nu / 2pi with g = psi * survival.
    """
    g = state.psi * _survival_factors(state, channel)
    return PhaseDistribution(j=state.j, coeff=np.outer(g, g) / TWO_PI, factor=g)


def distribution_from_density(rho: ReducedDensity) -> PhaseDistribution:
    """Phase distribution read off a reduced density matrix.

    Only the zero-lost-photons block overlaps the full-photon-number phase
    states, so the coefficient matrix is that block over 2pi; a density
    matrix with no such block yields the null distribution.
    """
    dim = rho.n_photons + 1
    if 0 in rho.blocks:
        coeff = rho.blocks[0] / TWO_PI
    else:
        coeff = np.zeros((dim, dim))
    return PhaseDistribution(j=rho.j, coeff=coeff)


def sharpness_closed(
    state: AmplitudeVector,
    channel: LossChannel,
    normalized: bool = False,
) -> float:
    """Sharpness |<e^{i phi}>| from the closed-form nearest-neighbor sum.

    S = sum_mu psi_mu psi_{mu-1} [cos^2(theta/2)]^(j+mu-1/2), the exact first
    Fourier coefficient of the distribution. With ``normalized`` the raw
    value is divided by the distribution's integral; that variant is not the
    default quantity anywhere else in the library.
    """
    if state.n_photons < 1:
        raise ValueError("sharpness needs at least one photon")
    survival = _survival_factors(state, channel)
    # exponent j+mu-1/2 splits as (i + (i-1))/2 across the neighbor pair
    sharp = float(np.sum(state.psi[1:] * state.psi[:-1] * survival[1:] * survival[:-1]))
    if normalized:
        sharp /= float(np.sum((state.psi * survival) ** 2))
    return sharp


@dataclass(frozen=True)
class PhaseEstimate:
    """Sharpness with its Holevo variance and minimum detectable phase."""

    sharpness: float
    holevo_variance: float
    min_detectable_phase: float


def holevo(sharpness: float) -> PhaseEstimate:
    """Holevo variance -1 + S^-2 of a sharpness S in [0, 1].

    S = 0 is a flat distribution: the variance diverges and is reported as
    infinity rather than raised as an error.
    """
    sharpness = float(sharpness)
    if not 0.0 <= sharpness <= 1.0:
        raise ValueError(f"sharpness must lie in [0, 1], got {sharpness}")
    if sharpness == 0.0:
        return PhaseEstimate(0.0, math.inf, math.inf)
    variance = 1.0 / (sharpness * sharpness) - 1.0
    return PhaseEstimate(sharpness, variance, math.sqrt(variance))


def lossless_reference(n_photons: int) -> float:
    """Analytic Holevo variance tan^2(pi/(N+2)) of the lossless optimal state."""
    if n_photons < 1:
        raise ValueError(f"photon number must be >= 1, got {n_photons}")
    return math.tan(math.pi / (n_photons + 2)) ** 2
