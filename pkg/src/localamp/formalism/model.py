"""Local-amplitude correlations for two-particle maximally entangled systems.

Each particle carries a local amplitude that depends only on its own analyzer
angle and its own internal phase. The amplitude correlation U is the normalised
real part of the product of the two amplitudes, and the experimenter's
correlation of outcomes follows from its square: P = 2U^2 - 1.
"""

import logging
import math
from typing import Union

import numpy as np

from ..exceptions import DomainError
from .models import (
    SPIN_HALF,
    SPIN_ONE,
    TOLERANCE,
    JointDistribution,
    LocalAmplitude,
    PairConfig,
    Spin,
    SpinLike,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

AMPLITUDE_SCALE = 1 / math.sqrt(2)
# Normalisation of U for a pair: fixes U = +-1 at perfect correlation.
PAIR_NORMALIZATION = 2.0
# |U| within a few ulps of 1 is perfect correlation; the opposite outcomes get exactly 0.
EDGE_SLACK = 1e-15

SINGLET_PHI0 = math.pi
PHOTON_PHI0 = math.pi / 2


def _check_outcome(outcome: int) -> int:
    if outcome not in (1, -1):
        raise DomainError(f"Outcome must be +1 or -1, got {outcome!r}")
    return outcome


def _check_unit_interval(u: float) -> float:
    """Validate u in [-1, 1], absorbing rounding at the edges."""
    if not math.isfinite(u) or abs(u) > 1 + TOLERANCE:
        raise DomainError(f"Amplitude correlation must lie in [-1, 1], got {u!r}")
    if abs(abs(u) - 1.0) <= EDGE_SLACK:
        return math.copysign(1.0, u)
    return max(-1.0, min(1.0, float(u)))


def local_amplitude_values(
    theta: ArrayLike, phi: ArrayLike, s: SpinLike, outcome: int = 1
) -> Union[complex, np.ndarray]:
    """Complex local amplitudes, broadcasting over array arguments.

    Args:
        theta: Analyzer angle(s) in radians
        phi: Internal phase(s) of the particle in radians
        s: Spin of the particle
        outcome: +1 for transmission, -1 for the orthogonal outcome

    Returns:
        (1/sqrt 2) exp{i s (theta - phi)}, rotated by pi/2 for outcome -1
    """
    spin = float(Spin.coerce(s))
    _check_outcome(outcome)
    values = AMPLITUDE_SCALE * np.exp(1j * spin * (np.asarray(theta) - np.asarray(phi)))
    if outcome < 0:
        values = values * 1j
    if np.ndim(values) == 0:
        return complex(values)
    return values


def local_amplitude(theta: float, phi: float, s: SpinLike, outcome: int) -> LocalAmplitude:
    """Local amplitude C for one particle at one analyzer."""
    return LocalAmplitude.from_complex(local_amplitude_values(theta, phi, s, outcome))


def correlation_from_internal_phases(
    spin: SpinLike,
    theta1: ArrayLike,
    theta2: ArrayLike,
    phi1: ArrayLike,
    phi2: ArrayLike,
) -> ArrayLike:
    """Amplitude correlation U = 2 Re(C1 C2*) for explicit internal phases.

    Broadcasts over array arguments so a whole ensemble of pairs, each with its
    own internal phase, can be evaluated at once.
    """
    c1 = local_amplitude_values(theta1, phi1, spin, 1)
    c2 = local_amplitude_values(theta2, phi2, spin, 1)
    u = np.clip(PAIR_NORMALIZATION * np.real(c1 * np.conj(c2)), -1.0, 1.0)
    if np.ndim(u) == 0:
        return float(u)
    return u


def amplitude_correlation(config: PairConfig, phi: float = 0.0) -> float:
    """Amplitude correlation U of a pair configuration.

    The first particle carries internal phase ``phi`` and the second
    ``phi + phi0``; only the difference phi0 survives in the result.

    Args:
        config: Pair configuration
        phi: Internal phase of the first particle

    Returns:
        U in [-1, 1]
    """
    c1 = local_amplitude(config.theta1, phi, config.spin, 1)
    c2 = local_amplitude(config.theta2, phi + config.phi0, config.spin, 1)
    u = PAIR_NORMALIZATION * (c1.value * c2.conjugate().value).real
    return max(-1.0, min(1.0, u))


def experimenter_correlation(u: float) -> float:
    """Experimenter's correlation P = 2U^2 - 1."""
    u = _check_unit_interval(u)
    return 2 * u * u - 1


def conditional_probability(u: float) -> float:
    """Probability of + at analyzer 2 given + at analyzer 1 (equals U^2)."""
    u = _check_unit_interval(u)
    return u * u


def joint_probabilities(u: float) -> JointDistribution:
    """Split the coincidence mass U^2 evenly over (++, --) and the rest over (+-, -+)."""
    u = _check_unit_interval(u)
    coincidence = u * u
    anticoincidence = 1 - coincidence
    return JointDistribution(
        u=u,
        p=experimenter_correlation(u),
        p_pp=coincidence / 2,
        p_mm=coincidence / 2,
        p_pm=anticoincidence / 2,
        p_mp=anticoincidence / 2,
    )


def pair_correlation(
    spin: SpinLike, phi0: float, theta1: float, theta2: float
) -> JointDistribution:
    """Joint distribution of any maximally entangled pair configuration."""
    config = PairConfig(spin=Spin.coerce(spin), phi0=phi0, theta1=theta1, theta2=theta2)
    return joint_probabilities(amplitude_correlation(config))


def singlet_correlation(theta1: float, theta2: float) -> JointDistribution:
    """Spin-1/2 singlet: s = 1/2, phi0 = pi, so P = -cos(theta1 - theta2)."""
    return pair_correlation(SPIN_HALF, SINGLET_PHI0, theta1, theta2)


def photon_correlation(theta1: float, theta2: float) -> JointDistribution:
    """Orthogonally polarised photons: s = 1, phi0 = pi/2, so P = -cos 2(theta1 - theta2)."""
    return pair_correlation(SPIN_ONE, PHOTON_PHI0, theta1, theta2)


def singlet_p(theta1: float, theta2: float) -> float:
    """Experimenter's correlation of the singlet as a plain function of two angles."""
    return singlet_correlation(theta1, theta2).p


def photon_p(theta1: float, theta2: float) -> float:
    """Experimenter's correlation of the photon pair as a plain function of two angles."""
    return photon_correlation(theta1, theta2).p
