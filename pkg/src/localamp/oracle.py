"""State-vector quantum mechanics used as the reference for every model output.

Dense 2^n complex vectors, tensor products of single-particle projectors and
the Born rule. Basis ordering: particle 1 is the most significant bit and the
+ outcome (index 0) precedes - (index 1).

Nothing here imports the local-amplitude formalism.
"""

import enum
import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .exceptions import ArgumentError, DomainError

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = {"I": IDENTITY, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}


class MeasurementKind(enum.Enum):
    """How an analyzer angle maps onto the spin measurement direction."""
    SPIN_HALF = "spin_half"
    PHOTON_POLARIZATION = "photon_polarization"


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalised pure state of n two-level particles."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        size = amplitudes.size
        if size < 2 or size & (size - 1):
            raise ArgumentError(f"State length must be a power of two >= 2, got {size}")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"State is not normalised: sum |a|^2 = {norm!r}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n_particles(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    def amplitude(self, signs: Sequence[int]) -> complex:
        """Amplitude of the z-basis state labelled by outcome signs."""
        return complex(self.amplitudes[basis_index(signs)])


@dataclass(frozen=True)
class MeasurementSetting:
    """Analyzer angle (radians) in the x-z measurement plane."""
    angle: float
    kind: MeasurementKind = MeasurementKind.SPIN_HALF

    @property
    def direction_angle(self) -> float:
        """Angle of the spin direction; polarisation doubles it."""
        if self.kind is MeasurementKind.PHOTON_POLARIZATION:
            return 2 * self.angle
        return self.angle


def basis_index(signs: Sequence[int]) -> int:
    """Index of a z-basis state: + is bit 0, - is bit 1, particle 1 most significant."""
    index = 0
    for s in signs:
        if s not in (1, -1):
            raise DomainError(f"Outcome signs must be +1 or -1, got {s!r}")
        index = (index << 1) | (0 if s > 0 else 1)
    return index


def basis_state(signs: Sequence[int]) -> np.ndarray:
    vector = np.zeros(2 ** len(signs), dtype=complex)
    vector[basis_index(signs)] = 1.0
    return vector


def singlet_state() -> StateVector:
    """(|+-> - |-+>) / sqrt 2 in the z basis."""
    return StateVector((basis_state((1, -1)) - basis_state((-1, 1))) / np.sqrt(2))


def ghz_state() -> StateVector:
    """(|+++> - |--->) / sqrt 2 in the z basis."""
    return StateVector((basis_state((1, 1, 1)) - basis_state((-1, -1, -1))) / np.sqrt(2))


def projector(setting: MeasurementSetting, outcome: int) -> np.ndarray:
    """Single-particle projector (I + s (cos t sigma_z + sin t sigma_x)) / 2."""
    if outcome not in (1, -1):
        raise DomainError(f"Outcome must be +1 or -1, got {outcome!r}")
    t = setting.direction_angle
    spin_operator = np.cos(t) * SIGMA_Z + np.sin(t) * SIGMA_X
    return (IDENTITY + outcome * spin_operator) / 2


def kron_all(operators: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, operators)


def pauli_string(labels: str) -> np.ndarray:
    """Tensor product of Pauli operators, e.g. ``"XYY"``."""
    try:
        return kron_all(PAULI[c] for c in labels.upper())
    except KeyError as e:
        raise ArgumentError(f"Unknown Pauli label in {labels!r}") from e


def expectation(state: StateVector, operator: np.ndarray) -> float:
    """Expectation value <psi|O|psi> of a Hermitian operator."""
    psi = state.amplitudes
    if operator.shape != (psi.size, psi.size):
        raise ArgumentError(
            f"Operator shape {operator.shape} does not match state of size {psi.size}"
        )
    return float(np.vdot(psi, operator @ psi).real)


def _check_dimensions(state: StateVector, settings: Sequence, outcomes: Sequence) -> None:
    n = state.n_particles
    if len(settings) != n or len(outcomes) != n:
        raise ArgumentError(
            f"Expected {n} settings and outcomes, got {len(settings)} and {len(outcomes)}"
        )


def joint_probability(
    state: StateVector,
    settings: Sequence[MeasurementSetting],
    outcomes: Sequence[int],
) -> float:
    """Born probability of the joint outcome under product projectors."""
    _check_dimensions(state, settings, outcomes)
    operator = kron_all(projector(s, o) for s, o in zip(settings, outcomes))
    probability = expectation(state, operator)
    return min(1.0, max(0.0, probability))


def outcome_distribution(
    state: StateVector, settings: Sequence[MeasurementSetting]
) -> List[Tuple[Tuple[int, ...], float]]:
    """Probabilities of every outcome tuple, + before -, particle 1 first."""
    return [
        (outcomes, joint_probability(state, settings, outcomes))
        for outcomes in product((1, -1), repeat=state.n_particles)
    ]


def marginal_probability(
    state: StateVector,
    settings: Sequence[MeasurementSetting],
    particle: int,
    outcome: int,
) -> float:
    """Probability that one particle (0-based) shows ``outcome``."""
    if not 0 <= particle < state.n_particles:
        raise ArgumentError(f"Particle index {particle} out of range")
    return sum(
        probability
        for outcomes, probability in outcome_distribution(state, settings)
        if outcomes[particle] == outcome
    )


def correlation(state: StateVector, settings: Sequence[MeasurementSetting]) -> float:
    """Two-particle correlation: sum of s1 s2 P(s1, s2)."""
    if state.n_particles != 2 or len(settings) != 2:
        raise ArgumentError("correlation() needs a two-particle state and two settings")
    return sum(
        outcomes[0] * outcomes[1] * probability
        for outcomes, probability in outcome_distribution(state, settings)
    )


def pair_settings(
    theta1: float, theta2: float, kind: MeasurementKind
) -> Tuple[MeasurementSetting, MeasurementSetting]:
    return (MeasurementSetting(theta1, kind), MeasurementSetting(theta2, kind))


def singlet_correlation(theta1: float, theta2: float) -> float:
    """Oracle correlation of the singlet with spin analyzers."""
    return correlation(singlet_state(), pair_settings(theta1, theta2, MeasurementKind.SPIN_HALF))


def photon_correlation(theta1: float, theta2: float) -> float:
    """Oracle correlation of the orthogonally polarised photon pair."""
    return correlation(
        singlet_state(), pair_settings(theta1, theta2, MeasurementKind.PHOTON_POLARIZATION)
    )


def x_basis_settings(n: int) -> List[MeasurementSetting]:
    """Analyzers along x (angle pi/2 in the x-z plane) for n particles."""
    return [MeasurementSetting(np.pi / 2) for _ in range(n)]
