"""Quantum correlations from local amplitudes."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    ArgumentError,
    ConstraintError,
    ContractViolation,
    DomainError,
    LocalAmpError,
)
from .formalism.model import (  # noqa: E402
    amplitude_correlation,
    experimenter_correlation,
    joint_probabilities,
    local_amplitude,
    photon_correlation,
    singlet_correlation,
)
from .formalism.models import JointDistribution, PairConfig, Spin  # noqa: E402

__all__ = [
    "ArgumentError",
    "ConstraintError",
    "ContractViolation",
    "DomainError",
    "LocalAmpError",
    "JointDistribution",
    "PairConfig",
    "Spin",
    "amplitude_correlation",
    "experimenter_correlation",
    "joint_probabilities",
    "local_amplitude",
    "photon_correlation",
    "singlet_correlation",
]
