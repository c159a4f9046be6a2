"""Local-amplitude formalism: pair correlations, interference and GHZ."""

from .models import (
    SPIN_HALF,
    SPIN_ONE,
    GhzPhases,
    InterferenceConfig,
    JointDistribution,
    LocalAmplitude,
    PairConfig,
    Spin,
    TripleOutcome,
)
from .model import (
    amplitude_correlation,
    experimenter_correlation,
    joint_probabilities,
    local_amplitude,
    pair_correlation,
    photon_correlation,
    singlet_correlation,
)
from .ghz import default_phases, ghz_joint_probability, ghz_product_amplitude
from .interference import coincidence_probability, visibility

__all__ = [
    "SPIN_HALF",
    "SPIN_ONE",
    "GhzPhases",
    "InterferenceConfig",
    "JointDistribution",
    "LocalAmplitude",
    "PairConfig",
    "Spin",
    "TripleOutcome",
    "amplitude_correlation",
    "experimenter_correlation",
    "joint_probabilities",
    "local_amplitude",
    "pair_correlation",
    "photon_correlation",
    "singlet_correlation",
    "default_phases",
    "ghz_joint_probability",
    "ghz_product_amplitude",
    "coincidence_probability",
    "visibility",
]
