"""Three-particle GHZ correlations from local amplitudes.

Each particle's x-basis amplitudes are (1/sqrt 2) exp(i theta) for + and the
same rotated by pi/2 for -. The correlation is built from the product
C1 C2* C3*; its real part, squared, gives the joint probability.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from .model import local_amplitude
from .models import SPIN_ONE, GhzPhases, TripleOutcome

logger = logging.getLogger(__name__)

# Makes |N C1 C2* C3*| = 1.
GHZ_NORMALIZATION = 2 * math.sqrt(2)
ALLOWED_OUTCOMES = 4


@dataclass(frozen=True)
class GhzRow:
    """One line of the GHZ outcome table."""
    outcome: TripleOutcome
    probability: float
    normalized: float
    local_realistic: float


def default_phases() -> GhzPhases:
    """Phases (pi/2, 0, 0), which satisfy theta1 - theta2 - theta3 - pi/2 = 0."""
    return GhzPhases(math.pi / 2, 0.0, 0.0)


def ghz_product_amplitude(phases: GhzPhases, outcome: TripleOutcome) -> complex:
    """N C1 C2* C3* for the given outcome signs (unit modulus)."""
    c1 = local_amplitude(phases.theta1, 0.0, SPIN_ONE, outcome.s1).value
    c2 = local_amplitude(phases.theta2, 0.0, SPIN_ONE, outcome.s2).value
    c3 = local_amplitude(phases.theta3, 0.0, SPIN_ONE, outcome.s3).value
    return GHZ_NORMALIZATION * c1 * c2.conjugate() * c3.conjugate()


def ghz_joint_probability(phases: GhzPhases, outcome: TripleOutcome) -> float:
    """Joint probability [Re(N C1 C2* C3*)]^2: 1 for an odd number of -, else 0."""
    return ghz_product_amplitude(phases, outcome).real ** 2


def normalized_probability(phases: GhzPhases, outcome: TripleOutcome) -> float:
    """The 0/1 probability spread over the four allowed outcomes as a distribution."""
    return ghz_joint_probability(phases, outcome) / ALLOWED_OUTCOMES


def local_realistic_prediction(outcome: TripleOutcome) -> float:
    """What a local-realistic model predicts: only outcome products of +1 occur."""
    return 1.0 if outcome.parity > 0 else 0.0


def ghz_table(phases: Optional[GhzPhases] = None) -> List[GhzRow]:
    """All eight x-basis outcomes with their probabilities."""
    phases = phases or default_phases()
    rows = [
        GhzRow(
            outcome=outcome,
            probability=ghz_joint_probability(phases, outcome),
            normalized=normalized_probability(phases, outcome),
            local_realistic=local_realistic_prediction(outcome),
        )
        for outcome in TripleOutcome.all()
    ]
    logger.debug(f"GHZ table for phases {phases.as_tuple()}: {[r.probability for r in rows]}")
    return rows
