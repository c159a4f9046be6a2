"""CHSH analysis and local-realistic instruction sets."""

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .exceptions import ArgumentError, ContractViolation, DomainError

logger = logging.getLogger(__name__)

Correlation = Callable[[float, float], float]

CORRELATION_TOLERANCE = 1e-12
CLASSICAL_BOUND = 2
TSIRELSON_BOUND = 2 * math.sqrt(2)
DEFAULT_SPAN = math.pi


@dataclass(frozen=True)
class ChshSettings:
    """Two analyzer angles per side, in radians."""
    a: float
    a_prime: float
    b: float
    b_prime: float

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"CHSH angle {name} must be finite, got {value!r}")

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.a, self.a_prime, self.b, self.b_prime)


@dataclass(frozen=True)
class DeterministicStrategy:
    """Outcomes pre-assigned to both settings on both sides."""
    outcome_a: int
    outcome_a_prime: int
    outcome_b: int
    outcome_b_prime: int

    def __post_init__(self):
        for name in ("outcome_a", "outcome_a_prime", "outcome_b", "outcome_b_prime"):
            if getattr(self, name) not in (1, -1):
                raise DomainError(f"{name} must be +1 or -1, got {getattr(self, name)!r}")

    def chsh(self) -> int:
        a, a_prime = self.outcome_a, self.outcome_a_prime
        b, b_prime = self.outcome_b, self.outcome_b_prime
        return a * b - a * b_prime + a_prime * b + a_prime * b_prime


@dataclass(frozen=True)
class GhzInstructionSet:
    """x and y outcomes carried by each of three particles."""
    x: Tuple[int, int, int]
    y: Tuple[int, int, int]

    def statements(self) -> Dict[str, int]:
        """Products for the four GHZ measurement combinations."""
        x1, x2, x3 = self.x
        y1, y2, y3 = self.y
        return {"XXX": x1 * x2 * x3, "XYY": x1 * y2 * y3, "YXY": y1 * x2 * y3, "YYX": y1 * y2 * x3}


# Quantum predictions for (|+++> - |--->)/sqrt 2.
GHZ_QUANTUM_STATEMENTS = {"XXX": -1, "XYY": 1, "YXY": 1, "YYX": 1}


def chsh_value(correlation: Correlation, settings: ChshSettings) -> float:
    """S = E(a, b) - E(a, b') + E(a', b) + E(a', b').

    Raises:
        ContractViolation: if ``correlation`` returns a value outside [-1, 1]
    """
    def e(x: float, y: float) -> float:
        value = float(correlation(x, y))
        if not math.isfinite(value) or abs(value) > 1 + CORRELATION_TOLERANCE:
            raise ContractViolation(f"Correlation E({x}, {y}) = {value!r} lies outside [-1, 1]")
        return value

    s = settings
    return e(s.a, s.b) - e(s.a, s.b_prime) + e(s.a_prime, s.b) + e(s.a_prime, s.b_prime)


def enumerate_strategies() -> List[DeterministicStrategy]:
    """All 16 deterministic instruction sets."""
    return [DeterministicStrategy(*signs) for signs in product((1, -1), repeat=4)]


def max_deterministic_chsh() -> float:
    """Largest |S| over all deterministic instruction sets (exactly 2)."""
    return float(max(abs(strategy.chsh()) for strategy in enumerate_strategies()))


def mixed_strategy_chsh(weights: Sequence[float]) -> float:
    """S of a convex mixture of the 16 deterministic strategies.

    Args:
        weights: Non-negative weights in ``enumerate_strategies()`` order, summing to 1
    """
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (16,) or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-9:
        raise ArgumentError("Mixture weights must be 16 non-negative numbers summing to 1")
    values = np.array([strategy.chsh() for strategy in enumerate_strategies()], dtype=float)
    return float(weights @ values)


def hidden_variable_correlation(a: float, b: float, n_lambda: int = 720) -> float:
    """Correlation of a uniform mixture of deterministic outcome rules.

    Each shared angle lambda fixes A = sign cos(a - lambda) and
    B = -sign cos(b - lambda); the result averages A B over lambda.
    """
    lambdas = 2 * math.pi * (np.arange(n_lambda) + 0.5) / n_lambda
    outcome_a = np.where(np.cos(a - lambdas) >= 0, 1, -1)
    outcome_b = -np.where(np.cos(b - lambdas) >= 0, 1, -1)
    return float(np.mean(outcome_a * outcome_b))


def lattice(grid_points: int, span: float = DEFAULT_SPAN) -> np.ndarray:
    """Angles 0 .. span (inclusive) used on each of the four CHSH axes."""
    if grid_points < 2:
        raise ArgumentError(f"Need at least 2 grid points, got {grid_points}")
    return np.linspace(0.0, span, grid_points)


def _scan_block(
    correlation: Correlation, a: float, angles: np.ndarray
) -> List[Tuple[ChshSettings, float]]:
    block = []
    for a_prime, b, b_prime in product(angles, repeat=3):
        settings = ChshSettings(float(a), float(a_prime), float(b), float(b_prime))
        block.append((settings, chsh_value(correlation, settings)))
    return block


def scan_chsh(
    correlation: Correlation,
    grid_points: int,
    span: float = DEFAULT_SPAN,
    workers: int = 1,
    progress: bool = False,
) -> List[Tuple[ChshSettings, float]]:
    """Evaluate S on every point of a four-angle lattice.

    Blocks sharing the same first angle may run concurrently; the result is
    always in lattice order (a, a', b, b' with b' varying fastest).

    Args:
        correlation: E(x, y) returning values in [-1, 1]
        grid_points: Lattice points per axis (at least 2)
        span: Upper end of each axis in radians
        workers: Number of threads
        progress: Show a progress bar over blocks

    Returns:
        List of (settings, S) pairs, grid_points**4 long
    """
    angles = lattice(grid_points, span)
    blocks = tqdm(angles, desc="CHSH lattice", disable=not progress)
    results = Parallel(n_jobs=workers, prefer="threads")(
        delayed(_scan_block)(correlation, a, angles) for a in blocks
    )
    points = [point for block in results for point in block]
    logger.debug(f"Scanned {len(points)} CHSH lattice points with {workers} worker(s)")
    return points


def max_abs_chsh(points: Sequence[Tuple[ChshSettings, float]]) -> Tuple[ChshSettings, float]:
    """Lattice point with the largest |S|."""
    return max(points, key=lambda point: abs(point[1]))


def enumerate_ghz_instruction_sets() -> List[GhzInstructionSet]:
    """All 64 assignments of x and y outcomes to three particles."""
    return [
        GhzInstructionSet(x=signs[:3], y=signs[3:])
        for signs in product((1, -1), repeat=6)
    ]


def ghz_agreements(instruction_set: GhzInstructionSet) -> int:
    """How many of the four quantum GHZ statements an instruction set reproduces."""
    statements = instruction_set.statements()
    return sum(1 for key, value in GHZ_QUANTUM_STATEMENTS.items() if statements[key] == value)


def max_ghz_agreements() -> int:
    """Best agreement any instruction set reaches (3 of the 4 statements)."""
    return max(ghz_agreements(candidate) for candidate in enumerate_ghz_instruction_sets())
