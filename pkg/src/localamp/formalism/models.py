"""Data models for the local-amplitude formalism."""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Tuple, Union

from ..exceptions import ConstraintError, DomainError

# Closed-form identities hold to this tolerance.
TOLERANCE = 1e-12
# Tolerance on the mod-pi residue of the GHZ phase combination.
PHASE_TOLERANCE = 1e-9

SpinLike = Union["Spin", Fraction, int, float, str]


def _check_sign(value: int, name: str) -> int:
    if value not in (1, -1):
        raise DomainError(f"{name} must be +1 or -1, got {value!r}")
    return int(value)


def _check_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be a finite angle, got {value!r}")
    return value


@dataclass(frozen=True)
class Spin:
    """Spin quantum number of the analysed particles (1/2 or 1)."""
    value: Fraction

    def __post_init__(self):
        try:
            value = Fraction(self.value)
        except (TypeError, ValueError) as e:
            raise DomainError(f"Invalid spin {self.value!r}: {e}") from e
        if value not in (Fraction(1, 2), Fraction(1)):
            raise DomainError(f"Spin must be 1/2 or 1, got {value}")
        object.__setattr__(self, "value", value)

    @classmethod
    def coerce(cls, spin: SpinLike) -> "Spin":
        """Return ``spin`` as a Spin, converting plain numbers."""
        return spin if isinstance(spin, Spin) else cls(spin)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return str(self.value)


SPIN_HALF = Spin(Fraction(1, 2))
SPIN_ONE = Spin(Fraction(1))


@dataclass(frozen=True)
class LocalAmplitude:
    """One particle's local measurement amplitude."""
    re: float
    im: float

    @classmethod
    def from_complex(cls, value: complex) -> "LocalAmplitude":
        return cls(re=float(value.real), im=float(value.imag))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def probability(self) -> float:
        """Local outcome probability |C|^2."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "LocalAmplitude":
        return LocalAmplitude(self.re, -self.im)


@dataclass(frozen=True)
class PairConfig:
    """Everything needed for one two-particle correlation point.

    Angles are radians with no range restriction.
    """
    spin: Spin
    phi0: float
    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "spin", Spin.coerce(self.spin))
        for name in ("phi0", "theta1", "theta2"):
            object.__setattr__(self, name, _check_finite(getattr(self, name), name))

    @property
    def separation(self) -> float:
        """Analyzer separation theta1 - theta2."""
        return self.theta1 - self.theta2


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome probabilities of a maximally entangled pair.

    Validated on construction: the four probabilities sum to one, both
    single-side marginals equal 1/2, and p = 2u^2 - 1.
    """
    u: float
    p: float
    p_pp: float
    p_mm: float
    p_pm: float
    p_mp: float

    def __post_init__(self):
        probabilities = self.probabilities
        if any(q < -TOLERANCE or q > 1 + TOLERANCE for q in probabilities):
            raise DomainError(f"Probabilities out of [0, 1]: {probabilities}")
        if abs(sum(probabilities) - 1.0) > TOLERANCE:
            raise DomainError(f"Probabilities do not sum to 1: {probabilities}")
        if abs(self.u) > 1 + TOLERANCE or abs(self.p) > 1 + TOLERANCE:
            raise DomainError(f"Correlations out of [-1, 1]: u={self.u}, p={self.p}")
        if abs(self.p - (2 * self.u * self.u - 1)) > TOLERANCE:
            raise DomainError(f"p={self.p} inconsistent with u={self.u}")
        if abs(self.p - (self.coincidence - self.anticoincidence)) > TOLERANCE:
            raise DomainError(f"p={self.p} differs from coincidence minus anticoincidence")
        marginals = (self.marginal_first, self.marginal_second)
        if any(abs(m - 0.5) > TOLERANCE for m in marginals):
            raise DomainError(f"Marginals differ from 1/2: {probabilities}")

    @property
    def probabilities(self) -> Tuple[float, float, float, float]:
        """Probabilities in (++, --, +-, -+) order."""
        return (self.p_pp, self.p_mm, self.p_pm, self.p_mp)

    @property
    def coincidence(self) -> float:
        """Probability that both analyzers agree (U^2)."""
        return self.p_pp + self.p_mm

    @property
    def anticoincidence(self) -> float:
        return self.p_pm + self.p_mp

    @property
    def marginal_first(self) -> float:
        """Probability of + at analyzer 1."""
        return self.p_pp + self.p_pm

    @property
    def marginal_second(self) -> float:
        """Probability of + at analyzer 2."""
        return self.p_pp + self.p_mp


@dataclass(frozen=True)
class InterferenceConfig:
    """Two-photon position-correlation setup."""
    k: float
    alpha: float
    x0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.k) or self.k <= 0:
            raise DomainError(f"Wave number k must be positive, got {self.k!r}")
        if not math.isfinite(self.alpha):
            raise DomainError(f"Scale factor alpha must be finite, got {self.alpha!r}")
        if not math.isfinite(self.x0):
            raise DomainError(f"Reference coordinate x0 must be finite, got {self.x0!r}")


@dataclass(frozen=True)
class GhzPhases:
    """Per-particle internal phases of the x-basis GHZ amplitudes.

    theta1 - theta2 - theta3 - pi/2 must be 0 or +-pi modulo 2 pi.
    """
    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3"):
            object.__setattr__(self, name, _check_finite(getattr(self, name), name))
        residue = math.remainder(self.combination, math.pi)
        if abs(residue) > PHASE_TOLERANCE:
            raise ConstraintError(
                f"Phases {self.as_tuple()} violate the realizability constraint "
                f"(theta1 - theta2 - theta3 - pi/2 is {residue:.3e} away from a multiple of pi)"
            )

    @property
    def combination(self) -> float:
        """theta1 - theta2 - theta3 - pi/2."""
        return self.theta1 - self.theta2 - self.theta3 - math.pi / 2

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)


@dataclass(frozen=True)
class TripleOutcome:
    """Signs of the x-basis outcomes on particles 1, 2 and 3."""
    s1: int
    s2: int
    s3: int

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            object.__setattr__(self, name, _check_sign(getattr(self, name), name))

    @classmethod
    def all(cls) -> List["TripleOutcome"]:
        """All eight outcomes; particle 1 most significant, + before -."""
        return [cls(*signs) for signs in product((1, -1), repeat=3)]

    @classmethod
    def from_label(cls, label: str) -> "TripleOutcome":
        """Parse a label such as ``"+-+"``."""
        if len(label) != 3 or any(c not in "+-" for c in label):
            raise DomainError(f"Outcome label must be three of '+'/'-', got {label!r}")
        return cls(*(1 if c == "+" else -1 for c in label))

    @property
    def signs(self) -> Tuple[int, int, int]:
        return (self.s1, self.s2, self.s3)

    @property
    def parity(self) -> int:
        return self.s1 * self.s2 * self.s3

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def flipped(self, particle: int) -> "TripleOutcome":
        """Return this outcome with one particle's sign reversed (1-based)."""
        signs = list(self.signs)
        signs[particle - 1] = -signs[particle - 1]
        return TripleOutcome(*signs)

    def __str__(self) -> str:
        return self.label
