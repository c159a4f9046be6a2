"""Error types raised by localamp."""


class LocalAmpError(Exception):
    """Base class for all localamp errors."""


class DomainError(LocalAmpError, ValueError):
    """A value lies outside the mathematical domain of an operation."""


class ConstraintError(LocalAmpError, ValueError):
    """A set of phases does not satisfy its realizability constraint."""


class ArgumentError(LocalAmpError, ValueError):
    """Invalid call arguments (grid sizes, dimensions, empty tallies)."""


class ContractViolation(LocalAmpError):
    """A computation broke its output contract.

    Raised when a supplied correlation function leaves [-1, 1], or when the
    local-amplitude model and the state-vector oracle disagree beyond tolerance.
    """
