"""Error types shared across the package.

Each error carries a short machine-readable ``category`` string so the
front ends (CLI exit paths, HTTP handlers) can report failures uniformly.
"""


class LabError(Exception):
    """Base class for all domain-specific failures."""

    category = "error"


class DomainError(LabError, ValueError):
    """Parameter outside the validity domain of an operation."""

    category = "domain"


class UnsupportedModeError(LabError, ValueError):
    """Detection-mode combination the formulas do not cover."""

    category = "unsupported-mode"


class NoArrivalError(LabError):
    """Classical trajectory never reaches the detector."""

    category = "no-arrival"


class OracleWindowError(LabError):
    """Requested quadrature lies outside the oracle's validity window."""

    category = "oracle-window"


class EmptySupportError(LabError):
    """Sampling target is indistinguishable from zero on the window."""

    category = "empty-support"


class InsufficientDataError(LabError):
    """Not enough data to fit (fewer than two nonempty bins)."""

    category = "insufficient-data"


class SingularRatioError(LabError):
    """Current ratio undefined because the final velocity vanishes."""

    category = "singular-ratio"
