"""Exception hierarchy.

Everything raised on purpose derives from HardyZError so the CLI can map
failures to exit codes: validation and domain problems exit 2, numerically
inconclusive results (contour winding off an integer, phase tracking
underflow) exit 3.
"""

from __future__ import annotations


class HardyZError(Exception):
    """Base class for all errors raised by this package."""


class CatalogError(HardyZError):
    """Unknown datum name or malformed catalog entry."""


class AxiomViolationError(CatalogError):
    """Structural data fail a required property (a(1) != 1, lambda <= 0, ...)."""


class DomainError(HardyZError):
    """Argument outside the supported domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too near) a pole.

    Attributes record which gamma factor and which pole index tripped when
    that is known; both are None for the Dirichlet-series pole at s = 1.
    """

    def __init__(self, message: str, factor: int | None = None, index: int | None = None):
        super().__init__(message)
        self.factor = factor
        self.index = index


class ExcludedRegionError(DomainError):
    """Point falls inside the exclusion disc around a pole of psi."""


class UnsupportedOrderError(DomainError):
    """Derivative order beyond the implemented range."""


class RangeError(DomainError):
    """Scalar parameter outside its validated range (T, window, k caps)."""


class GeometryError(DomainError):
    """Contour or differentiation circle would leave the safe region."""


class PrecisionError(HardyZError):
    """Requested computation cannot meet the accuracy contract."""


class InconclusiveContourError(HardyZError):
    """Winding number too far from an integer to trust the count."""


class TrackingError(HardyZError):
    """Continuous-argument tracking step underflowed (zero on or near path)."""


class ProximityError(DomainError):
    """Evaluation point coincides with a tabulated zero."""


class ContextError(HardyZError):
    """EvalContext field fails its validity invariant."""
