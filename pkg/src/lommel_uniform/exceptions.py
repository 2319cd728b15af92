from __future__ import annotations

from typing import Any


class LommelError(Exception):
    """Base exception for all lommel-uniform errors."""

    def __init__(
        self,
        message: str,
        *,
        function: str | None = None,
        z: complex | None = None,
        details: dict[str, Any] | None = None,
    ):
        super().__init__(message)
        self.function = function
        self.z = z
        self.details = details or {}


class DomainError(LommelError):
    """Argument outside the domain of the function (for example z = 0)."""


class BranchError(LommelError):
    """Argument lies on the excluded side of a branch cut."""


class PoleError(LommelError):
    """Evaluation at a pole of a coefficient or Gamma factor."""


class ConvergenceError(LommelError):
    """A convergent series was requested outside its disk of convergence."""


class RangeError(LommelError):
    """Requested truncation or table depth beyond what is available."""


class InvalidPair(LommelError):
    """Scorer rotation pair not in {(-1,0), (0,1), (-1,1)}."""


class RegionError(LommelError):
    """Point outside the validity region of the requested expansion."""


class DivergenceError(LommelError):
    """Divergent factorial series used where its argument is not large."""


class GeometryError(LommelError):
    """Point not enclosed by the requested Cauchy circle."""


class UndefinedError(LommelError):
    """Function is not defined for the given parameter combination."""


class ConstraintError(LommelError):
    """Integral representation used outside its parameter constraints."""


class QuadratureError(LommelError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, *, achieved: float | None = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.achieved = achieved


class PrecisionError(LommelError):
    """Cancellation in an extended-precision sum ate the guard digits."""


class ConfigurationError(LommelError):
    """Raised when settings are invalid or inconsistent."""


class AccuracyFailure(LommelError):
    """Error estimate above the requested tolerance in strict mode."""


class AccuracyWarning(UserWarning):
    """Result may be inaccurate (for example near a zero of the function)."""


class CancellationWarning(UserWarning):
    """Result is much smaller than the terms it was summed from."""


class StabilityWarning(UserWarning):
    """An expansion was forced into a region where it is numerically unsatisfactory."""


EXIT_CODE_MAP: dict[type[LommelError], int] = {
    ConfigurationError: 2,
    InvalidPair: 2,
    RangeError: 2,
    DomainError: 3,
    BranchError: 3,
    PoleError: 3,
    RegionError: 3,
    UndefinedError: 3,
    ConstraintError: 3,
    GeometryError: 3,
    DivergenceError: 3,
    ConvergenceError: 3,
    AccuracyFailure: 4,
    QuadratureError: 4,
    PrecisionError: 4,
}


def exit_code_for(exc: LommelError) -> int:
    """Exit status for *exc*, resolved through its class hierarchy."""
    for cls in type(exc).__mro__:
        if cls in EXIT_CODE_MAP:
            return EXIT_CODE_MAP[cls]
    return 1
