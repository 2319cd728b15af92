from .evaluator import Evaluator
from .exceptions import (
    AccuracyFailure,
    AccuracyWarning,
    BranchError,
    CancellationWarning,
    ConfigurationError,
    ConstraintError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    GeometryError,
    InvalidPair,
    LommelError,
    PoleError,
    PrecisionError,
    QuadratureError,
    RangeError,
    RegionError,
    StabilityWarning,
    UndefinedError,
)
from .models import (
    ComplexValue,
    EvalResult,
    GridSpec,
    LommelSettings,
    RegionLabel,
    TransformPoint,
    get_settings,
)

__all__ = [
    "AccuracyFailure",
    "AccuracyWarning",
    "BranchError",
    "CancellationWarning",
    "ComplexValue",
    "ConfigurationError",
    "ConstraintError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "EvalResult",
    "Evaluator",
    "GeometryError",
    "GridSpec",
    "InvalidPair",
    "LommelError",
    "LommelSettings",
    "PoleError",
    "PrecisionError",
    "QuadratureError",
    "RangeError",
    "RegionError",
    "RegionLabel",
    "StabilityWarning",
    "TransformPoint",
    "UndefinedError",
    "get_settings",
]
