from __future__ import annotations

from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings
from sympy import Rational

from .exceptions import ConfigurationError

Variant = Literal["s", "S", "S0", "S1", "S2"]
Method = Literal["auto", "series", "asymptotic", "simple", "scorer", "oracle"]
ResultMethod = Literal[
    "series", "asymptotic_simple", "asymptotic_scorer", "small_z_stabilized", "oracle"
]
ScorerMethod = Literal["power_series", "asymptotic", "quadrature"]
JK = tuple[int, int]

SIMPLE_PAIRS: tuple[JK, ...] = ((-1, 0), (0, 1), (-1, 1))


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class LommelSettings(BaseSettings):
    """Numerical knobs shared by every evaluation path.

    Read from ``LOMMEL_*`` environment variables (and ``.env``), e.g.
    ``LOMMEL_COEFF_DEPTH=10`` raises the symbolic coefficient depth.
    """

    coeff_depth: int = 8
    s_max: int = 4
    nu_min: float = 10.0
    delta: float = 0.1
    zeta_switch: float = 0.15
    cauchy_radius: float = 0.4
    cauchy_nodes: int = 128
    j_cutoff: float = 10.0
    k_max: int = 6
    aw_z_small: float = 0.1
    struve_z_small: float = 0.2
    scorer_switch: float = 6.0
    scorer_asymptotic: float = 12.0
    odd_tol: float = 1e-9
    route_tol: float = 1e-12
    oracle_tol: float = 1e-10
    oracle_dps: int = 30
    near_one_radius: float = 0.05

    model_config = {
        "env_prefix": "LOMMEL_",
        "env_nested_delimiter": "__",
        "env_file": ".env",
    }

    @model_validator(mode="after")
    def _check_consistency(self) -> LommelSettings:
        if self.s_max > self.coeff_depth:
            if "s_max" in self.model_fields_set:
                raise ConfigurationError(
                    f"s_max={self.s_max} exceeds coeff_depth={self.coeff_depth}"
                )
            # a shallower table caps the default truncation
            self.s_max = self.coeff_depth
        if not 0.0 < self.delta < 1.0:
            raise ConfigurationError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0.0 < self.cauchy_radius < 1.0:
            raise ConfigurationError("cauchy_radius must lie in (0, 1)")
        if self.cauchy_nodes < 8:
            raise ConfigurationError("cauchy_nodes must be at least 8")
        if self.scorer_switch >= self.scorer_asymptotic:
            raise ConfigurationError("scorer_switch must be below scorer_asymptotic")
        return self


@lru_cache(maxsize=1)
def get_settings() -> LommelSettings:
    """Process-wide settings, read once from the environment."""
    return LommelSettings()


# ---------------------------------------------------------------------------
# Scalars and geometry
# ---------------------------------------------------------------------------


class ComplexValue(BaseModel):
    """Complex number with explicit real and imaginary parts."""

    re: float
    im: float = 0.0

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, value: complex) -> ComplexValue:
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    @property
    def c(self) -> complex:
        return complex(self.re, self.im)


class RegionLabel(BaseModel):
    """Membership flags of a scaled argument in the validity regions."""

    in_S0: bool
    in_S_minus1: bool
    in_S_plus1: bool
    in_S_delta: bool
    in_Sjk_delta: dict[str, bool]
    delta: float = Field(gt=0.0, lt=1.0)

    def simple(self, jk: JK) -> bool:
        return self.in_Sjk_delta[pair_key(jk)]


def pair_key(jk: JK) -> str:
    return f"{jk[0]},{jk[1]}"


class TransformPoint(BaseModel):
    """A point z with its Liouville variables.

    ``beta`` is ``None`` at z = 1; ``region`` is filled in by ``classify``.
    """

    z: complex
    zeta: complex
    xi: complex
    sqrt_zeta: complex
    w: complex
    beta: complex | None
    phi: complex
    near_one: bool = False
    region: RegionLabel | None = None

    model_config = ConfigDict(frozen=True)


# ---------------------------------------------------------------------------
# Kernel values
# ---------------------------------------------------------------------------


class ScorerValue(BaseModel):
    value: complex
    derivative: complex
    method: ScorerMethod


class UniformAB(BaseModel):
    """The slowly varying coefficient functions multiplying Ai and Ai'."""

    A: complex
    B: complex
    terms_used: int
    near_turning_point: bool


class InhomogKit(BaseModel):
    gamma_mu: complex
    G_script: complex
    J_script: complex | None = None
    method: Literal["direct", "cauchy"] = "direct"


# ---------------------------------------------------------------------------
# Requests and results
# ---------------------------------------------------------------------------


class LommelRequest(BaseModel):
    variant: Variant
    mu: complex
    nu: float = Field(ge=0.0)
    z: complex
    branch_winding: int = 0

    @model_validator(mode="after")
    def _check_mu(self) -> LommelRequest:
        if abs(self.mu) > 10.0:
            raise ValueError(f"|mu| <= 10 supported, got {self.mu}")
        return self


class EvalResult(BaseModel):
    """A function value together with how it was obtained."""

    value: ComplexValue
    method: ResultMethod
    terms: int = 0
    err_estimate: float = Field(default=0.0, ge=0.0)
    function: str | None = None
    z: ComplexValue | None = None

    @property
    def as_complex(self) -> complex:
        return self.value.c


class AWCoeffs(BaseModel):
    """Coefficients expressing Anger and Weber functions through Lommel functions."""

    j0: float
    jm1: float
    e0: float
    em1: float


class StruveReduction(BaseModel):
    """Reduction of a large-order Struve function to a bounded-order Lommel function.

    ``p_log_coeffs[k]`` is the log of the (positive) coefficient of z^{p_powers[k]}
    in the finite polynomial part, ordered by descending power.
    """

    nu: float
    k_nu: int
    mu_tilde: float
    B_factor: float
    p_log_coeffs: list[float]
    p_powers: list[float]

    @model_validator(mode="after")
    def _check_shape(self) -> StruveReduction:
        if len(self.p_log_coeffs) != self.k_nu + 1 or len(self.p_powers) != self.k_nu + 1:
            raise ValueError("polynomial part must have k_nu + 1 terms")
        return self


class NeumannPoly(BaseModel):
    """O_n as a finite sum of exact rational multiples of z^{-power}."""

    n: int = Field(ge=0)
    coefficients: dict[int, Rational]

    model_config = ConfigDict(arbitrary_types_allowed=True)


class QuadratureSpec(BaseModel):
    """Piecewise-linear contour, optionally closed off by a ray to infinity."""

    vertices: list[complex]
    ray_direction: complex | None = None
    target_tol: float = 1e-10
    max_subdivisions: int = 200

    @model_validator(mode="after")
    def _check_path(self) -> QuadratureSpec:
        if not self.vertices:
            raise ValueError("contour needs at least one vertex")
        if self.ray_direction is None and len(self.vertices) < 2:
            raise ValueError("finite contour needs two vertices")
        return self


class GridSpec(BaseModel):
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int = Field(ge=1)
    ny: int = Field(ge=1)


class CliRequest(BaseModel):
    subcommand: Literal["eval", "compare", "regionmap", "coeffs"]
    function: str | None = None
    mu: complex | None = None
    nu: float | None = None
    sign: Literal[1, -1] = 1
    n: int | None = None
    z: complex | None = None
    grid: GridSpec | None = None
    delta: float = 0.1
    terms: int | None = None
    tol: float = 1e-6
    strict: bool = False
    method: Method = "auto"
    format: Literal["json", "csv"] = "json"
    out: str | None = None
    seed: int = 0
    samples: int | None = Field(default=None, ge=1)
    family: Literal["E", "a", "Gmu", "Gminus", "Gplus", "Gtildestar"] | None = None
    s: int = Field(default=2, ge=0)

    @model_validator(mode="after")
    def _check_request(self) -> CliRequest:
        if self.subcommand == "coeffs":
            if self.family is None:
                raise ValueError("coeffs needs --family")
            return self
        if self.z is None and self.grid is None:
            raise ValueError(f"{self.subcommand} needs --z or --grid")
        if self.samples is not None and self.grid is None:
            raise ValueError("--samples draws from the --grid rectangle")
        if self.subcommand != "regionmap" and self.function is None:
            raise ValueError(f"{self.subcommand} needs --function")
        return self
