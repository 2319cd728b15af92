"""Lommel functions ``s``, ``S`` and the companions ``S^{(0)}``, ``S^{(1)}``, ``S^{(2)}``.

All five are particular solutions of ``z^2 w'' + z w' + (z^2 - nu^2) w = z^{mu+1}``:

* ``S^{(0)} = s + A sin(theta) J_nu``,
* ``S^{(1)} = s - i A e^{i theta} J_nu``,
* ``S^{(2)} = s + i A e^{-i theta} J_nu``,
* ``S = S^{(0)} - A cos(theta) Y_nu``,

with ``theta = (mu - nu) pi / 2`` and ``A = A(mu, nu)`` from :func:`lommel_A`.
"""

from __future__ import annotations

import cmath
import logging
import math
import warnings

from scipy import special

from .airy_scorer import airy, scorer_gi, wi
from .bessel_ref import bessel, uniform_AB
from .coeffs import get_table
from .exceptions import (
    CancellationWarning,
    DomainError,
    PoleError,
    RegionError,
    StabilityWarning,
    UndefinedError,
)
from .models import (
    JK,
    ComplexValue,
    EvalResult,
    LommelSettings,
    Method,
    UniformAB,
    Variant,
    get_settings,
)
from .transform import transform_with_region
from .uniform_engine import Route, inhomog_kit, select_route, simple_error, simple_series

LOGGER = logging.getLogger(__name__)

VARIANTS: tuple[Variant, ...] = ("s", "S", "S0", "S1", "S2")

VARIANT_PAIRS: dict[str, tuple[JK, ...]] = {
    "S": ((-1, 1),),
    "S1": ((-1, 0),),
    "S2": ((0, 1),),
    "S0": ((-1, 0), (0, 1)),
    "s": ((-1, 0), (0, 1)),
}

_SERIES_MAX_TERMS = 5000
_SERIES_RTOL = 1e-17
_CANCELLATION_RATIO = 1e-8
_SMALL_Z_RATIO = 0.1
_SERIES_REACH = 30.0
_SCORER_SMALL_Z = 0.5
_EPS = 2.2e-16


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def is_positive_odd(x: complex, tol: float) -> bool:
    """``x`` lies within ``tol`` of one of 1, 3, 5, ..."""
    x = complex(x)
    if abs(x.imag) > tol:
        return False
    n = round(x.real)
    return n > 0 and n % 2 == 1 and abs(x.real - n) < tol


def singular_orders(mu: complex, nu: float, tol: float) -> tuple[bool, bool]:
    """Whether ``nu - mu`` and ``-nu - mu`` are positive odd integers."""
    mu = complex(mu)
    return is_positive_odd(nu - mu, tol), is_positive_odd(-nu - mu, tol)


def check_defined(variant: str, mu: complex, nu: float, tol: float) -> None:
    """Raise :class:`UndefinedError` for parameter combinations where ``variant`` has no value."""
    minus_odd, plus_odd = singular_orders(mu, nu, tol)
    if variant == "s" and (minus_odd or plus_odd):
        raise UndefinedError(
            f"s_mu,nu is not defined when +-nu - mu is a positive odd integer "
            f"(mu={mu}, nu={nu})",
            function=variant,
        )
    if variant in ("S0", "S1", "S2") and plus_odd and not is_positive_odd(complex(mu) - nu, tol):
        raise UndefinedError(
            f"{variant}_mu,nu is not defined when nu + mu is a negative odd integer "
            f"(mu={mu}, nu={nu})",
            function=variant,
        )


def _gamma_pole(x: complex, tol: float = 1e-12) -> bool:
    return abs(x.imag) < tol and x.real < 0.5 and abs(x.real - round(x.real)) < tol


def lommel_A(mu: complex, nu: float) -> complex:
    """``A(mu, nu) = 2^{mu-1} Gamma((mu+nu+1)/2) Gamma((mu-nu+1)/2)``."""
    mu = complex(mu)
    top = (mu + nu + 1.0) / 2.0
    bottom = (mu - nu + 1.0) / 2.0
    if _gamma_pole(top) or _gamma_pole(bottom):
        raise PoleError(f"A(mu, nu) has a pole at mu={mu}, nu={nu}")
    log_value = (mu - 1.0) * math.log(2.0) + special.loggamma(top) + special.loggamma(bottom)
    return complex(cmath.exp(log_value))


def bessel_coefficient(mu: complex, nu: float) -> complex:
    """``A cos((mu-nu) pi/2) = pi 2^{mu-1} Gamma((mu+nu+1)/2) / Gamma((nu-mu+1)/2)``.

    Finite where ``A`` alone has a pole at ``nu - mu`` odd, and zero at ``nu - mu = -1``.
    """
    mu = complex(mu)
    top = (mu + nu + 1.0) / 2.0
    bottom = (nu - mu + 1.0) / 2.0
    if _gamma_pole(top):
        raise PoleError(f"Gamma((mu+nu+1)/2) has a pole at mu={mu}, nu={nu}")
    if _gamma_pole(bottom):
        return 0j
    log_value = (
        math.log(math.pi)
        + (mu - 1.0) * math.log(2.0)
        + special.loggamma(top)
        - special.loggamma(bottom)
    )
    return complex(cmath.exp(log_value))


def _theta(mu: complex, nu: float) -> complex:
    return (complex(mu) - nu) * math.pi / 2.0


# ---------------------------------------------------------------------------
# Convergent series
# ---------------------------------------------------------------------------


def _s_series(mu: complex, nu: float, z: complex) -> tuple[complex, int, float]:
    # z^{mu+1} sum_k (-1)^k z^{2k} / a_{k+1}(mu, nu)
    term = z ** (mu + 1.0) / ((mu + 1.0) ** 2 - nu * nu)
    total = term
    largest = abs(term)
    z2 = z * z
    for k in range(_SERIES_MAX_TERMS):
        term = -term * z2 / ((mu + 2 * k + 3) ** 2 - nu * nu)
        total += term
        largest = max(largest, abs(term))
        if abs(term) <= _SERIES_RTOL * abs(total) and k > abs(z):
            return total, k + 2, largest
    return total, _SERIES_MAX_TERMS + 1, largest


def _combine(
    variant: str, mu: complex, nu: float, z: complex, s_val: complex
) -> tuple[complex, float]:
    if variant == "s":
        return s_val, abs(s_val)
    theta = _theta(mu, nu)
    a_val = lommel_A(mu, nu)
    j_val = bessel("J", nu, z)
    if variant == "S0":
        extra = a_val * cmath.sin(theta) * j_val
        return s_val + extra, max(abs(s_val), abs(extra))
    if variant == "S1":
        extra = -1j * a_val * cmath.exp(1j * theta) * j_val
        return s_val + extra, max(abs(s_val), abs(extra))
    if variant == "S2":
        extra = 1j * a_val * cmath.exp(-1j * theta) * j_val
        return s_val + extra, max(abs(s_val), abs(extra))
    sin_part = a_val * cmath.sin(theta) * j_val
    cos_part = bessel_coefficient(mu, nu) * bessel("Y", nu, z)
    return s_val + sin_part - cos_part, max(abs(s_val), abs(sin_part), abs(cos_part))


def lommel_series(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    *,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Lommel function at ``z`` from the convergent series for ``s`` plus Bessel terms.

    Negative ``nu`` is accepted.  Where ``s`` itself is singular (``nu - mu`` or
    ``-nu - mu`` a positive odd integer) the defined variants are obtained as the
    symmetric limit in ``mu``, evaluated in extended precision.
    """
    settings = settings or get_settings()
    mu = complex(mu)
    z = complex(z)
    check_defined(variant, mu, nu, settings.odd_tol)
    if z == 0:
        if variant == "s" and mu.real > -1.0:
            return EvalResult(value=ComplexValue.of(0j), method="series", function=variant)
        raise DomainError(f"{variant} is not evaluated at z = 0", function=variant, z=z)

    if any(singular_orders(mu, nu, settings.odd_tol)):
        from .oracle import oracle_lommel

        value = oracle_lommel(variant, mu, nu, z, settings=settings)
        LOGGER.debug("%s at mu=%s nu=%s taken as a limit in mu", variant, mu, nu)
        return EvalResult(
            value=ComplexValue.of(value),
            method="oracle",
            err_estimate=settings.oracle_tol,
            function=variant,
            z=ComplexValue.of(z),
        )

    s_val, terms, largest = _s_series(mu, nu, z)
    value, intermediate = _combine(variant, mu, nu, z, s_val)
    largest = max(largest, intermediate)
    if abs(value) < _CANCELLATION_RATIO * largest:
        lost = math.log10(largest / max(abs(value), 1e-300))
        warnings.warn(
            f"{variant}_{mu},{nu}({z}) lost about {lost:.0f} digits to cancellation",
            CancellationWarning,
            stacklevel=2,
        )
    err = _EPS * largest / abs(value) if value != 0 else math.inf
    return EvalResult(
        value=ComplexValue.of(value),
        method="series",
        terms=terms,
        err_estimate=err,
        function=variant,
        z=ComplexValue.of(z),
    )


# ---------------------------------------------------------------------------
# Large-order expansions
# ---------------------------------------------------------------------------


def _scorer_bracket(variant: str, x: complex, ab: UniformAB, settings: LommelSettings) -> complex:
    if variant in ("S0", "s"):
        gi = scorer_gi(x, settings=settings)
        return -math.pi * (gi.value * ab.A + gi.derivative * ab.B)
    value, deriv = wi(*VARIANT_PAIRS[variant][0], x, settings=settings)
    return value * ab.A + deriv * ab.B


def lommel_asymptotic(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    *,
    route: Route = "auto",
    s_max: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Lommel function at ``nu * z`` from the large-``nu`` expansions.

    ``z`` is the scaled argument.  The simple algebraic series is used in the variant's
    simple region away from ``z = 1``; elsewhere in ``S(delta)`` the Scorer-function form.
    """
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = get_table(settings.coeff_depth)
    mu = complex(mu)
    z = complex(z)
    check_defined(variant, mu, nu, settings.odd_tol)
    if nu < settings.nu_min:
        raise DomainError(
            f"large-order expansions need nu >= {settings.nu_min}, got {nu}", function=variant
        )
    tp = transform_with_region(z, settings=settings)
    assert tp.region is not None
    if not tp.region.in_S_delta:
        raise RegionError(
            "point lies within delta of the cut (-inf, -1]", function=variant, z=z
        )
    if route == "scorer" and variant != "S" and abs(z) < _SCORER_SMALL_Z:
        warnings.warn(
            f"Scorer form of {variant} near z = 0 suffers cancellation; "
            "the simple expansion is preferred there",
            StabilityWarning,
            stacklevel=2,
        )
    chosen = select_route(VARIANT_PAIRS[variant], tp, nu, route, settings)
    scale = cmath.exp((mu + 1.0) * math.log(nu))
    root = cmath.sqrt(z)
    ab: UniformAB | None = None
    if chosen == "simple":
        series, rel_next = simple_series(mu, nu, z, s_max, table)
        value = scale * series / root
        err = simple_error(
            VARIANT_PAIRS[variant], mu, nu, tp, series, rel_next, settings=settings, table=table
        )
        method = "asymptotic_simple"
        if route == "auto" and err > settings.route_tol:
            LOGGER.debug(
                "simple series for %s at z=%s is off by ~%.1e; using Scorer", variant, z, err
            )
            chosen = "scorer"
    if chosen == "scorer":
        kit = inhomog_kit(mu, nu, tp, s_max, settings=settings, table=table)
        ab = uniform_AB(nu, tp, s_max, settings=settings, table=table)
        x = nu ** (2.0 / 3.0) * tp.zeta
        bracket = _scorer_bracket(variant, x, ab, settings)
        value = scale * (kit.G_script / root + kit.gamma_mu * bracket)
        err = nu ** (-2.0 * (s_max + 1))
        method = "asymptotic_scorer"
    if variant == "s":
        ab = ab or uniform_AB(nu, tp, s_max, settings=settings, table=table)
        ai, aip = airy(0, nu ** (2.0 / 3.0) * tp.zeta)
        j_val = math.sqrt(2.0) * nu ** (-1.0 / 3.0) * (ai * ab.A + aip * ab.B)
        value -= lommel_A(mu, nu) * cmath.sin(_theta(mu, nu)) * j_val
    LOGGER.debug("%s_%s,%s(%s nu) via %s", variant, mu, nu, z, method)
    return EvalResult(
        value=ComplexValue.of(value),
        method=method,
        terms=s_max + 1,
        err_estimate=err,
        function=variant,
        z=ComplexValue.of(nu * z),
    )


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _oracle_result(
    variant: Variant, mu: complex, nu: float, z: complex, settings: LommelSettings
) -> EvalResult:
    from .oracle import oracle_lommel

    value = oracle_lommel(variant, mu, nu, z, settings=settings)
    return EvalResult(
        value=ComplexValue.of(value),
        method="oracle",
        err_estimate=settings.oracle_tol,
        function=variant,
        z=ComplexValue.of(z),
    )


def lommel_eval(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    *,
    method: Method = "auto",
    terms: int | None = None,
    branch_winding: int = 0,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Evaluate a Lommel function at the (unscaled) argument ``z e^{m pi i}``.

    ``auto`` uses the series for small orders or ``|z| < nu/10``, the large-order
    expansions elsewhere, and falls back to the extended-precision series when the
    expansions reject the point.
    """
    settings = settings or get_settings()
    if branch_winding:
        return lommel_continue(
            variant, mu, nu, z, branch_winding, method=method, terms=terms, settings=settings
        )
    z = complex(z)
    if method == "auto":
        if nu < settings.nu_min:
            method = "series" if abs(z) <= _SERIES_REACH + nu else "oracle"
        elif abs(z) < _SMALL_Z_RATIO * nu:
            method = "series"
        else:
            try:
                return lommel_asymptotic(
                    variant, mu, nu, z / nu, s_max=terms, settings=settings
                )
            except RegionError:
                LOGGER.warning(
                    "%s at z=%s is outside the expansion region; using the oracle", variant, z
                )
                method = "oracle"
    if method == "series":
        return lommel_series(variant, mu, nu, z, settings=settings)
    if method == "oracle":
        return _oracle_result(variant, mu, nu, z, settings)
    route: Route = "auto" if method == "asymptotic" else method  # type: ignore[assignment]
    return lommel_asymptotic(variant, mu, nu, z / nu, route=route, s_max=terms, settings=settings)


# ---------------------------------------------------------------------------
# Continuation and reflection
# ---------------------------------------------------------------------------


def _a_phase_gap(mu: complex, nu: float, m: int, tol: float) -> complex:
    # A(mu, nu) (e^{m(mu+1)pi i} - e^{m nu pi i}), with its limit where A has a pole
    minus_odd, plus_odd = singular_orders(mu, nu, tol)
    if plus_odd:
        raise UndefinedError(
            f"continuation is not available at nu + mu negative odd (mu={mu}, nu={nu})"
        )
    if minus_odd:
        n = round((nu - mu.real - 1.0) / 2.0)
        log_top = special.loggamma((mu + nu + 1.0) / 2.0)
        return (
            cmath.exp(mu * math.log(2.0) + log_top)
            * (-1) ** n
            * m
            * math.pi
            * 1j
            * cmath.exp(1j * m * nu * math.pi)
            / math.factorial(n)
        )
    gap = cmath.exp(1j * m * (mu + 1.0) * math.pi) - cmath.exp(1j * m * nu * math.pi)
    return lommel_A(mu, nu) * gap


def continued_bessel(kind: str, nu: float, z: complex, m: int, tol: float = 1e-9) -> complex:
    """``J_nu`` or ``Y_nu`` at ``z e^{m pi i}`` from principal-branch values at ``z``."""
    j_val = bessel("J", nu, z)
    if kind == "J":
        return cmath.exp(1j * m * nu * math.pi) * j_val
    y_val = bessel("Y", nu, z)
    n = round(nu)
    if abs(nu - n) < tol:
        return (-1) ** (m * n) * (y_val + 2j * m * j_val)
    cot = math.cos(nu * math.pi) / math.sin(nu * math.pi)
    return (
        cmath.exp(-1j * m * nu * math.pi) * y_val
        + 2j * math.sin(m * nu * math.pi) * cot * j_val
    )


def lommel_continue(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    m: int,
    *,
    method: Method = "auto",
    terms: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Lommel function at ``z e^{m pi i}`` from principal-branch values at ``z``."""
    settings = settings or get_settings()
    mu = complex(mu)
    z = complex(z)
    if m == 0:
        return lommel_eval(variant, mu, nu, z, method=method, terms=terms, settings=settings)
    if m == 1 and variant == "S1":
        base = lommel_eval("S2", mu, nu, z, method=method, terms=terms, settings=settings)
        phase = cmath.exp(1j * (mu + 1.0) * math.pi)
        return _rescaled(base, variant, phase * base.as_complex, z, m)
    if m == -1 and variant == "S2":
        base = lommel_eval("S1", mu, nu, z, method=method, terms=terms, settings=settings)
        phase = cmath.exp(-1j * (mu + 1.0) * math.pi)
        return _rescaled(base, variant, phase * base.as_complex, z, m)

    base = lommel_eval(variant, mu, nu, z, method=method, terms=terms, settings=settings)
    value = base.as_complex
    power = cmath.exp(1j * m * (mu + 1.0) * math.pi)
    theta = _theta(mu, nu)
    if variant == "s":
        return _rescaled(base, variant, power * value, z, m)
    j_val = bessel("J", nu, z)
    gap = _a_phase_gap(mu, nu, m, settings.odd_tol)
    if variant == "S1":
        result = power * value + cmath.exp(1j * (theta + math.pi / 2)) * gap * j_val
    elif variant == "S2":
        result = power * value + cmath.exp(-1j * (theta + math.pi / 2)) * gap * j_val
    elif variant == "S0":
        result = power * value - cmath.sin(theta) * gap * j_val
    else:
        c = bessel_coefficient(mu, nu)
        s0 = value + c * bessel("Y", nu, z)
        s0_far = power * s0 - cmath.sin(theta) * gap * j_val
        result = s0_far - c * continued_bessel("Y", nu, z, m, settings.odd_tol)
    return _rescaled(base, variant, result, z, m)


def _rescaled(base: EvalResult, variant: str, value: complex, z: complex, m: int) -> EvalResult:
    return base.model_copy(
        update={
            "value": ComplexValue.of(value),
            "function": variant,
            "z": ComplexValue.of(z * cmath.exp(1j * m * math.pi)),
        }
    )


def lommel_reflect(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    *,
    settings: LommelSettings | None = None,
) -> complex:
    """Value of ``variant`` with order ``-nu`` built from order ``+nu`` quantities."""
    settings = settings or get_settings()
    mu = complex(mu)
    z = complex(z)
    base = lommel_series(variant, mu, nu, z, settings=settings).as_complex
    if variant in ("s", "S"):
        return base
    factor = math.sin(math.pi * nu) * lommel_A(mu, nu)
    half = (mu + nu) * math.pi / 2.0
    if variant == "S1":
        return base + cmath.exp(1j * half) * factor * bessel("H1", nu, z)
    if variant == "S2":
        return base + cmath.exp(-1j * half) * factor * bessel("H2", nu, z)
    return base + factor * (
        cmath.cos(half) * bessel("J", nu, z) - cmath.sin(half) * bessel("Y", nu, z)
    )


def lommel_ode_residual(
    variant: Variant,
    mu: complex,
    nu: float,
    z: complex,
    h: float = 1e-3,
    *,
    settings: LommelSettings | None = None,
) -> float:
    """Relative residual of the inhomogeneous Bessel equation from five-point differences."""
    mu = complex(mu)
    z = complex(z)

    def f(t: complex) -> complex:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CancellationWarning)
            return lommel_series(variant, mu, nu, t, settings=settings).as_complex

    samples = [f(z + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (samples[0] - 8 * samples[1] + 8 * samples[3] - samples[4]) / (12 * h)
    d2 = (-samples[0] + 16 * samples[1] - 30 * samples[2] + 16 * samples[3] - samples[4]) / (
        12 * h * h
    )
    w = samples[2]
    forcing = z ** (mu + 1.0)
    residual = z * z * d2 + z * d1 + (z * z - nu * nu) * w - forcing
    scale = max(abs(forcing), abs(z * z * d2), abs(nu * nu * w))
    return abs(residual) / scale
