"""Anger, Weber and Anger-Weber functions of order ``+nu`` and ``-nu``.

For large ``nu`` the values at ``nu z`` come from expansions in ``G^{+-}_s(z)`` combined with
Airy, Scorer ``Hi`` and ``Gi`` terms; elsewhere they are composed from Lommel functions.
"""

from __future__ import annotations

import cmath
import logging
import math
from typing import Literal

import numpy as np

from .airy_scorer import airy, scorer_gi, scorer_hi
from .bessel_ref import bessel, uniform_AB
from .coeffs import CoefficientTable, get_table
from .exceptions import DomainError, LommelError, RegionError
from .lommel import check_defined, lommel_eval, lommel_series
from .models import (
    AWCoeffs,
    ComplexValue,
    EvalResult,
    LommelSettings,
    Method,
    TransformPoint,
    Variant,
    get_settings,
)
from .oracle import oracle_eval, oracle_lommel
from .transform import transform_with_region
from .uniform_engine import cauchy_smooth, j_series, near_turning_point, smoothing_radius

LOGGER = logging.getLogger(__name__)

Which = Literal["J", "E", "A"]

FUNCTION_IDS: dict[str, Which] = {"angerJ": "J", "weberE": "E", "angerweberA": "A"}

_SERIES_REACH = 30.0
_INTEGER_TOL = 1e-9


def aw_coeffs(nu: float) -> AWCoeffs:
    """Right-hand-side coefficients of the Anger and Weber equations."""
    s = math.sin(math.pi * nu)
    c = math.cos(math.pi * nu)
    return AWCoeffs(
        j0=s / math.pi,
        jm1=-nu * s / math.pi,
        e0=-(1.0 + c) / math.pi,
        em1=-nu * (1.0 - c) / math.pi,
    )


def _trig(nu: float) -> tuple[float, float]:
    # exact zeros at integer and half-integer orders
    n2 = round(2 * nu)
    if abs(2 * nu - n2) < _INTEGER_TOL:
        table = ((0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0))
        return table[n2 % 4]
    return math.sin(math.pi * nu), math.cos(math.pi * nu)


def _phase_ratio(nu: float, a: int, b: int) -> complex:
    # (e^{a nu pi i} - e^{b nu pi i}) / sin(nu pi), with its limit at integer nu
    n = round(nu)
    if abs(nu - n) < _INTEGER_TOL:
        top = a * cmath.exp(1j * a * n * math.pi) - b * cmath.exp(1j * b * n * math.pi)
        return 1j * top / math.cos(n * math.pi)
    top = cmath.exp(1j * a * nu * math.pi) - cmath.exp(1j * b * nu * math.pi)
    return top / math.sin(nu * math.pi)


# ---------------------------------------------------------------------------
# Large-order expansions
# ---------------------------------------------------------------------------


def _g_sum(sign: int, nu: float, z: complex, s_max: int, table: CoefficientTable) -> complex:
    family = table.g_minus if sign < 0 else table.g_plus
    return sum(complex(family(s, z)) * nu ** (-2 * s - 1) for s in range(s_max + 1)) / math.pi


def _j_anger_direct(
    nu: float, z: complex, s_max: int, settings: LommelSettings, table: CoefficientTable
) -> complex:
    tp = transform_with_region(z, settings=settings)
    j_val = j_series(nu, z, s_max, settings.k_max, settings.j_cutoff, table)
    return _g_sum(1, nu, z, s_max, table) - math.sqrt(2.0) * tp.phi * j_val / (
        math.pi * nu * tp.zeta
    )


def j_anger(
    nu: float,
    tp: TransformPoint,
    s_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> complex:
    """Slowly varying part ``(1/pi) sum G^+_s nu^{-2s-1} - sqrt(2) phi J / (pi nu zeta)``.

    The poles of ``G^+_s`` at ``z = 1`` cancel against ``J``; near there the sum is taken
    from a Cauchy integral around ``z = 1``.
    """
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = table or get_table(settings.coeff_depth)
    if not near_turning_point(tp, nu, settings):
        return _j_anger_direct(nu, tp.z, s_max, settings, table)
    radius = smoothing_radius(nu, tp.z, settings)

    def nodes(ts: np.ndarray) -> np.ndarray:
        return np.array([_j_anger_direct(nu, complex(t), s_max, settings, table) for t in ts])

    return complex(cauchy_smooth(nodes, tp.z, radius, settings.cauchy_nodes))


def _bracket(
    fn: str,
    nu: float,
    tp: TransformPoint,
    s_max: int,
    settings: LommelSettings,
    table: CoefficientTable,
) -> complex:
    # sqrt(2) nu^{-1/3} {F A + F' B} for F = Ai, Gi or Hi at nu^{2/3} zeta
    ab = uniform_AB(nu, tp, s_max, settings=settings, table=table)
    x = nu ** (2.0 / 3.0) * tp.zeta
    if fn == "Ai":
        value, deriv = airy(0, x)
    else:
        sv = scorer_gi(x, settings=settings) if fn == "Gi" else scorer_hi(x, settings=settings)
        value, deriv = sv.value, sv.derivative
    return math.sqrt(2.0) * nu ** (-1.0 / 3.0) * (value * ab.A + deriv * ab.B)


def anger_weber_asymptotic(
    which: Which,
    sign: int,
    nu: float,
    z: complex,
    *,
    s_max: int | None = None,
    stable_small_z: bool | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """``J_{+-nu}``, ``E_{+-nu}`` or ``A_{+-nu}`` at ``nu z`` for large ``nu``.

    ``stable_small_z`` selects the forms built only from ``G^{+-}_s`` and the Bessel term
    for ``E_{+-nu}`` and ``J_{-nu}``; by default they are used for ``|z| < aw_z_small``.
    """
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = get_table(settings.coeff_depth)
    z = complex(z)
    name = f"{which}{'+' if sign > 0 else '-'}"
    if nu < settings.nu_min:
        raise DomainError(f"large-order expansions need nu >= {settings.nu_min}", function=name)
    tp = transform_with_region(z, settings=settings)
    assert tp.region is not None
    if not tp.region.in_S_delta:
        raise RegionError("point lies within delta of the cut (-inf, -1]", function=name, z=z)
    sin_nu, cos_nu = _trig(nu)
    if stable_small_z is None:
        stable_small_z = abs(z) < settings.aw_z_small
    minus = _g_sum(-1, nu, z, s_max, table)

    def term(fn: str) -> complex:
        return _bracket(fn, nu, tp, s_max, settings, table)

    def jscript() -> complex:
        return j_anger(nu, tp, s_max, settings=settings, table=table)

    if which == "A" and sign > 0:
        value = minus
    elif which == "A":
        value = term("Hi") + jscript()
    elif which == "J" and sign > 0:
        value = sin_nu * minus + term("Ai")
    elif stable_small_z:
        plus = _g_sum(1, nu, z, s_max, table)
        if which == "E" and sign > 0:
            value = -(plus + cos_nu * minus)
        elif which == "J":
            value = -sin_nu * plus + cos_nu * term("Ai")
        else:
            value = -(cos_nu * plus + minus) - sin_nu * term("Ai")
    elif which == "E" and sign > 0:
        value = term("Gi") - cos_nu * minus - jscript()
    elif which == "J":
        value = sin_nu * (term("Gi") - jscript()) + cos_nu * term("Ai")
    else:
        value = cos_nu * (term("Gi") - jscript()) - minus - sin_nu * term("Ai")
    LOGGER.debug("%s at nu=%s z=%s (stable_small_z=%s)", name, nu, z, stable_small_z)
    return EvalResult(
        value=ComplexValue.of(value),
        method="asymptotic_scorer" if which != "A" or sign < 0 else "asymptotic_simple",
        terms=s_max + 1,
        err_estimate=nu ** (-2.0 * (s_max + 1)),
        function=name,
        z=ComplexValue.of(nu * z),
    )


# ---------------------------------------------------------------------------
# Lommel composition
# ---------------------------------------------------------------------------


def _pair(
    variant: Variant, nu: float, z: complex, settings: LommelSettings
) -> tuple[complex, complex]:
    return (
        lommel_series(variant, 0.0, nu, z, settings=settings).as_complex,
        lommel_series(variant, -1.0, nu, z, settings=settings).as_complex,
    )


def _companion_variant(nu: float, settings: LommelSettings) -> Variant:
    try:
        check_defined("S0", 0.0, nu, settings.odd_tol)
        check_defined("S0", -1.0, nu, settings.odd_tol)
    except LommelError:
        return "S"
    return "S0"


def anger_weber_series(
    which: Which, sign: int, nu: float, z: complex, *, settings: LommelSettings | None = None
) -> complex:
    """Value at ``z`` composed from convergent-series Lommel functions."""
    settings = settings or get_settings()
    z = complex(z)
    if z == 0:
        raise DomainError("Anger-Weber functions are evaluated for z != 0", z=z)
    if which == "A" and sign < 0:
        s0, sm1 = _pair("S", nu, z, settings)
        return (s0 + nu * sm1) / math.pi
    variant = _companion_variant(nu, settings)
    s0, sm1 = _pair(variant, nu, z, settings)
    a_plus = (s0 - nu * sm1) / math.pi
    if which == "A":
        return a_plus
    coeffs = aw_coeffs(nu)
    j_nu = bessel("J", nu, z)
    anger = coeffs.j0 * s0 + coeffs.jm1 * sm1 + j_nu
    weber = coeffs.e0 * s0 + coeffs.em1 * sm1
    if variant == "S":
        weber -= bessel("Y", nu, z)
    if sign > 0:
        return anger if which == "J" else weber
    sin_nu, cos_nu = _trig(nu)
    if which == "J":
        return sin_nu * weber + cos_nu * anger
    return cos_nu * weber - sin_nu * anger


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _wrap(value: complex, method: str, name: str, z: complex, err: float) -> EvalResult:
    return EvalResult(
        value=ComplexValue.of(value),
        method=method,  # type: ignore[arg-type]
        err_estimate=err,
        function=name,
        z=ComplexValue.of(z),
    )


def anger_weber_eval(
    which: Which,
    sign: int,
    nu: float,
    z: complex,
    *,
    method: Method = "auto",
    terms: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Evaluate ``J_{+-nu}(z)``, ``E_{+-nu}(z)`` or ``A_{+-nu}(z)`` at the unscaled ``z``.

    Points the large-order expansions cannot reach are served by the reflections
    ``J_{+-nu}(z) = J_{-+nu}(-z)`` and ``E_{+-nu}(z) = -E_{-+nu}(-z)``, and for ``A`` by the
    continuation from ``-z``.
    """
    settings = settings or get_settings()
    z = complex(z)
    sign = 1 if sign >= 0 else -1
    name = f"{which}{'+' if sign > 0 else '-'}"
    if method == "auto":
        if nu < settings.nu_min:
            method = "series" if abs(z) <= _SERIES_REACH + nu else "oracle"
        else:
            method = "asymptotic"
    if method == "series":
        value = anger_weber_series(which, sign, nu, z, settings=settings)
        return _wrap(value, "series", name, z, 1e-15)
    if method == "oracle":
        value = anger_weber_oracle(which, sign, nu, z, settings=settings).c
        return _wrap(value, "oracle", name, z, settings.oracle_tol)
    try:
        return anger_weber_asymptotic(which, sign, nu, z / nu, s_max=terms, settings=settings)
    except RegionError:
        if z.real >= 0:
            raise
    LOGGER.debug("%s at z=%s reached from -z", name, z)
    if which in ("J", "E"):
        reflected = anger_weber_asymptotic(
            which, -sign, nu, -z / nu, s_max=terms, settings=settings
        )
        value = reflected.as_complex if which == "J" else -reflected.as_complex
        return reflected.model_copy(
            update={"function": name, "z": ComplexValue.of(z), "value": ComplexValue.of(value)}
        )
    if sign > 0:
        m = 1 if z.imag >= 0 else -1
        return anger_weber_continue(nu, -z, m, terms=terms, settings=settings)
    s0 = lommel_eval("S", 0.0, nu, z, terms=terms, settings=settings)
    sm1 = lommel_eval("S", -1.0, nu, z, terms=terms, settings=settings)
    value = (s0.as_complex + nu * sm1.as_complex) / math.pi
    return s0.model_copy(update={"function": name, "value": ComplexValue.of(value)})


def anger_weber_continue(
    nu: float,
    z: complex,
    m: int,
    *,
    method: Method = "auto",
    terms: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """``A_nu(z e^{m pi i})`` from principal-branch values at ``z``; ``nu`` may be negative."""
    settings = settings or get_settings()
    z = complex(z)
    order = abs(nu)
    sign = 1 if nu >= 0 else -1
    if m % 2 == 0:
        base = anger_weber_eval("A", sign, order, z, method=method, terms=terms, settings=settings)
        value = base.as_complex + _phase_ratio(nu, 0, m) * bessel("J", nu, z)
    else:
        s0 = lommel_eval("S1", 0.0, nu, z, method=method, terms=terms, settings=settings)
        sm1 = lommel_eval("S1", -1.0, nu, z, method=method, terms=terms, settings=settings)
        base = s0
        value = -(s0.as_complex + nu * sm1.as_complex) / math.pi
        value += _phase_ratio(nu, -1, m) * bessel("J", nu, z)
    return base.model_copy(
        update={
            "value": ComplexValue.of(value),
            "function": f"A{'+' if sign > 0 else '-'}",
            "z": ComplexValue.of(z * cmath.exp(1j * m * math.pi)),
        }
    )


def anger_weber_oracle(
    which: Which, sign: int, nu: float, z: complex, *, settings: LommelSettings | None = None
) -> ComplexValue:
    """Reference value from the integral definitions.

    ``A`` off the right half plane, where its integral diverges, is taken from the
    extended-precision Lommel functions it is composed of.
    """
    settings = settings or get_settings()
    z = complex(z)
    function_id = {"J": "angerJ", "E": "weberE", "A": "angerweberA"}[which]
    if which == "A" and z.real <= 0:
        s0 = oracle_lommel("S", 0.0, nu, z, settings=settings)
        sm1 = oracle_lommel("S", -1.0, nu, z, settings=settings)
        return ComplexValue.of((s0 - sign * nu * sm1) / math.pi)
    result = oracle_eval(function_id, {"nu": nu, "sign": sign}, z, settings=settings)
    return result.value
