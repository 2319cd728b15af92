"""Independent ground truth in software extended precision.

Two families of reference values are provided: convergent series summed with
:mod:`mpmath` at a working precision raised to absorb their cancellation, and adaptive
quadrature of the integral representations along piecewise-linear contours closed off by
rays to infinity.  Nothing here is tuned for speed.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Mapping
from typing import Any

import mpmath
from mpmath import mp

from .exceptions import ConstraintError, PrecisionError, QuadratureError, UndefinedError
from .lommel import check_defined, singular_orders
from .models import ComplexValue, EvalResult, LommelSettings, QuadratureSpec, get_settings

LOGGER = logging.getLogger(__name__)

SERIES_FUNCTIONS = (
    "s",
    "S",
    "S0",
    "S1",
    "S2",
    "struveH",
    "struveK",
    "struveK1",
    "struveK2",
    "neumannO",
    "angerJ",
    "weberE",
    "Ai",
    "Hi",
    "Gi",
)
QUADRATURE_FUNCTIONS = (
    "s",
    "S",
    "S0",
    "S1",
    "S2",
    "angerJ",
    "weberE",
    "angerweberA",
    "struveH",
    "struveK",
    "struveK1",
    "struveK2",
    "Hi",
)

GUARD_DIGITS = 10
_MAX_SERIES_TERMS = 20000
_PANEL_LENGTH = 4.0
_RAY_POINTS = (0, 2, 8, 32)
_STRUVE_IDS = ("struveH", "struveK", "struveK1", "struveK2")
_MPMATH_KERNELS: dict[str, Callable[..., Any]] = {
    "angerJ": mpmath.angerj,
    "weberE": mpmath.webere,
    "Ai": mpmath.airyai,
    "Hi": mpmath.scorerhi,
    "Gi": mpmath.scorergi,
}


def _working_dps(digits: int, z: complex) -> int:
    # the alternating series grow to roughly e^{|z|} before converging
    return digits + GUARD_DIGITS + int(0.5 * abs(z)) + 1


def _check_loss(total: Any, largest: Any, digits: int, function: str) -> None:
    if total == 0:
        return
    lost = float(mpmath.log10(largest / abs(total)))
    if lost > mp.dps - digits - 2:
        raise PrecisionError(
            f"{function}: about {lost:.0f} digits cancelled at {mp.dps} working digits",
            function=function,
            details={"lost_digits": lost, "working_dps": mp.dps},
        )


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


def _s_series_mp(mu: Any, nu: Any, z: Any) -> tuple[Any, Any]:
    term = z ** (mu + 1) / ((mu + 1) ** 2 - nu**2)
    total = term
    largest = abs(term)
    z2 = z * z
    tiny = mpmath.mpf(10) ** (-mp.dps - 2)
    for k in range(_MAX_SERIES_TERMS):
        term = -term * z2 / ((mu + 2 * k + 3) ** 2 - nu**2)
        total += term
        largest = max(largest, abs(term))
        if abs(term) <= tiny * abs(total) and k > abs(z):
            break
    return total, largest


def _lommel_mp(variant: str, mu: Any, nu: Any, z: Any, digits: int) -> Any:
    s_val, largest = _s_series_mp(mu, nu, z)
    if variant == "s":
        _check_loss(s_val, largest, digits, variant)
        return s_val
    theta = (mu - nu) * mp.pi / 2
    a_val = 2 ** (mu - 1) * mpmath.gamma((mu + nu + 1) / 2) * mpmath.gamma((mu - nu + 1) / 2)
    j_val = mpmath.besselj(nu, z)
    if variant == "S0":
        value = s_val + a_val * mpmath.sin(theta) * j_val
    elif variant == "S1":
        value = s_val - 1j * a_val * mpmath.exp(1j * theta) * j_val
    elif variant == "S2":
        value = s_val + 1j * a_val * mpmath.exp(-1j * theta) * j_val
    else:
        y_val = mpmath.bessely(nu, z)
        value = s_val + a_val * (mpmath.sin(theta) * j_val - mpmath.cos(theta) * y_val)
    _check_loss(value, largest, digits, variant)
    return value


def oracle_lommel(
    variant: str,
    mu: complex,
    nu: float,
    z: complex,
    *,
    dps: int | None = None,
    settings: LommelSettings | None = None,
) -> complex:
    """Lommel function from the series in extended precision.

    Where the series coefficients or ``A(mu, nu)`` are singular the value is the
    symmetric limit ``(f(mu + eps) + f(mu - eps))/2``, accurate to ``O(eps^2)``.
    """
    settings = settings or get_settings()
    digits = dps or settings.oracle_dps
    check_defined(variant, mu, nu, settings.odd_tol)
    if z == 0:
        raise UndefinedError(f"{variant} is not evaluated at z = 0", function=variant, z=z)
    singular = any(singular_orders(mu, nu, settings.odd_tol))
    working = _working_dps(digits, complex(z)) + (digits if singular else 0)
    with mp.workdps(working):
        m = mpmath.mpc(complex(mu))
        n = mpmath.mpf(nu)
        x = mpmath.mpc(complex(z))
        if not singular:
            return complex(_lommel_mp(variant, m, n, x, digits))
        eps = mpmath.mpf(10) ** (-(digits // 2 + 2))
        upper = _lommel_mp(variant, m + eps, n, x, digits)
        lower = _lommel_mp(variant, m - eps, n, x, digits)
        LOGGER.debug("%s_%s,%s limit taken with eps=%s", variant, mu, nu, eps)
        return complex((upper + lower) / 2)


def _struve_h_mp(nu: Any, z: Any, digits: int) -> Any:
    half = z / 2
    three_halves = mpmath.mpf(3) / 2
    term = half ** (nu + 1) / (mpmath.gamma(three_halves) * mpmath.gamma(nu + three_halves))
    total = term
    largest = abs(term)
    tiny = mpmath.mpf(10) ** (-mp.dps - 2)
    for k in range(_MAX_SERIES_TERMS):
        term = -term * half * half / ((k + mpmath.mpf(3) / 2) * (k + nu + mpmath.mpf(3) / 2))
        total += term
        largest = max(largest, abs(term))
        if abs(term) <= tiny * abs(total) and k > abs(z):
            break
    _check_loss(total, largest, digits, "struveH")
    return total


def _struve_mp(function_id: str, nu: Any, z: Any, digits: int) -> Any:
    h_val = _struve_h_mp(nu, z, digits)
    if function_id == "struveH":
        return h_val
    if function_id == "struveK":
        other = -mpmath.bessely(nu, z)
    else:
        sign = -1 if function_id == "struveK1" else 1
        other = sign * 1j * mpmath.besselj(nu, z)
    value = h_val + other
    _check_loss(value, max(abs(h_val), abs(other)), digits, function_id)
    return value


def _neumann_mp(n: int, z: Any) -> Any:
    if n == 0:
        return 1 / z
    total = mpmath.mpf(0)
    for k in range(n // 2 + 1):
        coeff = mpmath.factorial(n - k - 1) / mpmath.factorial(k)
        total += coeff * (2 / z) ** (n - 2 * k + 1)
    return n * total / 4


def oracle_series(
    function_id: str,
    params: Mapping[str, Any],
    z: complex,
    precision_digits: int = 30,
) -> complex:
    """Convergent-series value of ``function_id`` correct to about ``precision_digits``."""
    z = complex(z)
    if function_id in ("s", "S", "S0", "S1", "S2"):
        return oracle_lommel(
            function_id, params.get("mu", 0.0), float(params["nu"]), z, dps=precision_digits
        )
    with mp.workdps(_working_dps(precision_digits, z)):
        x = mpmath.mpc(z)
        if function_id in _STRUVE_IDS:
            nu = mpmath.mpf(params["nu"])
            return complex(_struve_mp(function_id, nu, x, precision_digits))
        if function_id == "neumannO":
            if z == 0:
                raise UndefinedError("O_n has a pole at z = 0", function=function_id, z=z)
            return complex(_neumann_mp(int(params["n"]), x))
        if function_id in ("angerJ", "weberE"):
            nu = mpmath.mpf(params["nu"]) * int(params.get("sign", 1))
            return complex(_MPMATH_KERNELS[function_id](nu, x))
        if function_id in _MPMATH_KERNELS:
            return complex(_MPMATH_KERNELS[function_id](x))
    raise ValueError(f"no series oracle for {function_id!r}")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def contour_integral(f: Callable[[Any], Any], spec: QuadratureSpec) -> tuple[Any, Any]:
    """``int f(t) dt`` along ``spec``; returns the value and the summed error estimate.

    Runs at the caller's working precision.
    """
    total = mpmath.mpc(0)
    error = mpmath.mpf(0)
    vertices = [mpmath.mpc(v) for v in spec.vertices]
    for a, b in zip(vertices, vertices[1:]):
        length = b - a
        pieces = min(spec.max_subdivisions, max(1, math.ceil(float(abs(length)) / _PANEL_LENGTH)))
        value, err = mp.quad(
            lambda u: f(a + length * u) * length,
            mpmath.linspace(0, 1, pieces + 1),
            error=True,
        )
        total += value
        error += err
    if spec.ray_direction is not None:
        start = vertices[-1]
        d = mpmath.mpc(spec.ray_direction)
        d = d / abs(d)
        points = [mpmath.mpf(p) for p in _RAY_POINTS] + [mp.inf]
        value, err = mp.quad(lambda u: f(start + d * u) * d, points, error=True)
        total += value
        error += err
    return total, error


def _checked(value: Any, error: Any, tol: float, function: str) -> float:
    scale = abs(value) if value != 0 else mpmath.mpf(1)
    achieved = float(error / scale)
    if achieved > tol:
        raise QuadratureError(
            f"{function}: quadrature reached {achieved:.2e}, target {tol:.2e}",
            achieved=achieved,
            function=function,
        )
    return achieved


def hankel_ray(
    z: complex, direction: int, bend: float = 0.0, tol: float = 1e-10
) -> QuadratureSpec:
    """Contour from ``z`` to ``infinity * e^{direction * pi i/2}`` avoiding the cut.

    ``bend`` inserts a horizontal leg before the vertical ray.
    """
    z = complex(z)
    corner = z + bend
    crosses = corner.real <= 0 and (corner.imag * direction < 0 or corner.imag == 0)
    if crosses:
        raise ConstraintError(
            "the vertical ray from z would cross the cut (-inf, 0]; use a continuation",
            z=z,
        )
    vertices = [z, corner] if bend else [z]
    return QuadratureSpec(vertices=vertices, ray_direction=complex(0, direction), target_tol=tol)


def _require(condition: bool, message: str, function: str) -> None:
    if not condition:
        raise ConstraintError(message, function=function)


def _from_zero(f: Callable[[Any], Any], z: Any, tol: float) -> tuple[Any, Any]:
    return contour_integral(f, QuadratureSpec(vertices=[0j, complex(z)], target_tol=tol))


def _lommel_quadrature(
    variant: str, mu: Any, nu: Any, z: Any, tol: float, bend: float
) -> tuple[Any, Any]:
    zc = complex(z)

    def t_j(t: Any) -> Any:
        return t**mu * mpmath.besselj(nu, t)

    def t_y(t: Any) -> Any:
        return t**mu * mpmath.bessely(nu, t)

    def t_h1(t: Any) -> Any:
        return t**mu * mpmath.hankel1(nu, t)

    def t_h2(t: Any) -> Any:
        return t**mu * mpmath.hankel2(nu, t)

    if variant in ("s", "S1", "S2", "S0"):
        _require((mu + nu).real > -1, "representation needs Re(mu + nu) > -1", variant)
    if variant == "s":
        _require((mu - nu).real > -1, "representation needs Re(mu - nu) > -1", variant)
        i_j, e1 = _from_zero(t_j, zc, tol)
        i_y, e2 = _from_zero(t_y, zc, tol)
        value = mp.pi / 2 * (mpmath.bessely(nu, z) * i_j - mpmath.besselj(nu, z) * i_y)
        err = mp.pi / 2 * (abs(mpmath.bessely(nu, z)) * e1 + abs(mpmath.besselj(nu, z)) * e2)
        return value, err
    if variant == "S0":
        _require(mu.real < 0.5, "representation needs Re(mu) < 1/2", variant)
        _require(zc.real > 0, "representation needs Re(z) > 0", variant)
        i_j, e1 = _from_zero(t_j, zc, tol)
        x0 = mpmath.mpf(zc.real)
        leg, e2 = contour_integral(t_y, QuadratureSpec(vertices=[zc, complex(zc.real)]))
        tail = mp.quadosc(t_y, [x0, mp.inf], omega=1)
        value = mp.pi / 2 * (mpmath.besselj(nu, z) * (leg + tail) + mpmath.bessely(nu, z) * i_j)
        err = abs(mpmath.bessely(nu, z)) * e1 + abs(mpmath.besselj(nu, z)) * e2
        return value, mp.pi / 2 * err
    up, e_up = (0, 0)
    down, e_down = (0, 0)
    if variant in ("S", "S1"):
        up, e_up = contour_integral(t_h1, hankel_ray(zc, 1, bend, tol))
        up = -up
    if variant in ("S", "S2"):
        down, e_down = contour_integral(t_h2, hankel_ray(zc, -1, bend, tol))
        down = -down
    h1 = mpmath.hankel1(nu, z)
    h2 = mpmath.hankel2(nu, z)
    if variant == "S":
        value = 1j * mp.pi / 4 * (h2 * up - h1 * down)
        return value, mp.pi / 4 * (abs(h2) * e_up + abs(h1) * e_down)
    jz = mpmath.besselj(nu, z)
    i_j, e_j = _from_zero(t_j, zc, tol)
    if variant == "S1":
        value = 1j * mp.pi / 2 * (jz * up - h1 * i_j)
        return value, mp.pi / 2 * (abs(jz) * e_up + abs(h1) * e_j)
    value = 1j * mp.pi / 2 * (h2 * i_j - jz * down)
    return value, mp.pi / 2 * (abs(h2) * e_j + abs(jz) * e_down)


def _anger_weber_quadrature(function_id: str, nu: Any, z: Any) -> tuple[Any, Any]:
    if function_id == "angerweberA":
        _require(complex(z).real > 0, "representation needs Re(z) > 0", function_id)
        peak = mpmath.acosh(max(mpmath.mpf(1), -nu / abs(z))) if nu < 0 else mpmath.mpf(0)
        points = [mpmath.mpf(0), peak + 1, peak + 8, mp.inf]
        if peak > 0:
            points.insert(1, peak)
        value, err = mp.quad(
            lambda t: mpmath.exp(-nu * t - z * mpmath.sinh(t)), points, error=True
        )
        return value / mp.pi, err / mp.pi
    trig = mpmath.cos if function_id == "angerJ" else mpmath.sin
    panels = max(2, math.ceil(float(abs(nu) + abs(z)) / 4))
    value, err = mp.quad(
        lambda th: trig(nu * th - z * mpmath.sin(th)),
        mpmath.linspace(0, mp.pi, panels + 1),
        error=True,
    )
    return value / mp.pi, err / mp.pi


def _struve_k_quadrature(nu: Any, z: Any, tol: float, bend: float) -> tuple[Any, Any]:
    value, err = _lommel_quadrature("S", nu, nu, z, tol, bend)
    factor = 2 ** (1 - nu) / (mpmath.sqrt(mp.pi) * mpmath.gamma(nu + mpmath.mpf(1) / 2))
    return factor * value, abs(factor) * err


def _hi_quadrature(x: Any) -> tuple[Any, Any]:
    peak = mpmath.sqrt(abs(x)) if x.real > 0 else mpmath.mpf(0)
    points = [mpmath.mpf(0), peak + 1, peak + 6, mp.inf]
    value, err = mp.quad(lambda t: mpmath.exp(-(t**3) / 3 + x * t), points, error=True)
    return value / mp.pi, err / mp.pi


def oracle_eval(
    function_id: str,
    params: Mapping[str, Any],
    z: complex,
    *,
    tol: float | None = None,
    bend: float = 0.0,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Value of ``function_id`` from its integral representation.

    ``params`` carries ``mu``, ``nu``, ``sign`` or ``n`` as the function needs them.  The
    result's ``err_estimate`` is the achieved relative quadrature error.
    """
    settings = settings or get_settings()
    tol = settings.oracle_tol if tol is None else tol
    z = complex(z)
    if function_id == "neumannO":
        value = oracle_series(function_id, params, z, settings.oracle_dps)
        return _result(function_id, value, 0.0, z)
    if function_id not in QUADRATURE_FUNCTIONS:
        raise ValueError(f"no integral representation for {function_id!r}")
    with mp.workdps(settings.oracle_dps):
        x = mpmath.mpc(z)
        if function_id == "Hi":
            value, err = _hi_quadrature(x)
        else:
            nu = mpmath.mpf(params["nu"]) * int(params.get("sign", 1))
            if function_id in ("s", "S", "S0", "S1", "S2"):
                mu = mpmath.mpc(complex(params.get("mu", 0.0)))
                value, err = _lommel_quadrature(function_id, mu, nu, x, tol, bend)
            elif function_id in ("angerJ", "weberE", "angerweberA"):
                value, err = _anger_weber_quadrature(function_id, nu, x)
            else:
                value, err = _struve_k_quadrature(nu, x, tol, bend)
                if function_id != "struveK":
                    value += mpmath.bessely(nu, x)
                if function_id == "struveK1":
                    value -= 1j * mpmath.besselj(nu, x)
                elif function_id == "struveK2":
                    value += 1j * mpmath.besselj(nu, x)
        achieved = _checked(value, err, tol, function_id)
        LOGGER.debug("%s oracle at z=%s reached %.2e", function_id, z, achieved)
        return _result(function_id, complex(value), achieved, z)


def _result(function_id: str, value: complex, achieved: float, z: complex) -> EvalResult:
    return EvalResult(
        value=ComplexValue.of(value),
        method="oracle",
        err_estimate=achieved,
        function=function_id,
        z=ComplexValue.of(z),
    )


def y_moment(mu: float, nu: float, *, dps: int = 30) -> float:
    """``int_0^inf t^mu Y_nu(t) dt`` by oscillatory quadrature."""
    _require(mu + nu > -1 and mu - nu > -1, "moment needs mu +- nu > -1", "Y-moment")
    _require(mu < 0.5, "moment needs mu < 1/2", "Y-moment")
    with mp.workdps(dps):
        value = mp.quadosc(lambda t: t**mu * mpmath.bessely(nu, t), [0, mp.inf], omega=1)
        return float(value)
