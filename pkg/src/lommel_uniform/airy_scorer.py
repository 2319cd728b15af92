"""Airy and Scorer functions of complex argument.

Airy values come from the AMOS kernels in :func:`scipy.special.airy`.  ``Hi`` is evaluated
by its Maclaurin series: in double precision for ``|x| <= scorer_switch`` and in mpmath
extended precision up to ``scorer_asymptotic``.  Beyond that the algebraic asymptotic series
is used, with the connection formula with ``Ai`` to reach the growth sector.  A rotated-ray
quadrature of the defining integral is kept as an independent check.  ``Gi`` and the rotated
solutions ``Wi^{(j,k)}`` are built from ``Hi``.
"""

from __future__ import annotations

import cmath
import logging
import math

import mpmath
from scipy import integrate, special

from .exceptions import InvalidPair
from .models import SIMPLE_PAIRS, JK, LommelSettings, ScorerValue, get_settings

LOGGER = logging.getLogger(__name__)

HI0 = 2.0 / (3.0 ** (7.0 / 6.0) * math.gamma(2.0 / 3.0))
HI0_PRIME = 2.0 / (3.0 ** (5.0 / 6.0) * math.gamma(1.0 / 3.0))

_ROT_UP = cmath.exp(2j * math.pi / 3)
_ROT_DOWN = cmath.exp(-2j * math.pi / 3)
_E_PI6 = cmath.exp(1j * math.pi / 6)

_SERIES_MAX_TERMS = 400
_QUAD_LIMIT = 400
_ALGEBRAIC_MAX_TERMS = 1000
_GUARD_DIGITS = 20


def airy(l: int, x: complex) -> tuple[complex, complex]:
    """``Ai_l(x) = Ai(x e^{-2 pi i l/3})`` and its derivative with respect to ``x``."""
    if l not in (-1, 0, 1):
        raise ValueError(f"Airy rotation index must be 0 or +-1, got {l}")
    rot = cmath.exp(-2j * math.pi * l / 3)
    ai, aip, _, _ = special.airy(complex(x) * rot)
    return complex(ai), complex(aip) * rot


# ---------------------------------------------------------------------------
# Hi
# ---------------------------------------------------------------------------


def _maclaurin(x: complex, c0: float, c1: float, forcing: float) -> tuple[complex, complex]:
    # w'' - x w = forcing:  2 c_2 = forcing,  (k+2)(k+1) c_{k+2} = c_{k-1}
    coeffs = [complex(c0), complex(c1), complex(forcing / 2.0)]
    value = coeffs[0] + coeffs[1] * x + coeffs[2] * x * x
    deriv = coeffs[1] + 2.0 * coeffs[2] * x
    power = x * x  # x^(k-1) for the derivative of the k-th term
    for k in range(3, _SERIES_MAX_TERMS):
        ck = coeffs[k - 3] / (k * (k - 1))
        coeffs.append(ck)
        term_d = k * ck * power
        power *= x
        term = ck * power
        value += term
        deriv += term_d
        if abs(term) < 1e-17 * abs(value) and abs(term_d) < 1e-17 * abs(deriv) and k > 8:
            break
    return value, deriv


def _hi_maclaurin_extended(x: complex) -> tuple[complex, complex]:
    # Hi recurrence at a working precision raised by the digits lost to cancellation
    r = abs(x)
    lost = (2.0 / 3.0) * r**1.5 / math.log(10.0)
    dps = 15 + _GUARD_DIGITS + math.ceil(lost)
    min_terms = int(2.0 * r**1.5) + 8
    with mpmath.workdps(dps):
        c0 = 2 / (mpmath.power(3, mpmath.mpf(7) / 6) * mpmath.gamma(mpmath.mpf(2) / 3))
        c1 = 2 / (mpmath.power(3, mpmath.mpf(5) / 6) * mpmath.gamma(mpmath.mpf(1) / 3))
        xm = mpmath.mpc(x.real, x.imag)
        coeffs = [c0, c1, 1 / (2 * mpmath.pi)]
        value = coeffs[0] + coeffs[1] * xm + coeffs[2] * xm * xm
        deriv = coeffs[1] + 2 * coeffs[2] * xm
        power = xm * xm
        eps = mpmath.mpf(10) ** (-dps)
        for k in range(3, 20 * _SERIES_MAX_TERMS):
            ck = coeffs[k - 3] / (k * (k - 1))
            coeffs.append(ck)
            term_d = k * ck * power
            power *= xm
            term = ck * power
            value += term
            deriv += term_d
            if k > min_terms and abs(term) < eps * abs(value) and abs(term_d) < eps * abs(deriv):
                break
        LOGGER.debug("Hi Maclaurin at x=%s with %d digits and %d terms", x, dps, k)
        return complex(value), complex(deriv)


def _hi_ray_angle(x: complex) -> float:
    arg = cmath.phase(x) if x != 0 else 0.0
    if abs(arg) <= math.pi / 2:
        theta = arg / 2.0
    else:
        theta = math.copysign(math.pi, arg) - arg
    limit = math.pi / 7
    return max(-limit, min(limit, theta))


def hi_quadrature(x: complex, *, epsrel: float = 1e-13) -> ScorerValue:
    """``Hi`` and ``Hi'`` by adaptive quadrature of the defining integral along a rotated ray.

    ``Hi(x) = (1/pi) int_0^inf exp(-t^3/3 + x t) dt`` with ``t = tau e^{i theta}``,
    ``|theta| < pi/6``, chosen to follow the saddle or the endpoint decay.
    """
    x = complex(x)
    theta = _hi_ray_angle(x)
    rot = cmath.exp(1j * theta)
    cube = cmath.exp(3j * theta)
    upper = 2.0 * math.sqrt(abs(x)) + (120.0 / math.cos(3.0 * theta)) ** (1.0 / 3.0)

    def integrand(tau: float) -> complex:
        return cmath.exp(-(tau**3) * cube / 3.0 + x * rot * tau)

    def _quad(fn) -> complex:
        parts = [
            integrate.quad(
                lambda t, f=f: f(fn(t)),
                0.0,
                upper,
                epsabs=0.0,
                epsrel=epsrel,
                limit=_QUAD_LIMIT,
            )[0]
            for f in (lambda v: v.real, lambda v: v.imag)
        ]
        return complex(*parts)

    value = rot * _quad(integrand) / math.pi
    deriv = rot * rot * _quad(lambda t: t * integrand(t)) / math.pi
    LOGGER.debug("Hi quadrature at x=%s along theta=%.4f to %.2f", x, theta, upper)
    return ScorerValue(value=value, derivative=deriv, method="quadrature")


def _hi_algebraic(x: complex) -> tuple[complex, complex]:
    # Hi(x) ~ -(1/pi) sum_k (3k)!/(k! 3^k) x^(-3k-1), truncated at the smallest term
    inv3 = 1.0 / (x**3)
    term = 1.0 / x
    value = 0j
    deriv = 0j
    best = math.inf
    for k in range(_ALGEBRAIC_MAX_TERMS):
        size = abs(term)
        if not cmath.isfinite(term) or size > best or size == 0.0:
            break
        best = size
        value += term
        deriv -= (3 * k + 1) * term / x
        term *= (3 * k + 3) * (3 * k + 2) * (3 * k + 1) / ((k + 1) * 3.0) * inv3
    return -value / math.pi, -deriv / math.pi


def _hi_asymptotic(x: complex) -> tuple[complex, complex]:
    if abs(cmath.phase(x)) >= 2.0 * math.pi / 3.0:
        return _hi_algebraic(x)
    # Hi(x) = e^{+-2pi i/3} Hi(x e^{+-2pi i/3}) + 2 e^{-+pi i/6} Ai(x e^{-+2pi i/3})
    if x.imag >= 0.0:
        rot, back, phase = _ROT_UP, _ROT_DOWN, 1.0 / _E_PI6
    else:
        rot, back, phase = _ROT_DOWN, _ROT_UP, _E_PI6
    h, hp = _hi_algebraic(x * rot)
    ai, aip, _, _ = special.airy(x * back)
    value = rot * h + 2.0 * phase * complex(ai)
    deriv = rot * rot * hp + 2.0 * phase * back * complex(aip)
    return value, deriv


def scorer_hi(x: complex, *, settings: LommelSettings | None = None) -> ScorerValue:
    """``Hi(x)`` and ``Hi'(x)``."""
    settings = settings or get_settings()
    x = complex(x)
    r = abs(x)
    if r <= settings.scorer_switch:
        value, deriv = _maclaurin(x, HI0, HI0_PRIME, 1.0 / math.pi)
        return ScorerValue(value=value, derivative=deriv, method="power_series")
    if r < settings.scorer_asymptotic:
        value, deriv = _hi_maclaurin_extended(x)
        return ScorerValue(value=value, derivative=deriv, method="power_series")
    value, deriv = _hi_asymptotic(x)
    return ScorerValue(value=value, derivative=deriv, method="asymptotic")


# ---------------------------------------------------------------------------
# Wi^{(j,k)} and Gi
# ---------------------------------------------------------------------------


def wi(
    j: int, k: int, x: complex, *, settings: LommelSettings | None = None
) -> tuple[complex, complex]:
    """Rotated Scorer solution ``Wi^{(j,k)}(x)`` and its derivative.

    ``(-1,1)``: ``pi Hi(x)``; ``(-1,0)``: ``pi e^{-2pi i/3} Hi(x e^{-2pi i/3})``;
    ``(0,1)``: ``pi e^{2pi i/3} Hi(x e^{2pi i/3})``.
    """
    pair: JK = (j, k)
    if pair not in SIMPLE_PAIRS:
        raise InvalidPair(f"no Scorer solution for (j,k) = {pair}", details={"pair": pair})
    x = complex(x)
    if pair == (-1, 1):
        h = scorer_hi(x, settings=settings)
        return math.pi * h.value, math.pi * h.derivative
    rot = _ROT_DOWN if pair == (-1, 0) else _ROT_UP
    h = scorer_hi(x * rot, settings=settings)
    return math.pi * rot * h.value, math.pi * rot * rot * h.derivative


def scorer_gi(x: complex, *, settings: LommelSettings | None = None) -> ScorerValue:
    """``Gi(x)`` and ``Gi'(x)``; outside the series disk ``-(Wi^{(0,1)} + Wi^{(-1,0)})/(2pi)``."""
    settings = settings or get_settings()
    x = complex(x)
    if abs(x) <= settings.scorer_switch:
        value, deriv = _maclaurin(x, HI0 / 2.0, HI0_PRIME / 2.0, -1.0 / math.pi)
        return ScorerValue(value=value, derivative=deriv, method="power_series")
    up = scorer_hi(x * _ROT_UP, settings=settings)
    down = scorer_hi(x * _ROT_DOWN, settings=settings)
    value = -(_ROT_UP * up.value + _ROT_DOWN * down.value) / 2.0
    deriv = -(_ROT_DOWN * up.derivative + _ROT_UP * down.derivative) / 2.0
    method = "asymptotic" if "asymptotic" in (up.method, down.method) else up.method
    return ScorerValue(value=value, derivative=deriv, method=method)
