"""Turning-point expansions of the inhomogeneous scaled Bessel equation.

The particular solutions ``w^{(j,k)}_mu(nu, z)`` are expanded either by the simple
algebraic series in ``G_{mu,s}(z)`` (valid in ``S^{(j,k)}(delta)``) or by the Scorer-type
form ``z^{1/2} gamma_mu {Wi A + Wi' B} + G_script`` valid across the whole of ``S(delta)``.
Near ``z = 1`` the individual terms of the coefficient expansions are singular, so their
sums are recovered from a trapezoidal Cauchy integral over a circle about ``z = 1``.
"""

from __future__ import annotations

import cmath
import logging
import math
from typing import Callable, Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from .airy_scorer import wi
from .bessel_ref import hyperbolic_sums, uniform_AB
from .coeffs import CoefficientTable, get_table
from .exceptions import DivergenceError, GeometryError, PoleError, RegionError
from .models import (
    JK,
    InhomogKit,
    LommelSettings,
    TransformPoint,
    get_settings,
)
from .transform import liouville

LOGGER = logging.getLogger(__name__)

Route = Literal["auto", "simple", "scorer"]

_RADIUS_GROWTH = 1.25
_RADIUS_LIMIT = 0.8
_INNER_FRACTION = 0.75
_ROUTE_SAFETY = 10.0
_PAIR_ROTATION: dict[JK, complex] = {
    (-1, 1): 1.0 + 0j,
    (-1, 0): cmath.exp(-2j * math.pi / 3),
    (0, 1): cmath.exp(2j * math.pi / 3),
}


def gamma_mu(mu: complex, nu: float) -> complex:
    """Connection coefficient ``gamma_mu(nu)`` from its Gamma-ratio form.

    ``2^{mu-1/2} Gamma((mu+nu+1)/2) / (nu^{mu+4/3} Gamma((nu-mu+1)/2))``; exactly
    ``1/(sqrt(2) nu^{4/3})`` for ``mu = 0``.
    """
    mu = complex(mu)
    top = (mu + nu + 1.0) / 2.0
    bottom = (nu - mu + 1.0) / 2.0
    if _is_gamma_pole(top):
        raise PoleError(f"Gamma((mu+nu+1)/2) has a pole at mu={mu}, nu={nu}")
    if _is_gamma_pole(bottom):
        return 0j
    log_value = (
        (mu - 0.5) * math.log(2.0)
        + special.loggamma(top)
        - special.loggamma(bottom)
        - (mu + 4.0 / 3.0) * math.log(nu)
    )
    return complex(cmath.exp(log_value))


def _is_gamma_pole(x: complex, tol: float = 1e-12) -> bool:
    return abs(x.imag) < tol and x.real < 0.5 and abs(x.real - round(x.real)) < tol


# ---------------------------------------------------------------------------
# Cauchy smoothing about the turning point
# ---------------------------------------------------------------------------


def cauchy_smooth(
    f: Callable[[np.ndarray], ArrayLike], z: complex, r: float, n_nodes: int
) -> complex | np.ndarray:
    """Value at ``z`` of the function sampled by ``f`` on the circle ``|t - 1| = r``.

    Trapezoidal rule for ``(1/2 pi i) oint f(t) dt/(t - z)`` on half-offset nodes, which
    are closed under conjugation.  ``f`` receives the node array and returns values along
    its last axis.
    """
    z = complex(z)
    if abs(z - 1.0) >= r:
        raise GeometryError(
            f"|z - 1| = {abs(z - 1.0):.4g} is not inside the circle of radius {r}", z=z
        )
    theta = 2.0 * math.pi * (np.arange(n_nodes) + 0.5) / n_nodes
    offsets = r * np.exp(1j * theta)
    nodes = 1.0 + offsets
    values = np.asarray(f(nodes), dtype=complex)
    weights = offsets / (nodes - z) / n_nodes
    result = values @ weights
    return complex(result) if np.ndim(result) == 0 else result


def near_turning_point(
    tp: TransformPoint, nu: float, settings: LommelSettings | None = None
) -> bool:
    """Whether the coefficient expansions at ``tp`` must go through the Cauchy circle."""
    settings = settings or get_settings()
    zeta = abs(tp.zeta)
    return (
        abs(tp.z - 1.0) < _INNER_FRACTION * settings.cauchy_radius
        or zeta < settings.zeta_switch
        or nu * nu * zeta**3 < settings.j_cutoff
    )


def smoothing_radius(
    nu: float, z: complex = 1.0, settings: LommelSettings | None = None
) -> float:
    """Cauchy radius enclosing ``z`` whose nodes keep ``nu^2 |zeta|^3`` above the cutoff."""
    settings = settings or get_settings()
    r = max(settings.cauchy_radius, abs(complex(z) - 1.0) / _INNER_FRACTION)
    n = settings.cauchy_nodes
    while True:
        theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        nodes = 1.0 + r * np.exp(1j * theta)
        worst = min(abs(liouville(complex(t))[0]) for t in nodes)
        if nu * nu * worst**3 >= settings.j_cutoff:
            return r
        if r * _RADIUS_GROWTH > _RADIUS_LIMIT:
            raise DivergenceError(
                f"no Cauchy radius up to {_RADIUS_LIMIT} keeps nu^2 zeta^3 above "
                f"{settings.j_cutoff} for nu={nu}"
            )
        r *= _RADIUS_GROWTH
        LOGGER.debug("growing Cauchy radius to %.3f for nu=%s", r, nu)


# ---------------------------------------------------------------------------
# J(nu, z) and G_script
# ---------------------------------------------------------------------------


def _factorial_sum(x: complex, offset: int, k_max: int) -> tuple[complex, int]:
    # sum_k (3k+offset)!/(k! x^k), truncated at the smallest term or k_max
    term = complex(math.factorial(offset))
    total = term
    best = abs(term)
    used = 1
    for k in range(k_max):
        ratio = (3 * k + 1 + offset) * (3 * k + 2 + offset) * (3 * k + 3 + offset)
        nxt = term * ratio / ((k + 1) * x)
        if abs(nxt) >= best:
            break
        term = nxt
        best = abs(term)
        total += term
        used += 1
    return total, used


def j_series(
    nu: float, z: complex, s_max: int, k_max: int, cutoff: float, table: CoefficientTable
) -> complex:
    zeta, xi, sqrt_zeta, w, _ = liouville(z)
    zeta32 = zeta * sqrt_zeta
    large = 3.0 * nu * nu * zeta32 * zeta32
    if abs(large) < 3.0 * cutoff:
        raise DivergenceError(
            f"nu^2 zeta^3 = {abs(large) / 3.0:.4g} is below the cutoff {cutoff}", z=z
        )
    beta = 1.0 / w
    even_t, odd_t = hyperbolic_sums(nu, beta, xi, s_max, table, tilde=True)
    even, odd = hyperbolic_sums(nu, beta, xi, s_max, table, tilde=False)
    first, _ = _factorial_sum(large, 0, k_max)
    second, _ = _factorial_sum(large, 1, k_max)
    return -cmath.exp(even_t) * cmath.cosh(odd_t) * first + (
        cmath.exp(even) * cmath.sinh(odd) * second / (nu * zeta32)
    )


def j_script(
    nu: float,
    tp: TransformPoint,
    s_max: int | None = None,
    k_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> complex:
    """The factorial-series function ``J(nu, z)`` entering ``G_script``.

    Raises :class:`DivergenceError` when ``|nu^2 zeta^3|`` is below ``j_cutoff``.
    """
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    k_max = settings.k_max if k_max is None else k_max
    table = table or get_table(settings.coeff_depth)
    return j_series(nu, tp.z, s_max, k_max, settings.j_cutoff, table)


def _g_direct(
    mu: complex,
    nu: float,
    z: complex,
    gamma: complex,
    s_max: int,
    settings: LommelSettings,
    table: CoefficientTable,
) -> complex:
    zeta, _, _, _, phi = liouville(z)
    series = complex(table.g_mu_sum(mu, nu, s_max, z)) / (nu * nu)
    j_val = j_series(nu, z, s_max, settings.k_max, settings.j_cutoff, table)
    return series - gamma * cmath.sqrt(z) * phi * j_val / (nu ** (2.0 / 3.0) * zeta)


def inhomog_kit(
    mu: complex,
    nu: float,
    tp: TransformPoint,
    s_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> InhomogKit:
    """``gamma_mu``, ``G_script`` and (away from ``z = 1``) ``J`` at a transformed point."""
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = table or get_table(settings.coeff_depth)
    gamma = gamma_mu(mu, nu)
    if not near_turning_point(tp, nu, settings):
        j_val = j_series(nu, tp.z, s_max, settings.k_max, settings.j_cutoff, table)
        series = complex(table.g_mu_sum(mu, nu, s_max, tp.z)) / (nu * nu)
        g_val = series - gamma * cmath.sqrt(tp.z) * tp.phi * j_val / (
            nu ** (2.0 / 3.0) * tp.zeta
        )
        return InhomogKit(gamma_mu=gamma, G_script=g_val, J_script=j_val, method="direct")

    radius = smoothing_radius(nu, tp.z, settings)

    def nodes_g(ts: np.ndarray) -> np.ndarray:
        return np.array(
            [_g_direct(mu, nu, complex(t), gamma, s_max, settings, table) for t in ts]
        )

    g_val = cauchy_smooth(nodes_g, tp.z, radius, settings.cauchy_nodes)
    LOGGER.debug("G_script at z=%s from the Cauchy circle r=%.3f (nu=%s)", tp.z, radius, nu)
    return InhomogKit(gamma_mu=gamma, G_script=complex(g_val), method="cauchy")


# ---------------------------------------------------------------------------
# w^{(j,k)}_mu
# ---------------------------------------------------------------------------


def simple_series(
    mu: complex,
    nu: float,
    z: complex,
    s_max: int,
    table: CoefficientTable,
) -> tuple[complex, float]:
    """``nu^{-2} sum_{s<=s_max} G_{mu,s}(z) nu^{-2s}`` and the relative size of the next term."""
    total = complex(table.g_mu_sum(mu, nu, s_max, z)) / (nu * nu)
    if s_max + 1 <= table.depth:
        nxt = abs(table.g_mu(mu, s_max + 1, z)) * nu ** (-2 * s_max - 4)
    else:
        nxt = abs(table.g_mu(mu, s_max, z)) * nu ** (-2 * s_max - 4)
    return total, nxt / abs(total) if total != 0 else math.inf


def _switched_exponential(y: complex) -> float:
    # |exp(2/3 y^{3/2})| times its Stokes multiplier, smoothed past the lines arg y = +-2pi/3
    size = abs(y)
    if size == 0.0:
        return 1.0
    singulant = (2.0 / 3.0) * size**1.5
    angle = 1.5 * cmath.phase(y)
    growth = singulant * math.cos(angle)
    if abs(angle) <= math.pi:
        return math.exp(min(growth, 700.0))
    if growth >= 0.0:
        return 0.0
    sigma = singulant * abs(math.sin(angle)) / math.sqrt(-2.0 * growth)
    return math.exp(growth) * 0.5 * float(special.erfc(sigma))


def exponential_remainder(
    jks: tuple[JK, ...],
    mu: complex,
    nu: float,
    tp: TransformPoint,
    series: complex,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> float:
    """Relative size of the Airy-type terms that the simple series for ``jks`` leaves out.

    The simple series is the algebraic expansion of ``Wi^{(j,k)}``; what it drops is the
    exponential that ``Wi^{(j,k)}`` picks up towards the edge of ``S^{(j,k)}(delta)``.
    """
    if series == 0:
        return math.inf
    gamma = gamma_mu(mu, nu)
    if gamma == 0:
        return 0.0
    ab = uniform_AB(nu, tp, 0, settings=settings, table=table)
    x = nu ** (2.0 / 3.0) * tp.zeta
    worst = 0.0
    for jk in jks:
        y = x * _PAIR_ROTATION[jk]
        quarter = max(abs(y), 1e-300) ** 0.25
        size = _switched_exponential(y) / (2.0 * math.sqrt(math.pi))
        worst = max(worst, size * (abs(ab.A) / quarter + abs(ab.B) * quarter))
    dropped = 2.0 * math.pi * abs(cmath.sqrt(tp.z) * gamma) * worst
    return dropped / abs(series)


def simple_error(
    jks: tuple[JK, ...],
    mu: complex,
    nu: float,
    tp: TransformPoint,
    series: complex,
    rel_next: float,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> float:
    """Bound on the relative error of the simple series: truncation plus dropped exponentials."""
    remainder = exponential_remainder(jks, mu, nu, tp, series, settings=settings, table=table)
    return _ROUTE_SAFETY * (rel_next + remainder)


def select_route(
    jks: tuple[JK, ...],
    tp: TransformPoint,
    nu: float,
    route: Route = "auto",
    settings: LommelSettings | None = None,
) -> Literal["simple", "scorer"]:
    """``simple`` when ``tp`` lies in every ``S^{(j,k)}(delta)`` and away from ``z = 1``."""
    settings = settings or get_settings()
    if tp.region is None:
        raise ValueError("route selection needs a classified TransformPoint")
    inside = all(tp.region.simple(jk) for jk in jks)
    if route == "simple":
        if not inside:
            raise RegionError(
                f"z={tp.z} is outside the simple region of {jks}", z=tp.z
            )
        return "simple"
    if route == "scorer":
        return "scorer"
    if inside and not near_turning_point(tp, nu, settings):
        return "simple"
    return "scorer"


def scorer_bracket(
    jk: JK,
    nu: float,
    tp: TransformPoint,
    s_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> complex:
    """``Wi^{(j,k)}(nu^{2/3} zeta) A(nu, z) + Wi^{(j,k)}'(nu^{2/3} zeta) B(nu, z)``."""
    settings = settings or get_settings()
    ab = uniform_AB(nu, tp, s_max, settings=settings, table=table)
    value, deriv = wi(jk[0], jk[1], nu ** (2.0 / 3.0) * tp.zeta, settings=settings)
    return value * ab.A + deriv * ab.B


def w_inhomog(
    jk: JK,
    mu: complex,
    nu: float,
    tp: TransformPoint,
    *,
    route: Route = "auto",
    s_max: int | None = None,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> complex:
    """Particular solution ``w^{(j,k)}_mu(nu, z)`` of the scaled inhomogeneous equation."""
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = table or get_table(settings.coeff_depth)
    if tp.region is not None and not tp.region.in_S_delta:
        raise RegionError("point lies within delta of the cut (-inf, -1]", z=tp.z)
    chosen = select_route((jk,), tp, nu, route, settings)
    if chosen == "simple":
        series, rel_next = simple_series(mu, nu, tp.z, s_max, table)
        if route == "simple":
            return series
        err = simple_error((jk,), mu, nu, tp, series, rel_next, settings=settings, table=table)
        if err <= settings.route_tol:
            return series
        LOGGER.debug("simple series for %s at z=%s is off by ~%.1e; using Scorer", jk, tp.z, err)
    kit = inhomog_kit(mu, nu, tp, s_max, settings=settings, table=table)
    bracket = scorer_bracket(jk, nu, tp, s_max, settings=settings, table=table)
    return cmath.sqrt(tp.z) * kit.gamma_mu * bracket + kit.G_script
