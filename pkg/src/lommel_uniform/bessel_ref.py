"""Reference Bessel functions and their uniform Airy-type expansions.

``bessel`` wraps the AMOS routines in :mod:`scipy.special`.  ``uniform_AB`` evaluates the
slowly varying coefficient functions multiplying ``Ai`` and ``Ai'`` in the turning-point
expansion of ``J_nu(nu z)``, ``H^{(1)}_nu(nu z)`` and ``H^{(2)}_nu(nu z)``.
"""

from __future__ import annotations

import cmath
import logging
import math
import warnings
from typing import Literal

import numpy as np
from scipy import special

from .airy_scorer import airy
from .coeffs import CoefficientTable, get_table
from .exceptions import AccuracyWarning, DomainError, RegionError
from .models import LommelSettings, TransformPoint, UniformAB, get_settings
from .transform import compute_transform, distance_to_cut, liouville

LOGGER = logging.getLogger(__name__)

BesselKind = Literal["J", "Y", "H1", "H2"]

_ZERO_RATIO = 1e-6
_H1_FACTOR = 2.0 ** 1.5 * cmath.exp(-1j * math.pi / 3)
_H2_FACTOR = 2.0 ** 1.5 * cmath.exp(1j * math.pi / 3)


def bessel(kind: BesselKind, nu: float, z: complex) -> complex:
    """``J_nu``, ``Y_nu``, ``H^{(1)}_nu`` or ``H^{(2)}_nu`` at complex ``z``."""
    z = complex(z)
    if z == 0:
        raise DomainError("Bessel functions are evaluated for z != 0", function=kind, z=z)
    if kind == "J":
        value = complex(special.jv(nu, z))
    elif kind == "Y":
        value = complex(special.yv(nu, z))
    elif kind == "H1":
        return complex(special.hankel1(nu, z))
    elif kind == "H2":
        return complex(special.hankel2(nu, z))
    else:
        raise ValueError(f"unknown Bessel kind {kind!r}")
    scale = max(abs(special.hankel1(nu, z)), abs(special.hankel2(nu, z)))
    if abs(value) < _ZERO_RATIO * scale:
        warnings.warn(
            f"{kind}_{nu}({z}) is close to a zero; relative accuracy is reduced",
            AccuracyWarning,
            stacklevel=2,
        )
    return value


# ---------------------------------------------------------------------------
# Uniform coefficient functions
# ---------------------------------------------------------------------------


def _script_e(
    table: CoefficientTable, s: int, beta: complex, xi: complex, tilde: bool
) -> complex:
    a = table.a_float(s, tilde=tilde)
    return table.e_value(s, beta) + (-1) ** s * a / (s * xi**s)


def hyperbolic_sums(
    nu: float, beta: complex, xi: complex, s_max: int, table: CoefficientTable, tilde: bool
) -> tuple[complex, complex]:
    """Even and odd hyperbolic sums ``(sum E_{2s} nu^{-2s}, sum E_{2s+1} nu^{-2s-1})``."""
    even = 0j
    odd = 0j
    for s in range(1, s_max + 1):
        even += _script_e(table, 2 * s, beta, xi, tilde) * nu ** (-2 * s)
    for s in range(0, s_max + 1):
        odd += _script_e(table, 2 * s + 1, beta, xi, tilde) * nu ** (-2 * s - 1)
    return even, odd


def ab_direct(
    nu: float,
    z: complex,
    s_max: int,
    *,
    table: CoefficientTable | None = None,
    near_one_radius: float = 0.05,
) -> tuple[complex, complex]:
    """``(A, B)`` from the exponential-hyperbolic form at a point away from ``z = 1``."""
    table = table or get_table()
    zeta, xi, sqrt_zeta, w, phi = liouville(z, near_one_radius)
    beta = 1.0 / w
    even_t, odd_t = hyperbolic_sums(nu, beta, xi, s_max, table, tilde=True)
    even, odd = hyperbolic_sums(nu, beta, xi, s_max, table, tilde=False)
    a_val = phi * cmath.exp(even_t) * cmath.cosh(odd_t)
    b_val = phi / (nu ** (1.0 / 3.0) * sqrt_zeta) * cmath.exp(even) * cmath.sinh(odd)
    return a_val, b_val


def _check_region(tp: TransformPoint, nu: float, settings: LommelSettings) -> None:
    if nu < settings.nu_min:
        raise DomainError(
            f"uniform expansions need nu >= {settings.nu_min}, got {nu}", z=tp.z
        )
    if tp.region is not None:
        inside = tp.region.in_S_delta
    else:
        inside = distance_to_cut(tp.z) >= settings.delta
    if not inside:
        raise RegionError("point lies within delta of the cut (-inf, -1]", z=tp.z)


def uniform_AB(
    nu: float,
    tp: TransformPoint,
    s_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
    table: CoefficientTable | None = None,
) -> UniformAB:
    """Coefficient functions ``A(nu, z)`` and ``B(nu, z)`` at a transformed point.

    Close to the turning point the expansions are singular term by term, so the
    values are recovered from a Cauchy integral over a circle about ``z = 1``.
    """
    from .uniform_engine import cauchy_smooth

    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = table or get_table(settings.coeff_depth)
    _check_region(tp, nu, settings)
    inner = abs(tp.z - 1.0) < 0.75 * settings.cauchy_radius
    if not inner and abs(tp.zeta) >= settings.zeta_switch:
        a_val, b_val = ab_direct(
            nu, tp.z, s_max, table=table, near_one_radius=settings.near_one_radius
        )
        return UniformAB(A=a_val, B=b_val, terms_used=s_max, near_turning_point=False)

    def nodes_ab(ts: np.ndarray) -> np.ndarray:
        out = np.empty((2, ts.size), dtype=complex)
        for i, t in enumerate(ts):
            out[:, i] = ab_direct(nu, complex(t), s_max, table=table)
        return out

    values = cauchy_smooth(
        nodes_ab, tp.z, settings.cauchy_radius, settings.cauchy_nodes
    )
    LOGGER.debug("A, B at z=%s from the Cauchy circle (nu=%s)", tp.z, nu)
    return UniformAB(
        A=complex(values[0]), B=complex(values[1]), terms_used=s_max, near_turning_point=True
    )


def uniform_bessel(
    kind: BesselKind,
    nu: float,
    z: complex,
    *,
    s_max: int | None = None,
    settings: LommelSettings | None = None,
) -> complex:
    """``J_nu(nu z)``, ``Y_nu(nu z)`` or ``H^{(1,2)}_nu(nu z)`` from the Airy-type expansions."""
    settings = settings or get_settings()
    tp = compute_transform(z, settings=settings)
    ab = uniform_AB(nu, tp, s_max, settings=settings)
    x = nu ** (2.0 / 3.0) * tp.zeta

    def w(l: int) -> complex:
        ai, aip = airy(l, x)
        return ai * ab.A + aip * ab.B

    scale = nu ** (-1.0 / 3.0)
    if kind == "J":
        return math.sqrt(2.0) * scale * w(0)
    h1 = _H1_FACTOR * scale * w(-1) if kind in ("H1", "Y") else 0j
    h2 = _H2_FACTOR * scale * w(1) if kind in ("H2", "Y") else 0j
    if kind == "H1":
        return h1
    if kind == "H2":
        return h2
    if kind == "Y":
        return (h1 - h2) / 2j
    raise ValueError(f"unknown Bessel kind {kind!r}")
