"""Liouville variables of the scaled Bessel equation and region classification.

The upper half plane is mapped to ``arg zeta`` in ``[-pi, 0]``; the lower half plane is
obtained by conjugation.  Real ``z > 1`` takes the limit from above.
"""

from __future__ import annotations

import cmath
import logging
import math
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .exceptions import BranchError, DomainError
from .models import (
    SIMPLE_PAIRS,
    LommelSettings,
    RegionLabel,
    TransformPoint,
    get_settings,
    pair_key,
)

LOGGER = logging.getLogger(__name__)

_NEAR_ONE_TERMS = 30
_EYE_SAMPLES = 720
_ROT = {l: cmath.exp(-2j * math.pi * l / 3) for l in (-1, 0, 1)}


def _check_argument(z: complex) -> None:
    if z == 0:
        raise DomainError("z = 0 is a singular point", z=z)
    if z.imag == 0.0 and z.real < 0.0 and math.copysign(1.0, z.imag) < 0.0:
        raise BranchError("arg z = -pi; use a continuation formula", z=z)


def _near_one_f(u: complex) -> complex:
    # f(u) = (3/2) * sum_{k>=1} u^{k-1} / (2k+1), so that (3/2) xi = w^3 f(w^2)
    total = 0j
    power = 1 + 0j
    for k in range(1, _NEAR_ONE_TERMS + 1):
        total += power / (2 * k + 1)
        power *= u
    return 1.5 * total


def _series_variables(z: complex) -> tuple[complex, complex, complex, complex, complex]:
    u = 1.0 - z * z
    f = _near_one_f(u)
    if z.imag == 0.0 and z.real > 1.0:
        # upper-side limit, as in the closed form
        w = complex(0.0, -math.sqrt(z.real * z.real - 1.0))
    else:
        w = cmath.sqrt(u)
    f13 = f ** (1.0 / 3.0)
    zeta = u * f13 * f13
    sqrt_zeta = w * f13
    xi = (2.0 / 3.0) * w * u * f
    phi = f ** (1.0 / 6.0)
    return zeta, xi, sqrt_zeta, w, phi


def _closed_variables(z: complex) -> tuple[complex, complex, complex, complex, complex]:
    # evaluated for Im z >= 0 only
    x = z.real
    if z.imag == 0.0 and abs(x) > 1.0:
        w = -1j * math.copysign(1.0, x) * math.sqrt(x * x - 1.0)
    else:
        w = cmath.sqrt(1.0 - z * z)
    xi = cmath.log(1.0 + w) - cmath.log(z) - w
    t = 1.5 * xi
    a = cmath.phase(t)
    if a > math.pi / 4:
        a -= 2.0 * math.pi
    zeta = abs(t) ** (2.0 / 3.0) * cmath.exp(1j * 2.0 * a / 3.0)
    if z.imag == 0.0 and x > 0.0:
        zeta = complex(math.copysign(abs(t) ** (2.0 / 3.0), 1.0 - x), 0.0)
        if x < 1.0:
            xi = complex(xi.real, 0.0)
    sqrt_zeta = t / zeta
    phi = cmath.sqrt(sqrt_zeta / w)
    return zeta, xi, sqrt_zeta, w, phi


def liouville(
    z: complex, near_one_radius: float = 0.05
) -> tuple[complex, complex, complex, complex, complex]:
    """Raw ``(zeta, xi, sqrt_zeta, w, phi)`` at ``z`` with ``w = sqrt(1 - z^2)``.

    Used on hot paths (Cauchy nodes); no validation beyond the branch checks.
    """
    if abs(z - 1.0) < near_one_radius:
        return _series_variables(z)
    if z.imag < 0.0:
        values = _closed_variables(z.conjugate())
        return tuple(v.conjugate() for v in values)  # type: ignore[return-value]
    return _closed_variables(z)


def compute_transform(z: complex, *, settings: LommelSettings | None = None) -> TransformPoint:
    settings = settings or get_settings()
    z = complex(z)
    _check_argument(z)
    near_one = abs(z - 1.0) < settings.near_one_radius
    zeta, xi, sqrt_zeta, w, phi = liouville(z, settings.near_one_radius)
    return TransformPoint(
        z=z,
        zeta=zeta,
        xi=xi,
        sqrt_zeta=sqrt_zeta,
        w=w,
        beta=None if w == 0 else 1.0 / w,
        phi=phi,
        near_one=near_one,
    )


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------


def in_sector(zeta: complex, l: int) -> bool:
    """Closed sector test ``|arg(zeta e^{-2 pi i l/3})| <= pi/3``."""
    if zeta == 0:
        return True
    return abs(cmath.phase(zeta * _ROT[l])) <= math.pi / 3 + 1e-12


def _re_xi_on_ray(r: float, theta: float) -> float:
    return _closed_variables(cmath.rect(r, theta))[1].real


@lru_cache(maxsize=4)
def eye_boundary(samples: int = _EYE_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
    """Sampled upper and lower curves ``Re xi = 0`` joining -1 and 1."""
    thetas = np.linspace(0.0, math.pi, samples + 2)[1:-1]
    radii = np.empty_like(thetas)
    for i, theta in enumerate(thetas):
        hi = 1.0
        while _re_xi_on_ray(hi, theta) > 0.0:
            hi *= 1.25
        radii[i] = brentq(_re_xi_on_ray, 1e-3, hi, args=(theta,), xtol=1e-13)
    upper = np.concatenate(([1.0 + 0j], radii * np.exp(1j * thetas), [-1.0 + 0j]))
    LOGGER.debug("sampled eye boundary with %d points", upper.size)
    return upper, upper.conj()


def _distance_to_points(z: complex, points: np.ndarray) -> float:
    return float(np.min(np.abs(points - z)))


def distance_to_cut(z: complex) -> float:
    """Distance from ``z`` to the interval ``(-inf, -1]``."""
    return abs(z.imag) if z.real <= -1.0 else abs(z + 1.0)


def _distance_to_right_ray(z: complex) -> float:
    return abs(z.imag) if z.real >= 1.0 else abs(z - 1.0)


def distance_to_region(z: complex, l: int, zeta: complex | None = None) -> float:
    """Distance from ``z`` to the closed region ``S_l`` (zero inside it)."""
    if zeta is None:
        zeta = liouville(z)[0]
    if in_sector(zeta, l):
        return 0.0
    upper, lower = eye_boundary()
    cut = distance_to_cut(z)
    if l == 0:
        return min(_distance_to_points(z, upper), _distance_to_points(z, lower), cut)
    curve = upper if l == -1 else lower
    return min(_distance_to_points(z, curve), _distance_to_right_ray(z), cut)


def classify(
    z: complex, delta: float | None = None, *, settings: LommelSettings | None = None
) -> RegionLabel:
    settings = settings or get_settings()
    delta = settings.delta if delta is None else delta
    z = complex(z)
    _check_argument(z)
    zeta = liouville(z, settings.near_one_radius)[0]
    members = {l: in_sector(zeta, l) for l in (-1, 0, 1)}
    in_s_delta = distance_to_cut(z) >= delta
    simple: dict[str, bool] = {}
    for j, k in SIMPLE_PAIRS:
        (l,) = {-1, 0, 1} - {j, k}
        simple[pair_key((j, k))] = (
            in_s_delta
            and (members[j] or members[k])
            and distance_to_region(z, l, zeta) >= delta
        )
    return RegionLabel(
        in_S0=members[0],
        in_S_minus1=members[-1],
        in_S_plus1=members[1],
        in_S_delta=in_s_delta,
        in_Sjk_delta=simple,
        delta=delta,
    )


def transform_with_region(
    z: complex, delta: float | None = None, *, settings: LommelSettings | None = None
) -> TransformPoint:
    """``compute_transform`` with the region label attached."""
    tp = compute_transform(z, settings=settings)
    return tp.model_copy(update={"region": classify(z, delta, settings=settings)})
