"""Struve functions ``H``, ``K``, ``K^{(1)}`` and ``K^{(2)}``.

Each is a Lommel function of bounded order ``mu~ = nu - 2 k_nu - 2`` plus a finite
polynomial part::

    K_nu       = B S_{mu~,nu}       + p_nu
    K^{(j)}_nu = B S^{(j)}_{mu~,nu} + p_nu      (j = 1, 2)
    H_nu       = B S^{(0)}_{mu~,nu} + p_nu

so the large-order Lommel expansions carry over.  For ``H``, ``K^{(1)}`` and ``K^{(2)}``
the two parts cancel when ``|z|`` is small against ``nu``; there the power series is used.
"""

from __future__ import annotations

import cmath
import logging
import math
import warnings
from typing import Literal

import numpy as np
from scipy import special

from .bessel_ref import bessel
from .coeffs import get_table
from .exceptions import CancellationWarning, DomainError, RangeError, RegionError
from .lommel import continued_bessel, lommel_asymptotic
from .models import (
    ComplexValue,
    EvalResult,
    LommelSettings,
    Method,
    ResultMethod,
    StruveReduction,
    Variant,
    get_settings,
)
from .oracle import oracle_series
from .uniform_engine import Route

LOGGER = logging.getLogger(__name__)

Which = Literal["H", "K", "K1", "K2"]

FUNCTION_IDS: dict[str, Which] = {
    "struveH": "H",
    "struveK": "K",
    "struveK1": "K1",
    "struveK2": "K2",
}
LOMMEL_VARIANTS: dict[Which, Variant] = {"H": "S0", "K": "S", "K1": "S1", "K2": "S2"}

_NAMES = {which: name for name, which in FUNCTION_IDS.items()}
_SERIES_MAX_TERMS = 5000
_SERIES_RTOL = 1e-17
_CANCELLATION_RATIO = 1e-8
_SERIES_REACH = 30.0
_LOG_MAX = 709.0
_EPS = 2.2e-16


# ---------------------------------------------------------------------------
# Reduction to bounded order
# ---------------------------------------------------------------------------


def struve_reduce(nu: float) -> StruveReduction:
    """``k_nu``, ``mu~``, ``B(mu~, nu)`` and the terms of ``p_nu`` for ``nu > 1``."""
    if nu <= 1.0:
        raise DomainError(f"the Lommel reduction needs nu > 1, got {nu}", function="struve")
    k_nu = math.floor(nu / 2.0 - 0.5)
    mu_tilde = nu - 2 * k_nu - 2
    log_b = (
        (1.0 - mu_tilde) * math.log(2.0)
        + special.gammaln((nu - mu_tilde + 1.0) / 2.0)
        - special.gammaln((nu + mu_tilde + 1.0) / 2.0)
        - math.log(math.pi)
    )
    ks = np.arange(k_nu + 1)
    powers = nu - 2.0 * ks - 1.0
    log_coeffs = (
        special.gammaln(ks + 0.5)
        - special.gammaln(nu + 0.5 - ks)
        - powers * math.log(2.0)
        - math.log(math.pi)
    )
    return StruveReduction(
        nu=nu,
        k_nu=k_nu,
        mu_tilde=mu_tilde,
        B_factor=math.exp(log_b),
        p_log_coeffs=log_coeffs.tolist(),
        p_powers=powers.tolist(),
    )


def _p_terms(reduction: StruveReduction, z: complex) -> np.ndarray:
    if z == 0:
        raise DomainError("p_nu is evaluated for z != 0", function="struve", z=z)
    log_z = cmath.log(z)
    logs = np.asarray(reduction.p_log_coeffs) + np.asarray(reduction.p_powers) * log_z
    return np.exp(logs)


def p_nu(reduction: StruveReduction, z: complex) -> complex:
    """``(1/pi) sum_{k <= k_nu} Gamma(k + 1/2) (z/2)^{nu-2k-1} / Gamma(nu + 1/2 - k)``.

    Terms are formed from their logarithms and added with exactly rounded summation.
    """
    terms = _p_terms(reduction, complex(z))
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def p_nu_ode_residual(nu: float, z: complex, h: float = 1e-3) -> float:
    """Relative residual of ``p_nu`` in its inhomogeneous Bessel equation.

    The right-hand side is the Struve forcing less ``B z^{mu~-1}``.
    """
    reduction = struve_reduce(nu)
    z = complex(z)
    samples = [p_nu(reduction, z + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (samples[0] - 8 * samples[1] + 8 * samples[3] - samples[4]) / (12 * h)
    d2 = (-samples[0] + 16 * samples[1] - 30 * samples[2] + 16 * samples[3] - samples[4]) / (
        12 * h * h
    )
    w = samples[2]
    forcing = cmath.exp((nu - 1.0) * cmath.log(z / 2.0) - special.gammaln(nu + 0.5))
    forcing /= math.sqrt(math.pi)
    lommel_forcing = reduction.B_factor * z ** (reduction.mu_tilde - 1.0)
    residual = d2 + d1 / z + (1.0 - nu * nu / (z * z)) * w - (forcing - lommel_forcing)
    scale = max(abs(forcing), abs(lommel_forcing), abs(d2), abs(nu * nu * w / (z * z)))
    return abs(residual) / scale


# ---------------------------------------------------------------------------
# Power series
# ---------------------------------------------------------------------------


def _h_series(nu: float, z: complex) -> tuple[complex, int, float]:
    # (z/2)^{nu+1} sum_k (-1)^k (z/2)^{2k} / (Gamma(k+3/2) Gamma(k+nu+3/2))
    half = z / 2.0
    log_lead = (nu + 1.0) * cmath.log(half) - special.gammaln(1.5) - special.gammaln(nu + 1.5)
    if log_lead.real > _LOG_MAX:
        raise RangeError(f"H_{nu}({z}) overflows double precision", details={"nu": nu})
    lead = cmath.exp(log_lead)
    q = half * half
    term = 1.0 + 0j
    total = term
    largest = 1.0
    for k in range(_SERIES_MAX_TERMS):
        term = -term * q / ((k + 1.5) * (k + nu + 1.5))
        total += term
        largest = max(largest, abs(term))
        if abs(term) <= _SERIES_RTOL * abs(total) and k > abs(half):
            return lead * total, k + 2, abs(lead) * largest
    return lead * total, _SERIES_MAX_TERMS + 1, abs(lead) * largest


def _result(
    value: complex,
    method: ResultMethod,
    which: Which,
    z: complex,
    err: float,
    terms: int = 0,
) -> EvalResult:
    return EvalResult(
        value=ComplexValue.of(value),
        method=method,
        terms=terms,
        err_estimate=err,
        function=_NAMES[which],
        z=ComplexValue.of(z),
    )


def struve_oracle(
    which: Which, nu: float, z: complex, *, settings: LommelSettings | None = None
) -> EvalResult:
    """Reference value from the power series in extended precision."""
    settings = settings or get_settings()
    z = complex(z)
    value = oracle_series(_NAMES[which], {"nu": nu}, z, settings.oracle_dps)
    return _result(value, "oracle", which, z, settings.oracle_tol)


def struve_series(
    which: Which, nu: float, z: complex, *, settings: LommelSettings | None = None
) -> EvalResult:
    """Value from the power series of ``H`` and the Bessel relations.

    ``K = H - Y``, ``K^{(1)} = H - i J`` and ``K^{(2)} = H + i J``.  When double precision
    loses more than eight digits the series is redone in extended precision.
    """
    settings = settings or get_settings()
    z = complex(z)
    if nu <= -1.5:
        raise DomainError(f"the power series is implemented for nu > -3/2, got {nu}")
    if z == 0:
        if which == "K":
            raise DomainError("K_nu is singular at z = 0", function=_NAMES[which], z=z)
        return _result(0j, "series", which, z, 0.0)
    h_val, terms, largest = _h_series(nu, z)
    if which == "K":
        other = -bessel("Y", nu, z)
    elif which == "K1":
        other = -1j * bessel("J", nu, z)
    elif which == "K2":
        other = 1j * bessel("J", nu, z)
    else:
        other = 0j
    value = h_val + other
    largest = max(largest, abs(other))
    if abs(value) < _CANCELLATION_RATIO * largest:
        LOGGER.debug("%s_%s(%s): series cancels, redone in extended precision", which, nu, z)
        return struve_oracle(which, nu, z, settings=settings)
    return _result(value, "series", which, z, _EPS * largest / abs(value), terms)


# ---------------------------------------------------------------------------
# Large-order expansions
# ---------------------------------------------------------------------------


def struve_asymptotic(
    which: Which,
    nu: float,
    z: complex,
    *,
    route: Route = "auto",
    s_max: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Struve function at ``nu z`` as ``B`` times a Lommel expansion plus ``p_nu(nu z)``.

    ``z`` is the scaled argument.  The ``err_estimate`` accounts for cancellation
    between the two parts.
    """
    settings = settings or get_settings()
    z = complex(z)
    if nu < settings.nu_min:
        raise DomainError(
            f"large-order expansions need nu >= {settings.nu_min}, got {nu}",
            function=_NAMES[which],
        )
    if which != "K" and abs(z) < settings.struve_z_small:
        warnings.warn(
            f"{_NAMES[which]} near z = 0 cancels between its Lommel and polynomial parts; "
            "the power series is preferred there",
            CancellationWarning,
            stacklevel=2,
        )
    reduction = struve_reduce(nu)
    lommel = lommel_asymptotic(
        LOMMEL_VARIANTS[which],
        reduction.mu_tilde,
        nu,
        z,
        route=route,
        s_max=s_max,
        settings=settings,
    )
    lommel_part = reduction.B_factor * lommel.as_complex
    terms = _p_terms(reduction, nu * z)
    poly = complex(math.fsum(terms.real), math.fsum(terms.imag))
    value = lommel_part + poly
    spread = lommel.err_estimate * abs(lommel_part) + _EPS * float(np.abs(terms).sum())
    err = spread / abs(value) if value != 0 else math.inf
    LOGGER.debug(
        "%s_%s(%s nu): Lommel part %.3e, polynomial part %.3e",
        which,
        nu,
        z,
        abs(lommel_part),
        abs(poly),
    )
    return _result(value, lommel.method, which, nu * z, err, lommel.terms)


def struve_stabilized(
    nu: float,
    z: complex,
    s_max: int | None = None,
    *,
    settings: LommelSettings | None = None,
) -> complex:
    """Formal regular-part sum ``(2 z^{nu+1} / pi) sum_s G~*_{mu~,s}(z) / nu^{2s+1}``.

    ``z`` is the scaled argument with ``|z| < 1``.  Removing the poles of ``G~_{mu~,s}``
    at ``z = 0`` is what cancels the polynomial part ``p_nu``.  The Stirling rewrite of
    ``nu^{mu~} B(mu~, nu)`` drops a factor that grows like ``(e/2)^nu``, so this sum is a
    structural object only; small-``z`` values come from :func:`struve_series`.
    """
    settings = settings or get_settings()
    s_max = settings.s_max if s_max is None else s_max
    table = get_table(settings.coeff_depth)
    reduction = struve_reduce(nu)
    z = complex(z)
    if abs(z) >= 1.0:
        raise RegionError("regular parts need |z| < 1", function="struveH", z=z)
    if z == 0:
        return 0j
    total = sum(
        table.g_tilde_star(reduction.mu_tilde, s, reduction.k_nu, z) * nu ** (-2.0 * s - 1.0)
        for s in range(s_max + 1)
    )
    return 2.0 * cmath.exp((nu + 1.0) * cmath.log(z)) * total / math.pi


# ---------------------------------------------------------------------------
# Dispatch and continuation
# ---------------------------------------------------------------------------


def struve_eval(
    which: Which,
    nu: float,
    z: complex,
    *,
    method: Method = "auto",
    terms: int | None = None,
    branch_winding: int = 0,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Evaluate ``H_nu``, ``K_nu``, ``K^{(1)}_nu`` or ``K^{(2)}_nu`` at ``z e^{m pi i}``.

    ``auto`` uses the power series for small orders and for ``|z| < struve_z_small nu``,
    and the large-order expansions elsewhere.  ``H``, ``K^{(1)}`` and ``K^{(2)}`` also
    return to the series wherever the expansion is spoiled by cancellation.
    """
    settings = settings or get_settings()
    if branch_winding:
        return struve_continue(
            which, nu, z, branch_winding, method=method, terms=terms, settings=settings
        )
    z = complex(z)
    if method == "auto":
        if nu < settings.nu_min:
            method = "series" if abs(z) <= _SERIES_REACH + nu else "oracle"
        elif abs(z) < settings.struve_z_small * nu:
            return struve_series(which, nu, z, settings=settings)
        else:
            try:
                result = struve_asymptotic(which, nu, z / nu, s_max=terms, settings=settings)
            except RegionError:
                if z.real >= 0:
                    raise
                LOGGER.debug("%s_%s at z=%s reached from -z", which, nu, z)
                m = 1 if z.imag >= 0 else -1
                return struve_continue(which, nu, -z, m, terms=terms, settings=settings)
            if which != "K" and result.err_estimate > _CANCELLATION_RATIO:
                LOGGER.debug("%s_%s at z=%s: expansion cancels, using the series", which, nu, z)
                return struve_series(which, nu, z, settings=settings)
            return result
    if method == "series":
        return struve_series(which, nu, z, settings=settings)
    if method == "oracle":
        return struve_oracle(which, nu, z, settings=settings)
    route: Route = "auto" if method == "asymptotic" else method  # type: ignore[assignment]
    return struve_asymptotic(which, nu, z / nu, route=route, s_max=terms, settings=settings)


def struve_continue(
    which: Which,
    nu: float,
    z: complex,
    m: int,
    *,
    method: Method = "auto",
    terms: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Struve function at ``z e^{m pi i}`` from principal-branch values at ``z``.

    ``K^{(1)}`` and ``K^{(2)}`` pick up ``e^{m nu pi i}`` and trade places on odd ``m``;
    ``H`` picks up ``e^{m (nu + 1) pi i}``.
    """
    settings = settings or get_settings()
    z = complex(z)
    if m == 0:
        return struve_eval(which, nu, z, method=method, terms=terms, settings=settings)
    if which in ("K1", "K2"):
        phase = cmath.exp(1j * m * nu * math.pi)
        if m % 2 == 0:
            base = struve_eval(which, nu, z, method=method, terms=terms, settings=settings)
            value = phase * base.as_complex
        else:
            other: Which = "K2" if which == "K1" else "K1"
            base = struve_eval(other, nu, z, method=method, terms=terms, settings=settings)
            value = -phase * base.as_complex
    else:
        base = struve_eval("H", nu, z, method=method, terms=terms, settings=settings)
        value = cmath.exp(1j * m * (nu + 1.0) * math.pi) * base.as_complex
        if which == "K":
            value -= continued_bessel("Y", nu, z, m, settings.odd_tol)
    return base.model_copy(
        update={
            "value": ComplexValue.of(value),
            "function": _NAMES[which],
            "z": ComplexValue.of(z * cmath.exp(1j * m * math.pi)),
        }
    )
