"""Neumann polynomials ``O_n``, exactly and for large ``n``."""

from __future__ import annotations

import logging
import math
from functools import lru_cache

from sympy import Rational

from .exceptions import DomainError, RangeError
from .lommel import lommel_asymptotic
from .models import ComplexValue, EvalResult, LommelSettings, Method, NeumannPoly, get_settings
from .oracle import oracle_series
from .uniform_engine import Route

LOGGER = logging.getLogger(__name__)

_Gaussian = tuple[Rational, Rational]


@lru_cache(maxsize=64)
def neumann_poly(n: int) -> NeumannPoly:
    """Exact coefficients of ``O_n`` as a polynomial in ``1/z``.

    ``O_n(z) = (n/4) sum_{k <= n/2} (n-k-1)!/k! (2/z)^{n-2k+1}`` for ``n >= 1``, and
    ``O_0(z) = 1/z``.
    """
    if n < 0:
        raise DomainError(f"Neumann polynomials have n >= 0, got {n}", function="neumannO")
    if n == 0:
        return NeumannPoly(n=0, coefficients={1: Rational(1)})
    coeff = Rational(n * 2 ** (n + 1), 4) * math.factorial(n - 1)
    coefficients = {n + 1: coeff}
    for k in range(n // 2):
        coeff /= 4 * (k + 1) * (n - k - 1)
        coefficients[n - 2 * k - 1] = coeff
    return NeumannPoly(n=n, coefficients=coefficients)


def _mul(a: _Gaussian, b: _Gaussian) -> _Gaussian:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def neumann_exact(n: int, z: complex) -> ComplexValue:
    """``O_n(z)`` from its rational coefficients in one exact Horner pass over ``1/z^2``."""
    z = complex(z)
    if z == 0:
        raise DomainError("O_n has a pole at z = 0", function="neumannO", z=z)
    poly = neumann_poly(n)
    re, im = Rational(z.real), Rational(z.imag)
    norm = re * re + im * im
    w = (re / norm, -im / norm)
    w2 = _mul(w, w)
    powers = sorted(poly.coefficients, reverse=True)
    acc: _Gaussian = (Rational(0), Rational(0))
    for power in powers:
        acc = _mul(acc, w2)
        acc = (acc[0] + poly.coefficients[power], acc[1])
    for _ in range(powers[-1]):
        acc = _mul(acc, w)
    try:
        re_f, im_f = float(acc[0]), float(acc[1])
    except OverflowError:
        re_f = im_f = math.inf
    if not (math.isfinite(re_f) and math.isfinite(im_f)):
        raise RangeError(f"O_{n}({z}) overflows double precision", z=z)
    return ComplexValue(re=re_f, im=im_f)


def neumann_asymptotic(
    n: int,
    z: complex,
    *,
    route: Route = "auto",
    s_max: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """``O_n(n z)`` for large ``n`` from the expansion of ``S_{mu,n}`` at ``n z``.

    ``mu`` is 1 for even ``n`` and 0 for odd ``n``; the left half plane is reached by
    ``O_n(-z) = (-1)^{n+1} O_n(z)``.
    """
    settings = settings or get_settings()
    z = complex(z)
    if n < settings.nu_min:
        raise DomainError(
            f"large-order expansions need n >= {settings.nu_min}, got {n}", function="neumannO"
        )
    if z == 0:
        raise DomainError("O_n has a pole at z = 0", function="neumannO", z=z)
    sign = 1
    point = z
    if z.real < 0:
        point = -z
        sign = -1 if n % 2 == 0 else 1
    mu = 1.0 if n % 2 == 0 else 0.0
    lommel = lommel_asymptotic("S", mu, n, point, route=route, s_max=s_max, settings=settings)
    scale = point if n % 2 else n * point
    value = sign * lommel.as_complex / scale
    LOGGER.debug("O_%s(%s n) via S_%s,%s", n, z, mu, n)
    return lommel.model_copy(
        update={
            "value": ComplexValue.of(value),
            "function": "neumannO",
            "z": ComplexValue.of(n * z),
        }
    )


def neumann_eval(
    n: int,
    z: complex,
    *,
    method: Method = "auto",
    terms: int | None = None,
    settings: LommelSettings | None = None,
) -> EvalResult:
    """Evaluate ``O_n(z)`` at the unscaled ``z``.

    ``auto`` and ``series`` use the exact finite sum; the expansion routes evaluate
    ``O_n`` at ``n (z/n)``.
    """
    settings = settings or get_settings()
    z = complex(z)
    if method in ("auto", "series"):
        return EvalResult(
            value=neumann_exact(n, z),
            method="series",
            terms=len(neumann_poly(n).coefficients),
            function="neumannO",
            z=ComplexValue.of(z),
        )
    if method == "oracle":
        value = oracle_series("neumannO", {"n": n}, z, settings.oracle_dps)
        return EvalResult(
            value=ComplexValue.of(value),
            method="oracle",
            err_estimate=settings.oracle_tol,
            function="neumannO",
            z=ComplexValue.of(z),
        )
    route: Route = "auto" if method == "asymptotic" else method  # type: ignore[assignment]
    return neumann_asymptotic(n, z / n, route=route, s_max=terms, settings=settings)
