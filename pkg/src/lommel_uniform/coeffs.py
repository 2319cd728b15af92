"""Exact coefficient sequences of the uniform expansions.

Everything here is generated symbolically with rational coefficients (sympy) and only
converted to floating point when a value is requested.  Conversions are cached per
sequence index, so numeric evaluation is a ``numpy.polyval`` away.

Representations
---------------
* ``E_s(beta)``: polynomial in ``beta`` over QQ.
* ``G_{mu,s}(z) = z^{mu+3/2} P_s(z) / (z^2-1)^{3s+1}`` with ``P_s`` a polynomial in ``z``
  whose coefficients are polynomials in ``mu``.
* ``G^-_s(z) = Q_s(z) / (z+1)^{3s+1}``; ``G^+_s(z) = -G^-_s(-z)``.
* Regular parts: ``G~_{mu~,s}`` is a combination of ``q_{l,m}(w) = w^{-l}(1-w)^{-m}``
  with ``w = z^2``; each term is replaced by its part regular at ``w = 0``.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
import sympy
from sympy import Poly, QQ, Rational

from .exceptions import ConvergenceError, PoleError, RangeError

LOGGER = logging.getLogger(__name__)

BETA = sympy.Symbol("beta")
Z = sympy.Symbol("z")
MU = sympy.Symbol("mu")

ArrayLike = Union[complex, np.ndarray]

Q_STAR_RTOL = 1e-18
Q_STAR_MAX_TERMS = 10_000


def _float_coeffs(poly: Poly) -> np.ndarray:
    return np.array([float(c) for c in poly.all_coeffs()], dtype=float)


def _mu_coeff_arrays(poly: Poly) -> list[np.ndarray]:
    """Coefficients (highest z power first) of ``poly``, each as a float array in mu."""
    arrays = []
    for c in poly.all_coeffs():
        arrays.append(_float_coeffs(Poly(c, MU)))
    return arrays


def _polyval_mu(arrays: list[np.ndarray], mu: complex) -> np.ndarray:
    return np.array([np.polyval(a, mu) for a in arrays], dtype=complex)


@dataclass(frozen=True)
class QTerm:
    """One ``coeff(mu~) * (-1)^m * q_{k_nu + 1 - shift, m}`` piece of ``G~_s``."""

    shift: int
    m: int
    coeff: tuple[float, ...]


class CoefficientTable:
    """Lazily built, append-only store of every coefficient family.

    ``depth`` bounds the index of ``G_{mu,s}``, ``G^-_s`` and ``G~*_s``.  The
    ``E_s`` and ``a_s`` sequences are carried to ``2 * depth + 1`` because the
    hyperbolic arguments need odd indices one beyond the even ones.
    """

    def __init__(self, depth: int = 8):
        if depth < 1:
            raise RangeError(f"coefficient depth must be positive, got {depth}")
        self.depth = depth
        self._lock = threading.Lock()
        self._e: list[Poly] = []
        self._e_num: list[np.ndarray] = []
        self._a: list[Rational] = []
        self._a_tilde: list[Rational] = []
        self._g_mu: list[Poly] = []
        self._g_mu_num: list[list[np.ndarray]] = []
        self._g_minus: list[Poly] = []
        self._g_minus_num: list[np.ndarray] = []
        self._ratio: list[sympy.Expr] | None = None
        self._q_terms: dict[int, tuple[QTerm, ...]] = {}

    @property
    def e_depth(self) -> int:
        return 2 * self.depth + 1

    def _check(self, s: int, limit: int, family: str) -> None:
        if s < 0 or s > limit:
            raise RangeError(
                f"{family} index {s} outside the table depth 0..{limit}",
                details={"family": family, "index": s, "depth": limit},
            )

    # ---- E_s(beta) ----

    def _build_e(self, s: int) -> None:
        with self._lock:
            if not self._e:
                e1 = Poly(Rational(1, 24) * BETA * (5 * BETA**2 - 3), BETA, domain=QQ)
                e2 = Poly(
                    Rational(1, 16) * BETA**2 * (BETA**2 - 1) * (5 * BETA**2 - 1),
                    BETA,
                    domain=QQ,
                )
                self._e = [e1, e2]
                self._e_num = [_float_coeffs(e1), _float_coeffs(e2)]
            weight = Poly(BETA**2 * (BETA**2 - 1), BETA, domain=QQ)
            half = Rational(1, 2)
            while len(self._e) < s:
                n = len(self._e)  # builds E_{n+1} from E_1..E_n
                derivs = [e.diff(BETA) for e in self._e]
                conv = Poly(0, BETA, domain=QQ)
                for j in range(1, n):
                    conv += derivs[j - 1] * derivs[n - j - 1]
                nxt = half * weight * derivs[n - 1] + half * (weight * conv).integrate()
                self._e.append(nxt)
                self._e_num.append(_float_coeffs(nxt))
                LOGGER.debug("built E_%d (degree %d)", n + 1, nxt.degree())

    def e_poly(self, s: int) -> Poly:
        """Exact ``E_s(beta)`` for ``s >= 1``."""
        if s < 1:
            raise RangeError(f"E_s is defined for s >= 1, got {s}")
        self._check(s, self.e_depth, "E")
        self._build_e(s)
        return self._e[s - 1]

    def e_value(self, s: int, beta: ArrayLike) -> ArrayLike:
        self.e_poly(s)
        return np.polyval(self._e_num[s - 1], beta)

    # ---- a_s, a~_s ----

    def a_sequences(self, max_s: int) -> tuple[list[Rational], list[Rational]]:
        """``(a_1..a_max_s, a~_1..a~_max_s)`` as exact rationals."""
        if max_s < 2:
            raise RangeError(f"a-sequences need max_s >= 2, got {max_s}")
        with self._lock:
            if not self._a:
                self._a = [Rational(5, 72), Rational(5, 72)]
                self._a_tilde = [Rational(-7, 72), Rational(-7, 72)]
            for seq in (self._a, self._a_tilde):
                while len(seq) < max_s:
                    s = len(seq)  # builds b_{s+1}
                    conv = sum((seq[j - 1] * seq[s - j - 1] for j in range(1, s)), Rational(0))
                    seq.append(Rational(s + 1, 2) * seq[s - 1] + conv / 2)
        return list(self._a[:max_s]), list(self._a_tilde[:max_s])

    def a_float(self, s: int, tilde: bool = False) -> float:
        a, at = self.a_sequences(max(s, 2))
        return float((at if tilde else a)[s - 1])

    # ---- G_{mu,s}(z) ----

    def _build_g_mu(self, s: int) -> None:
        with self._lock:
            if not self._g_mu:
                p0 = Poly(1, Z, domain=QQ[MU])
                self._g_mu = [p0]
                self._g_mu_num = [_mu_coeff_arrays(p0)]
            d = Poly(Z**2 - 1, Z, domain=QQ[MU])
            zp = Poly(Z, Z, domain=QQ[MU])
            a1 = Poly((MU + 1) ** 2, Z, domain=QQ[MU])
            a2 = Poly(2 * MU + 3, Z, domain=QQ[MU])
            while len(self._g_mu) <= s:
                k = len(self._g_mu) - 1
                p = self._g_mu[k]
                m = 3 * k + 1
                # R = P/D^m, R' = A/D^(m+1), R'' = (A'D - 2(m+1)zA)/D^(m+2)
                a = p.diff(Z) * d - 2 * m * zp * p
                n = (
                    a1 * p * d * d
                    + a2 * zp * a * d
                    + zp * zp * (a.diff(Z) * d - 2 * (m + 1) * zp * a)
                )
                nxt = -n
                self._g_mu.append(nxt)
                self._g_mu_num.append(_mu_coeff_arrays(nxt))
                LOGGER.debug("built G_mu,%d numerator (degree %d)", k + 1, nxt.degree())

    def g_mu_numerator(self, s: int) -> Poly:
        """``P_s(z)`` with ``G_{mu,s}(z) = z^{mu+3/2} P_s(z) / (z^2-1)^{3s+1}``."""
        self._check(s, self.depth, "Gmu")
        self._build_g_mu(s)
        return self._g_mu[s]

    def g_mu_expr(self, s: int, mu: complex | sympy.Expr | None = None) -> sympy.Expr:
        """``G_{mu,s}(z) z^{-mu-3/2}`` as an exact rational function (``mu`` symbolic or fixed)."""
        num = self.g_mu_numerator(s).as_expr()
        if mu is not None:
            num = num.subs(MU, sympy.nsimplify(mu))
        return sympy.factor(num) / (Z**2 - 1) ** (3 * s + 1)

    def g_mu(self, mu: complex, s: int, z: ArrayLike) -> ArrayLike:
        """Numeric ``G_{mu,s}(z)`` on the principal branch of ``z^{mu+3/2}``."""
        self.g_mu_numerator(s)
        if np.isscalar(z) and (z == 1 or z == -1):
            raise PoleError(f"G_mu,{s} has a pole at z = {z}", z=complex(z))
        zc = np.asarray(z, dtype=complex)
        coeffs = _polyval_mu(self._g_mu_num[s], complex(mu))
        value = zc ** (complex(mu) + 1.5) * np.polyval(coeffs, zc) / (zc * zc - 1.0) ** (3 * s + 1)
        return complex(value) if np.ndim(value) == 0 else value

    def g_mu_sum(self, mu: complex, nu: float, s_max: int, z: ArrayLike) -> ArrayLike:
        """``sum_{s=0}^{s_max} G_{mu,s}(z) nu^{-2s}``."""
        total: ArrayLike = 0j
        for s in range(s_max + 1):
            total = total + self.g_mu(mu, s, z) * nu ** (-2 * s)
        return total

    # ---- G^-_s(z), G^+_s(z) ----

    def _build_g_minus(self, s: int) -> None:
        with self._lock:
            if not self._g_minus:
                q0 = Poly(1, Z, domain=QQ)
                self._g_minus = [q0]
                self._g_minus_num = [_float_coeffs(q0)]
            e = Poly(Z + 1, Z, domain=QQ)
            zp = Poly(Z, Z, domain=QQ)
            one_minus_z = Poly(1 - Z, Z, domain=QQ)
            while len(self._g_minus) <= s:
                k = len(self._g_minus) - 1
                q = self._g_minus[k]
                m = 3 * k + 1
                # G = Q/E^m, G' = A/E^(m+1), G'' = (A'E - (m+1)A)/E^(m+2)
                a = q.diff(Z) * e - m * q
                n = zp * a * e + zp * zp * (a.diff(Z) * e - (m + 1) * a)
                quo, rem = n.div(one_minus_z)
                if not rem.is_zero:
                    raise ArithmeticError(f"G^-_{k + 1} acquired a pole at z = 1")
                self._g_minus.append(quo)
                self._g_minus_num.append(_float_coeffs(quo))

    def g_minus_expr(self, s: int) -> sympy.Expr:
        self._check(s, self.depth, "Gminus")
        self._build_g_minus(s)
        return sympy.factor(self._g_minus[s].as_expr()) / (Z + 1) ** (3 * s + 1)

    def g_plus_expr(self, s: int) -> sympy.Expr:
        return -self.g_minus_expr(s).subs(Z, -Z)

    def g_minus(self, s: int, z: ArrayLike) -> ArrayLike:
        self._check(s, self.depth, "Gminus")
        self._build_g_minus(s)
        if np.isscalar(z) and z == -1:
            raise PoleError(f"G^-_{s} has a pole at z = -1", z=-1 + 0j)
        zc = np.asarray(z, dtype=complex)
        value = np.polyval(self._g_minus_num[s], zc) / (zc + 1.0) ** (3 * s + 1)
        return complex(value) if np.ndim(value) == 0 else value

    def g_plus(self, s: int, z: ArrayLike) -> ArrayLike:
        if np.isscalar(z) and z == 1:
            raise PoleError(f"G^+_{s} has a pole at z = 1", z=1 + 0j)
        flipped = -np.asarray(z, dtype=complex)
        return -self.g_minus(s, flipped if flipped.ndim else complex(flipped))

    # ---- G~*_{mu~,s}(z) ----

    def _gamma_ratio_coeffs(self) -> list[sympy.Expr]:
        """``d_j(mu~)``: ``nu^{mu~} B(mu~,nu) pi / 2 ~ sum_j d_j nu^{-2j}``.

        From the Bernoulli-polynomial expansion of ``log Gamma(x+a) - log Gamma(x+b)`` with
        ``x = nu/2``, ``a = (1-mu~)/2``, ``b = (1+mu~)/2``; odd powers vanish because a+b = 1.
        """
        with self._lock:
            if self._ratio is not None:
                return self._ratio
            order = 2 * self.depth
            a = (1 - MU) / 2
            b = (1 + MU) / 2
            # log-ratio coefficients l_n of t^n, n >= 1
            logc = [sympy.Integer(0)] + [
                sympy.expand(
                    (-1) ** (n + 1)
                    * (sympy.bernoulli(n + 1, a) - sympy.bernoulli(n + 1, b))
                    / (n * (n + 1))
                )
                for n in range(1, order + 1)
            ]
            # exp of a power series: e_n = (1/n) sum_k k l_k e_{n-k}
            expc = [sympy.Integer(1)]
            for n in range(1, order + 1):
                acc = sum((k * logc[k] * expc[n - k] for k in range(1, n + 1)), sympy.Integer(0))
                expc.append(sympy.expand(acc / n))
            self._ratio = [sympy.expand(expc[2 * j] * 4**j) for j in range(self.depth + 1)]
            return self._ratio

    def q_terms(self, s: int) -> tuple[QTerm, ...]:
        """Decomposition of ``G~_{mu~,s}`` into ``q_{k_nu+1-shift, m}`` pieces."""
        self._check(s, self.depth, "Gtildestar")
        if s in self._q_terms:
            return self._q_terms[s]
        ratio = self._gamma_ratio_coeffs()
        terms: list[QTerm] = []
        for j in range(s + 1):
            k = s - j
            m = 3 * k + 1
            num = self.g_mu_numerator(k)
            # P_k is even in z; coefficient of z^(2i) pairs with w^i
            for (power,), c in zip(num.monoms(), num.coeffs()):
                if power % 2:
                    raise ArithmeticError("G_mu numerators must be even in z")
                coeff = sympy.expand((-1) ** m * ratio[j] * c)
                if coeff == 0:
                    continue
                terms.append(
                    QTerm(shift=power // 2, m=m, coeff=tuple(_float_coeffs(Poly(coeff, MU))))
                )
        result = tuple(terms)
        self._q_terms[s] = result
        return result

    def g_tilde_star(self, mu_tilde: float, s: int, k_nu: int, z: complex) -> complex:
        """Regular part at ``z = 0`` of ``G~_{mu~,s}(z)``; requires ``|z| < 1``."""
        omega = complex(z) ** 2
        total = 0j
        for term in self.q_terms(s):
            c = np.polyval(np.array(term.coeff), mu_tilde)
            total += c * regular_part_q(k_nu + 1 - term.shift, term.m, omega)
        return complex(total)

    def g_tilde(self, mu_tilde: float, s: int, k_nu: int, z: complex) -> complex:
        """Full ``G~_{mu~,s}(z)`` including its poles at ``z = 0``."""
        omega = complex(z) ** 2
        total = 0j
        for term in self.q_terms(s):
            c = np.polyval(np.array(term.coeff), mu_tilde)
            total += c * omega ** (term.shift - k_nu - 1) * (1.0 - omega) ** (-term.m)
        return complex(total)


def regular_part_q(l: int, m: int, omega: complex) -> complex:
    """Regular part at ``omega = 0`` of ``q_{l,m}(omega) = omega^{-l} (1-omega)^{-m}``."""
    omega = complex(omega)
    if m < 1:
        raise RangeError(f"q_{{l,m}} needs m >= 1, got {m}")
    if l <= 0:
        return omega ** (-l) * (1.0 - omega) ** (-m)
    if abs(omega) >= 1.0:
        raise ConvergenceError(f"|omega| = {abs(omega)} outside the unit disk", z=omega)
    # sum_{k>=l} binom(m+k-1, k) omega^(k-l)
    term = complex(math.comb(m + l - 1, l))
    total = term
    k = l
    for _ in range(Q_STAR_MAX_TERMS):
        term *= omega * (m + k) / (k + 1)
        total += term
        k += 1
        if abs(term) < Q_STAR_RTOL * abs(total):
            break
    return total


@lru_cache(maxsize=8)
def get_table(depth: int = 8) -> CoefficientTable:
    """Shared table for ``depth``; tables only ever grow, so sharing is safe."""
    return CoefficientTable(depth)


# ---------------------------------------------------------------------------
# Module-level conveniences over the default table
# ---------------------------------------------------------------------------


def e_poly(s: int) -> Poly:
    return get_table().e_poly(s)


def a_sequences(max_s: int) -> tuple[list[Rational], list[Rational]]:
    return get_table().a_sequences(max_s)


def g_mu(mu: complex, s: int, z: ArrayLike) -> ArrayLike:
    return get_table(max(8, s)).g_mu(mu, s, z)


def g_minus(s: int, z: ArrayLike) -> ArrayLike:
    return get_table(max(8, s)).g_minus(s, z)


def g_plus(s: int, z: ArrayLike) -> ArrayLike:
    return get_table(max(8, s)).g_plus(s, z)


def g_tilde_star(mu_tilde: float, s: int, k_nu: int, z: complex) -> complex:
    return get_table().g_tilde_star(mu_tilde, s, k_nu, z)
