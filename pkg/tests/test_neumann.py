from __future__ import annotations

import math

import pytest
from sympy import Rational

from lommel_uniform.exceptions import DomainError, RangeError
from lommel_uniform.lommel import lommel_series
from lommel_uniform.neumann import (
    neumann_asymptotic,
    neumann_eval,
    neumann_exact,
    neumann_poly,
)


def _exact(n: int, z: complex) -> complex:
    return neumann_exact(n, z).c


class TestExact:
    def test_coefficients(self):
        assert neumann_poly(4).coefficients == {5: Rational(192), 3: Rational(16), 1: Rational(1)}

    def test_coefficients_stay_exact(self):
        poly = neumann_poly(40)
        assert all(isinstance(c, Rational) for c in poly.coefficients.values())
        assert poly.coefficients[41] == 10 * math.factorial(39) * 2**41
        assert poly.coefficients[1] == 1

    def test_overflow_raises(self):
        with pytest.raises(RangeError):
            neumann_exact(200, 1e-3)

    @pytest.mark.parametrize(
        "n, closed",
        [
            (0, lambda z: 1 / z),
            (1, lambda z: 1 / z**2),
            (2, lambda z: 1 / z + 4 / z**3),
        ],
    )
    def test_low_orders(self, n, closed):
        z = 0.8 - 0.3j
        assert _exact(n, z) == pytest.approx(closed(z), rel=1e-15)

    @pytest.mark.parametrize("n", [6, 7])
    def test_parity(self, n: int):
        z = 1.3 + 0.4j
        assert _exact(n, -z) == pytest.approx((-1) ** (n + 1) * _exact(n, z), rel=1e-15)

    def test_even_order_lommel_identity(self):
        z = 2.0
        expected = lommel_series("S", 1.0, 2.0, z).as_complex / z
        assert _exact(2, z) == pytest.approx(expected, rel=1e-10)

    def test_odd_order_lommel_identity(self):
        z = 1.5 + 0.5j
        expected = 3 * lommel_series("S", 0.0, 3.0, z).as_complex / z
        assert _exact(3, z) == pytest.approx(expected, rel=1e-8)

    def test_pole(self):
        with pytest.raises(DomainError):
            neumann_exact(3, 0)

    def test_negative_order(self):
        with pytest.raises(DomainError):
            neumann_poly(-1)


class TestAsymptotic:
    def test_even_order(self):
        result = neumann_asymptotic(50, 2.0)
        assert result.as_complex == pytest.approx(_exact(50, 100.0), rel=1e-9)

    def test_odd_order_at_turning_point(self):
        result = neumann_asymptotic(51, 1.0)
        assert result.method == "asymptotic_scorer"
        assert result.as_complex == pytest.approx(_exact(51, 51.0), rel=1e-7)

    def test_complex_argument(self):
        z = 0.6 + 0.8j
        result = neumann_asymptotic(60, z)
        assert result.as_complex == pytest.approx(_exact(60, 60 * z), rel=1e-8)

    @pytest.mark.parametrize("n", [50, 51])
    def test_left_half_plane_by_parity(self, n: int):
        z = -2.0 + 0.5j
        result = neumann_asymptotic(n, z)
        assert result.as_complex == pytest.approx(_exact(n, n * z), rel=1e-9)

    def test_error_falls_with_order(self):
        def error(n: int) -> float:
            approx = neumann_asymptotic(n, 2.0, s_max=0).as_complex
            exact = _exact(n, 2.0 * n)
            return abs(approx / exact - 1)

        ratio = error(50) / error(100)
        assert 2.5 < ratio < 6

    def test_small_order_rejected(self):
        with pytest.raises(DomainError):
            neumann_asymptotic(5, 2.0)


class TestDispatch:
    def test_auto_is_exact(self):
        result = neumann_eval(40, 3 + 1j)
        assert result.method == "series"
        assert result.as_complex == _exact(40, 3 + 1j)

    def test_forced_expansion(self):
        result = neumann_eval(50, 100.0, method="asymptotic")
        assert result.method.startswith("asymptotic")
        assert result.z is not None
        assert result.z.c == pytest.approx(100.0)

    def test_oracle(self):
        result = neumann_eval(7, 1.2 - 0.5j, method="oracle")
        assert result.as_complex == pytest.approx(_exact(7, 1.2 - 0.5j), rel=1e-14)
