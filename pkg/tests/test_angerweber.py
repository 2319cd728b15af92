from __future__ import annotations

import cmath
import math

import mpmath
import pytest
from scipy import special

from lommel_uniform.angerweber import (
    Which,
    anger_weber_asymptotic,
    anger_weber_continue,
    anger_weber_eval,
    anger_weber_oracle,
    aw_coeffs,
)
from lommel_uniform.exceptions import RegionError
from lommel_uniform.lommel import lommel_series


def _value(which: str, sign: int, nu: float, z: complex, **kwargs) -> complex:
    return anger_weber_eval(which, sign, nu, z, **kwargs).as_complex  # type: ignore[arg-type]


class TestCoefficients:
    @pytest.mark.parametrize("nu", [0.3, 7.0, 10.5, 101.25])
    def test_invariants(self, nu: float):
        coeffs = aw_coeffs(nu)
        assert coeffs.j0 == pytest.approx(math.sin(math.pi * nu) / math.pi, abs=1e-15)
        assert coeffs.jm1 == pytest.approx(-nu * coeffs.j0, abs=1e-13)
        assert coeffs.e0 + (1 + math.cos(math.pi * nu)) / math.pi == pytest.approx(0, abs=1e-15)


class TestSeriesComposition:
    def test_anger_against_mpmath(self):
        z = 3 + 2j
        expected = complex(mpmath.angerj(10.5, z))
        assert _value("J", 1, 10.5, z, method="series") == pytest.approx(expected, rel=1e-9)

    def test_weber_against_mpmath(self):
        z = 3 + 2j
        expected = complex(mpmath.webere(10.5, z))
        assert _value("E", 1, 10.5, z, method="series") == pytest.approx(expected, rel=1e-9)

    def test_anger_identity(self):
        nu, z = 10.5, 3 + 2j
        anger = _value("J", 1, nu, z, method="series")
        a_plus = _value("A", 1, nu, z, method="series")
        residual = anger - math.sin(math.pi * nu) * a_plus - special.jv(nu, z)
        assert abs(residual) <= 1e-9 * abs(anger)

    def test_negative_order_anger(self):
        nu, z = 7.3, 2.0
        expected = complex(mpmath.angerj(-nu, z))
        assert _value("J", -1, nu, z) == pytest.approx(expected, rel=1e-9)

    def test_negative_order_weber(self):
        nu, z = 7.3, 2.0
        expected = complex(mpmath.webere(-nu, z))
        assert _value("E", -1, nu, z) == pytest.approx(expected, rel=1e-9)

    def test_lommel_composition(self):
        nu, z = 7.3, 1.5 + 0.5j
        s0 = lommel_series("S", 0.0, nu, z).as_complex
        sm1 = lommel_series("S", -1.0, nu, z).as_complex
        assert _value("A", 1, nu, z) == pytest.approx((s0 - nu * sm1) / math.pi, rel=1e-8)
        assert _value("A", -1, nu, z) == pytest.approx((s0 + nu * sm1) / math.pi, rel=1e-8)

    def test_anger_weber_against_integral(self):
        nu, z = 7.3, 2.5 + 0.5j
        expected = anger_weber_oracle("A", 1, nu, z).c
        assert _value("A", 1, nu, z) == pytest.approx(expected, rel=1e-9)


class TestAsymptotic:
    def test_anger_near_origin(self):
        nu = 10.5
        value = _value("J", 1, nu, 1e-4)
        assert value == pytest.approx(math.sin(math.pi * nu) / (math.pi * nu), rel=1e-3)

    def test_weber_near_origin(self):
        nu = 10.5
        value = _value("E", 1, nu, 1e-4)
        assert value == pytest.approx((1 - math.cos(math.pi * nu)) / (math.pi * nu), rel=1e-3)

    def test_anger_weber_at_infinity(self):
        nu = 12.3
        near = _value("A", 1, nu, 300.0) * math.pi * 300.0
        far = _value("A", 1, nu, 3000.0) * math.pi * 3000.0
        assert abs(near - 1) < 0.05
        assert abs(far - 1) < 0.005

    def test_positive_order_against_integral(self):
        nu, z = 100.0, 0.7
        result = anger_weber_asymptotic("A", 1, nu, z, s_max=3)
        expected = anger_weber_oracle("A", 1, nu, nu * z).c
        assert result.as_complex == pytest.approx(expected, rel=1e-7)

    def test_negative_order_at_turning_point(self):
        nu = 100.0
        result = anger_weber_asymptotic("A", -1, nu, 1.0)
        expected = anger_weber_oracle("A", -1, nu, nu).c
        assert result.as_complex == pytest.approx(expected, rel=1e-5)

    def test_negative_order_inside_eye(self):
        nu, z = 100.0, 0.5
        result = anger_weber_asymptotic("A", -1, nu, z)
        expected = anger_weber_oracle("A", -1, nu, nu * z).c
        assert result.as_complex == pytest.approx(expected, rel=1e-7)

    def test_negative_order_grows_with_order(self):
        small = abs(anger_weber_asymptotic("A", -1, 50.0, 0.3).as_complex)
        large = abs(anger_weber_asymptotic("A", -1, 100.0, 0.3).as_complex)
        assert large > small

    def test_integer_order_reduces_to_bessel(self):
        assert _value("J", 1, 12.0, 5.0) == pytest.approx(special.jv(12, 5.0), rel=1e-8)

    def test_weber_against_integral(self):
        nu, z = 100.0, 0.5 + 0.1j
        result = anger_weber_asymptotic("E", 1, nu, z)
        expected = anger_weber_oracle("E", 1, nu, nu * z).c
        assert result.as_complex == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("which, sign", [("E", 1), ("J", -1), ("E", -1)])
    def test_small_z_forms_agree_on_switch_ring(self, which: Which, sign: int):
        nu = 100.25
        z = 0.1 * cmath.exp(0.25j * math.pi)
        stable = anger_weber_asymptotic(which, sign, nu, z, stable_small_z=True)
        full = anger_weber_asymptotic(which, sign, nu, z, stable_small_z=False)
        assert full.as_complex == pytest.approx(stable.as_complex, rel=1e-6)

    def test_cut_rejected(self):
        with pytest.raises(RegionError):
            anger_weber_asymptotic("A", 1, 100.0, -1.5 + 0.02j)


class TestContinuation:
    def test_half_turn(self):
        nu, z = 10.5, 0.7 - 0.4j
        continued = anger_weber_continue(nu, z, 1).as_complex
        assert continued == pytest.approx(_value("A", 1, nu, -z, method="series"), rel=1e-9)

    def test_integer_order_limit(self):
        nu, z = 12.0, 0.7 - 0.4j
        continued = anger_weber_continue(nu, z, 1).as_complex
        assert continued == pytest.approx(_value("A", 1, nu, -z, method="series"), rel=1e-9)

    def test_full_turn_composes(self):
        nu, z = 10.5, 0.7 - 0.4j
        twice = anger_weber_continue(nu, z, 2).as_complex
        step = anger_weber_continue(nu, -z, 1).as_complex
        assert twice == pytest.approx(step, rel=1e-9)

    def test_anger_beyond_cut_by_reflection(self):
        nu, z = 100.0, -150 + 2j
        result = anger_weber_eval("J", 1, nu, z)
        expected = anger_weber_oracle("J", 1, nu, z).c
        assert result.as_complex == pytest.approx(expected, rel=1e-8)

    def test_anger_weber_beyond_cut(self):
        nu, z = 100.0, -150 + 2j
        result = anger_weber_eval("A", 1, nu, z)
        expected = anger_weber_oracle("A", 1, nu, z).c
        assert result.as_complex == pytest.approx(expected, rel=1e-7)
