from __future__ import annotations

import math

import mpmath
import pytest

from lommel_uniform.exceptions import ConstraintError, UndefinedError
from lommel_uniform.lommel import lommel_A
from lommel_uniform.oracle import (
    hankel_ray,
    oracle_eval,
    oracle_lommel,
    oracle_series,
    y_moment,
)


class TestOracleSeries:
    def test_s_against_mpmath(self):
        expected = complex(mpmath.lommels1(0.3, 4.2, 1 + 1j))
        assert oracle_lommel("s", 0.3, 4.2, 1 + 1j) == pytest.approx(expected, rel=1e-14)

    def test_big_s_against_mpmath(self):
        expected = complex(mpmath.lommels2(0.3, 4.2, 2 + 0.5j))
        assert oracle_lommel("S", 0.3, 4.2, 2 + 0.5j) == pytest.approx(expected, rel=1e-12)

    def test_singular_order_is_continuous(self):
        z = 2.0 + 0.5j
        limit = oracle_lommel("S", 0.5, 1.5, z)
        nearby = oracle_lommel("S", 0.5 + 1e-7, 1.5, z)
        assert limit == pytest.approx(nearby, rel=1e-5)

    def test_undefined_s(self):
        with pytest.raises(UndefinedError):
            oracle_lommel("s", 0.5, 1.5, 1.0)

    def test_struve_h(self):
        expected = complex(mpmath.struveh(2.5, 3 + 1j))
        assert oracle_series("struveH", {"nu": 2.5}, 3 + 1j) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize(
        "n, closed",
        [
            (0, lambda z: 1 / z),
            (1, lambda z: 1 / z**2),
            (2, lambda z: 1 / z + 4 / z**3),
        ],
    )
    def test_neumann_low_orders(self, n, closed):
        z = 0.8 - 0.3j
        assert oracle_series("neumannO", {"n": n}, z) == pytest.approx(closed(z), rel=1e-14)

    def test_unknown_function(self):
        with pytest.raises(ValueError):
            oracle_series("besselK", {"nu": 1.0}, 1.0)


class TestOracleQuadrature:
    def test_small_s_from_products(self):
        result = oracle_eval("s", {"mu": 0.3, "nu": 0.9}, 2.0)
        assert result.method == "oracle"
        assert result.err_estimate <= 1e-10
        assert result.as_complex == pytest.approx(oracle_lommel("s", 0.3, 0.9, 2.0), rel=1e-9)

    def test_big_s_from_hankel_rays(self):
        z = 3 + 1j
        result = oracle_eval("S", {"mu": 0.3, "nu": 2.5}, z)
        expected = oracle_lommel("S", 0.3, 2.5, z)
        assert result.as_complex == pytest.approx(expected, rel=1e-9)

    def test_contours_agree(self):
        z = 2 + 0.5j
        params = {"mu": 0.3, "nu": 1.5}
        straight = oracle_eval("S1", params, z).as_complex
        bent = oracle_eval("S1", params, z, bend=2.0).as_complex
        assert bent == pytest.approx(straight, rel=1e-9)

    def test_s0_with_oscillatory_tail(self):
        z = 2.0 + 0.3j
        result = oracle_eval("S0", {"mu": 0.2, "nu": 1.5}, z)
        assert result.as_complex == pytest.approx(oracle_lommel("S0", 0.2, 1.5, z), rel=1e-8)

    def test_anger_and_weber(self):
        z = 2 + 1j
        anger = oracle_eval("angerJ", {"nu": 3.5}, z).as_complex
        weber = oracle_eval("weberE", {"nu": 3.5}, z).as_complex
        assert anger == pytest.approx(complex(mpmath.angerj(3.5, z)), rel=1e-12)
        assert weber == pytest.approx(complex(mpmath.webere(3.5, z)), rel=1e-12)

    def test_negative_order_anger(self):
        z = 1.5 - 0.5j
        value = oracle_eval("angerJ", {"nu": 2.3, "sign": -1}, z).as_complex
        assert value == pytest.approx(complex(mpmath.angerj(-2.3, z)), rel=1e-12)

    def test_struve_k(self):
        z = 3 + 1j
        value = oracle_eval("struveK", {"nu": 2.5}, z).as_complex
        expected = complex(mpmath.struveh(2.5, z) - mpmath.bessely(2.5, z))
        assert value == pytest.approx(expected, rel=1e-9)

    def test_scorer_hi(self):
        value = oracle_eval("Hi", {}, 1.5).as_complex
        assert value == pytest.approx(complex(mpmath.scorerhi(1.5)), rel=1e-12)

    def test_representation_constraints(self):
        with pytest.raises(ConstraintError):
            oracle_eval("S0", {"mu": 0.2, "nu": 1.5}, -1 + 1j)
        with pytest.raises(ConstraintError):
            oracle_eval("angerweberA", {"nu": 2.0}, -0.5 + 0.2j)
        with pytest.raises(ConstraintError):
            oracle_eval("s", {"mu": 0.3, "nu": 2.1}, 1.0)

    def test_ray_crossing_cut(self):
        with pytest.raises(ConstraintError):
            hankel_ray(-2 + 0.5j, -1)
        assert hankel_ray(-2 + 0.5j, 1).ray_direction == 1j


class TestYMoment:
    def test_closed_form(self):
        mu, nu = 0.3, 0.9
        expected = 2 / math.pi * lommel_A(mu, nu).real * math.sin((mu - nu) * math.pi / 2)
        assert y_moment(mu, nu) == pytest.approx(expected, rel=1e-6)

    def test_divergent_parameters(self):
        with pytest.raises(ConstraintError):
            y_moment(0.3, 2.1)
