from __future__ import annotations

import cmath
import math

import pytest
from scipy import special

from lommel_uniform.bessel_ref import ab_direct, bessel, uniform_AB, uniform_bessel
from lommel_uniform.exceptions import AccuracyWarning, DomainError, RegionError
from lommel_uniform.transform import compute_transform, transform_with_region


class TestBessel:
    def test_small_argument_leading_term(self):
        z = 1e-3
        expected = (z / 2) ** 5 / math.gamma(6)
        assert bessel("J", 5, z) == pytest.approx(expected, rel=1e-6)

    def test_zero_argument_rejected(self):
        with pytest.raises(DomainError):
            bessel("Y", 2.5, 0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            bessel("K", 1.0, 1.0)  # type: ignore[arg-type]

    def test_hankel_wronskian(self):
        nu, z = 10.5, 3 + 2j
        h1 = bessel("H1", nu, z)
        h2 = bessel("H2", nu, z)
        h1p = (bessel("H1", nu - 1, z) - bessel("H1", nu + 1, z)) / 2
        h2p = (bessel("H2", nu - 1, z) - bessel("H2", nu + 1, z)) / 2
        assert h1 * h2p - h1p * h2 == pytest.approx(-4j / (math.pi * z), rel=1e-10)

    def test_hankel_large_argument(self):
        nu, z = 2.0, 200j
        phase = cmath.exp(-1j * (z - nu * math.pi / 2 - math.pi / 4))
        ratio = bessel("H1", nu, z) * cmath.sqrt(math.pi * z / 2) * phase
        assert ratio == pytest.approx(1.0, rel=5e-3)

    def test_warns_near_zero(self):
        root = float(special.jn_zeros(0, 1)[0])
        with pytest.warns(AccuracyWarning):
            bessel("J", 0, root)


class TestUniformAB:
    def test_bessel_j_at_half(self):
        nu = 100
        assert uniform_bessel("J", nu, 0.5) == pytest.approx(
            complex(special.jv(nu, nu * 0.5)), rel=1e-8
        )

    def test_hankel_two_beyond_turning_point(self):
        nu = 100
        assert uniform_bessel("H2", nu, 2.0) == pytest.approx(
            complex(special.hankel2(nu, nu * 2.0)), rel=1e-8
        )

    def test_hankel_one_complex_point(self):
        nu, z = 60, 1.4 + 0.6j
        assert uniform_bessel("H1", nu, z) == pytest.approx(
            complex(special.hankel1(nu, nu * z)), rel=1e-7
        )

    def test_bessel_y(self):
        nu, z = 80, 0.7 + 0.3j
        assert uniform_bessel("Y", nu, z) == pytest.approx(
            complex(special.yv(nu, nu * z)), rel=1e-7
        )

    def test_finite_at_turning_point(self):
        ab = uniform_AB(100, compute_transform(1.0))
        assert ab.near_turning_point
        assert math.isfinite(abs(ab.A)) and math.isfinite(abs(ab.B))
        assert uniform_bessel("J", 100, 1.0) == pytest.approx(
            complex(special.jv(100, 100.0)), rel=1e-7
        )

    def test_cauchy_agrees_with_direct(self):
        z = 1.0 + 0.25j
        ab = uniform_AB(100, compute_transform(z))
        a_val, b_val = ab_direct(100, z, 4)
        assert ab.near_turning_point
        assert ab.A == pytest.approx(a_val, rel=1e-7)
        assert ab.B == pytest.approx(b_val, rel=1e-7)

    def test_accuracy_improves_with_order(self):
        z = 0.6 + 0.4j
        errors = []
        for nu in (25, 50, 100):
            approx = uniform_bessel("J", nu, z, s_max=1)
            exact = complex(special.jv(nu, nu * z))
            errors.append(abs(approx / exact - 1))
        assert errors[0] > errors[1] > errors[2]

    def test_outside_region(self):
        tp = transform_with_region(-1.05 + 0.01j)
        with pytest.raises(RegionError):
            uniform_AB(100, tp)

    def test_small_order_rejected(self):
        with pytest.raises(DomainError):
            uniform_AB(5, compute_transform(0.5))
