from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from lommel_uniform.exceptions import BranchError, DomainError
from lommel_uniform.models import SIMPLE_PAIRS
from lommel_uniform.transform import (
    classify,
    compute_transform,
    distance_to_cut,
    distance_to_region,
    eye_boundary,
    liouville,
    transform_with_region,
)

POINTS = [0.5 + 0.5j, 2.0 - 1.0j, -0.4 + 1.3j, 3.0 + 0.2j, 0.2 - 0.05j, -3.0 + 0.5j]


class TestLiouville:
    def test_turning_point(self):
        tp = compute_transform(1.0)
        assert tp.zeta == 0
        assert tp.xi == 0
        assert tp.beta is None
        assert tp.near_one

    def test_inside_unit_interval(self):
        tp = compute_transform(0.5)
        w = math.sqrt(0.75)
        assert tp.zeta.imag == 0 and tp.zeta.real > 0
        assert tp.xi == pytest.approx(math.log((1 + w) / 0.5) - w, rel=1e-14)

    def test_beyond_turning_point(self):
        tp = compute_transform(2.0)
        assert tp.zeta.imag == 0 and tp.zeta.real < 0
        expected = math.sqrt(3.0) - math.pi / 3
        assert (2.0 / 3.0) * (-tp.zeta.real) ** 1.5 == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("z", POINTS)
    def test_phi_identity(self, z: complex):
        tp = compute_transform(z)
        assert tp.phi**4 * (1 - z * z) == pytest.approx(tp.zeta, rel=1e-13)

    @pytest.mark.parametrize("z", POINTS)
    def test_xi_zeta_relation(self, z: complex):
        tp = compute_transform(z)
        assert tp.xi**2 == pytest.approx(4.0 / 9.0 * tp.zeta**3, rel=1e-12)

    @pytest.mark.parametrize("z", POINTS)
    def test_beta(self, z: complex):
        tp = compute_transform(z)
        assert tp.beta is not None
        assert tp.beta**2 * (1 - z * z) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("z", POINTS)
    def test_conjugate_symmetry(self, z: complex):
        assert compute_transform(z.conjugate()).zeta == pytest.approx(
            compute_transform(z).zeta.conjugate(), rel=1e-14
        )

    def test_upper_half_plane_lands_in_lower_zeta_half(self):
        for z in (0.5 + 0.5j, -0.4 + 1.3j, 3.0 + 0.2j):
            assert -math.pi <= cmath.phase(compute_transform(z).zeta) <= 0

    def test_decreasing_on_unit_interval(self):
        zetas = [compute_transform(x).zeta.real for x in np.linspace(0.05, 0.99, 40)]
        assert all(a > b for a, b in zip(zetas, zetas[1:]))

    @pytest.mark.parametrize("theta", [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi])
    def test_taylor_matches_closed_form(self, theta: float):
        z = 1 + 0.04 * cmath.exp(1j * theta)
        series = liouville(z, near_one_radius=0.05)
        closed = liouville(z, near_one_radius=0.0)
        assert series[0] == pytest.approx(closed[0], rel=1e-11)
        assert series[1] == pytest.approx(closed[1], rel=1e-10)

    def test_origin_rejected(self):
        with pytest.raises(DomainError):
            compute_transform(0)

    def test_lower_side_of_cut_rejected(self):
        with pytest.raises(BranchError):
            compute_transform(complex(-2.0, -0.0))


class TestRegions:
    def test_small_real_point_in_eye(self):
        assert classify(0.3).in_S0

    def test_oscillatory_axis_closes_both_hankel_regions(self):
        label = classify(2.0)
        assert label.in_S_minus1 and label.in_S_plus1
        assert not label.in_S0

    @pytest.mark.parametrize("z", [-0.95 + 0j, -0.95 + 0.05j, -1.05 + 0j, -3.0 + 0.05j])
    def test_cut_tube_excluded(self, z: complex):
        assert not classify(z, 0.1).in_S_delta

    @pytest.mark.parametrize("z", [0.5 + 0j, -0.85 + 0j, -3.0 + 0.2j])
    def test_away_from_cut(self, z: complex):
        assert classify(z, 0.1).in_S_delta

    def test_distance_to_cut(self):
        assert distance_to_cut(-0.95 + 0.05j) == pytest.approx(math.hypot(0.05, 0.05))
        assert distance_to_cut(-4.0 + 0.3j) == pytest.approx(0.3)

    @pytest.mark.parametrize("z", POINTS + [1.0 + 0.01j, -0.98 + 0.02j])
    def test_simple_regions_inside_s_delta(self, z: complex):
        label = classify(z, 0.1)
        for jk in SIMPLE_PAIRS:
            assert not label.simple(jk) or label.in_S_delta

    def test_inside_region_has_zero_distance(self):
        assert distance_to_region(0.3 + 0j, 0) == 0.0

    def test_eye_boundary_is_level_curve(self):
        upper, lower = eye_boundary()
        assert upper[0] == 1 and upper[-1] == -1
        np.testing.assert_allclose(lower, upper.conj())
        for z in upper[1:-1:90]:
            assert abs(liouville(complex(z))[1].real) < 1e-9

    def test_transform_with_region(self):
        tp = transform_with_region(0.3, 0.1)
        assert tp.region is not None
        assert tp.region.in_S0
        assert tp.region.delta == 0.1
