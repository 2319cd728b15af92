from __future__ import annotations

import pytest
from pydantic import ValidationError
from sympy import Rational

from lommel_uniform.exceptions import ConfigurationError
from lommel_uniform.models import (
    CliRequest,
    ComplexValue,
    EvalResult,
    GridSpec,
    LommelSettings,
    NeumannPoly,
    QuadratureSpec,
    get_settings,
)


class TestLommelSettings:
    def test_defaults(self, settings: LommelSettings):
        assert settings.coeff_depth == 8
        assert settings.s_max == 4
        assert settings.nu_min == 10.0
        assert settings.delta == 0.1

    def test_env_override(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("LOMMEL_COEFF_DEPTH", "10")
        monkeypatch.setenv("LOMMEL_DELTA", "0.2")
        settings = LommelSettings()
        assert settings.coeff_depth == 10
        assert settings.delta == 0.2

    def test_shallow_depth_caps_default_truncation(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv("LOMMEL_COEFF_DEPTH", "3")
        assert LommelSettings().s_max == 3

    def test_explicit_truncation_beyond_depth(self):
        with pytest.raises(ConfigurationError, match="exceeds coeff_depth"):
            LommelSettings(coeff_depth=3, s_max=5)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"delta": 0.0},
            {"delta": 1.5},
            {"cauchy_radius": 1.0},
            {"cauchy_nodes": 4},
            {"scorer_switch": 12.0, "scorer_asymptotic": 6.0},
        ],
    )
    def test_inconsistent(self, overrides: dict):
        with pytest.raises(ConfigurationError):
            LommelSettings(**overrides)

    def test_cached_process_settings(self, clean_settings_cache: None):
        assert get_settings() is get_settings()


class TestValues:
    def test_complex_value(self):
        value = ComplexValue.of(1.5 - 2j)
        assert (value.re, value.im) == (1.5, -2.0)
        assert value.c == 1.5 - 2j

    def test_result_is_relative(self):
        with pytest.raises(ValidationError):
            EvalResult(value=ComplexValue(re=1.0), method="series", err_estimate=-1.0)

    def test_neumann_poly_exact(self):
        poly = NeumannPoly(n=2, coefficients={3: Rational(4), 1: Rational(1)})
        assert poly.coefficients[3] == 4


class TestGeometry:
    def test_grid_counts(self):
        with pytest.raises(ValidationError):
            GridSpec(x0=0, x1=1, y0=0, y1=1, nx=0, ny=3)

    def test_closed_contour_needs_two_vertices(self):
        with pytest.raises(ValidationError):
            QuadratureSpec(vertices=[1 + 0j])

    def test_ray_contour(self):
        spec = QuadratureSpec(vertices=[0j], ray_direction=1j)
        assert spec.ray_direction == 1j


class TestCliRequest:
    def test_eval_needs_a_point(self):
        with pytest.raises(ValidationError, match="--z or --grid"):
            CliRequest(subcommand="eval", function="S", nu=100.0)

    def test_eval_needs_a_function(self):
        with pytest.raises(ValidationError, match="--function"):
            CliRequest(subcommand="compare", z=1 + 0j)

    def test_samples_need_a_rectangle(self):
        with pytest.raises(ValidationError, match="--samples"):
            CliRequest(subcommand="eval", function="S", nu=100.0, z=2 + 0j, samples=5)

    def test_coeffs_needs_a_family(self):
        with pytest.raises(ValidationError, match="--family"):
            CliRequest(subcommand="coeffs")

    def test_regionmap_without_function(self):
        request = CliRequest(subcommand="regionmap", z=-1.05 + 0j)
        assert request.delta == 0.1
