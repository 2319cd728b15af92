from __future__ import annotations

import mpmath
import pytest
from scipy import special

from lommel_uniform import Evaluator, LommelSettings
from lommel_uniform.exceptions import ConfigurationError, DomainError
from lommel_uniform.lommel import lommel_eval
from lommel_uniform.models import GridSpec
from lommel_uniform.neumann import neumann_exact


def _o4(z: complex) -> complex:
    return 192 / z**5 + 16 / z**3 + 1 / z


class TestDispatch:
    def test_lommel_routing(self, evaluator: Evaluator):
        result = evaluator.evaluate("S", 200 + 0j, mu=0.3, nu=100.0)
        assert result.method == "asymptotic_simple"
        direct = lommel_eval("S", 0.3, 100.0, 200.0, settings=evaluator.settings)
        assert result.as_complex == direct.as_complex

    def test_struve(self, evaluator: Evaluator):
        result = evaluator.evaluate("struveH", 2.0, nu=4.5)
        assert result.function == "struveH"
        assert result.as_complex == pytest.approx(complex(mpmath.struveh(4.5, 2)), rel=1e-12)

    def test_negative_order_anger(self, evaluator: Evaluator):
        value = evaluator.evaluate("angerJ", 2.0, nu=7.3, sign=-1).as_complex
        assert value == pytest.approx(complex(mpmath.angerj(-7.3, 2.0)), rel=1e-9)

    def test_neumann(self, evaluator: Evaluator):
        z = 0.8 - 0.3j
        result = evaluator.evaluate("neumannO", z, n=4)
        assert result.as_complex == pytest.approx(_o4(z), rel=1e-14)

    def test_airy(self, evaluator: Evaluator):
        result = evaluator.evaluate("Ai", 1.0)
        assert result.as_complex == pytest.approx(special.airy(1.0)[0], rel=1e-14)
        assert result.method == "series"

    @pytest.mark.parametrize("name, kernel", [("Hi", mpmath.scorerhi), ("Gi", mpmath.scorergi)])
    def test_scorer(self, evaluator: Evaluator, name: str, kernel):
        z = 0.5 + 0.5j
        expected = complex(kernel(z))
        assert evaluator.evaluate(name, z).as_complex == pytest.approx(expected, rel=1e-12)

    def test_scorer_between_series_and_asymptotics(self, evaluator: Evaluator):
        result = evaluator.scorer.eval("Hi", -10.0 + 1.0j)
        assert result.method == "series"
        expected = complex(mpmath.scorerhi(-10.0 + 1.0j))
        assert result.as_complex == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize(
        "function_id, kwargs",
        [
            ("S", {}),
            ("struveK", {}),
            ("neumannO", {}),
            ("angerJ", {"nu": 10.0, "sign": 2}),
            ("besselJ", {"nu": 10.0}),
        ],
    )
    def test_parameters_checked(self, evaluator: Evaluator, function_id: str, kwargs: dict):
        with pytest.raises(ConfigurationError):
            evaluator.evaluate(function_id, 1.0, **kwargs)


class TestOracle:
    def test_series_reference(self, evaluator: Evaluator):
        result = evaluator.oracle("struveH", 2.0, nu=4.5)
        assert result.method == "oracle"
        assert result.as_complex == pytest.approx(complex(mpmath.struveh(4.5, 2)), rel=1e-14)

    def test_neumann_reference(self, evaluator: Evaluator):
        z = 1.2 - 0.5j
        expected = neumann_exact(7, z).c
        assert evaluator.neumann.oracle(7, z).as_complex == pytest.approx(expected, rel=1e-14)

    def test_scorer_reference(self, evaluator: Evaluator):
        expected = complex(mpmath.scorergi(1.5))
        assert evaluator.scorer.oracle("Gi", 1.5).as_complex == pytest.approx(expected, rel=1e-14)

    def test_oracle_method_routes_to_reference(self, evaluator: Evaluator):
        result = evaluator.evaluate("Hi", 0.5, method="oracle")
        assert result.method == "oracle"


class TestCaching:
    def test_repeated_call_hits_cache(self, evaluator: Evaluator):
        first = evaluator.evaluate("neumannO", 2.0, n=3)
        assert evaluator.evaluate("neumannO", 2.0, n=3) is first

    def test_close_clears_cache(self):
        evaluator = Evaluator(LommelSettings())
        first = evaluator.evaluate("neumannO", 2.0, n=3)
        evaluator.close()
        again = evaluator.evaluate("neumannO", 2.0, n=3)
        assert again is not first
        assert again.as_complex == first.as_complex

    def test_cache_bound(self):
        with Evaluator(LommelSettings(), cache_size=1) as evaluator:
            first = evaluator.evaluate("neumannO", 2.0, n=3)
            evaluator.evaluate("neumannO", 3.0, n=3)
            assert evaluator.evaluate("neumannO", 2.0, n=3) is first
            second = evaluator.evaluate("neumannO", 3.0, n=3)
            assert evaluator.evaluate("neumannO", 3.0, n=3) is not second

    def test_table_follows_settings(self):
        with Evaluator(LommelSettings(coeff_depth=10)) as evaluator:
            assert evaluator.table.depth == 10


class TestGrids:
    SPEC = GridSpec(x0=0.5, x1=1.5, y0=-0.5, y1=0.5, nx=3, ny=3)

    def test_sub_api_grid(self, evaluator: Evaluator):
        rows = list(evaluator.neumann.grid(3, self.SPEC))
        assert [index for index, _, _ in rows] == list(range(9))
        for _, z, result in rows:
            assert result.as_complex == neumann_exact(3, z).c

    def test_pole_on_grid(self, evaluator: Evaluator):
        spec = GridSpec(x0=-1, x1=1, y0=0, y1=0, nx=3, ny=1)
        rows = list(evaluator.grid("neumannO", spec, n=2))
        assert isinstance(rows[1][2], DomainError)
        assert rows[0][2].as_complex == pytest.approx(-5.0)

    def test_grid_checks_parameters_up_front(self, evaluator: Evaluator):
        with pytest.raises(ConfigurationError):
            evaluator.grid("struveH", self.SPEC)

    async def test_async_grid_matches_sync(self, evaluator: Evaluator):
        sync_rows = list(evaluator.struve.grid("H", 4.5, self.SPEC))
        async_rows = [row async for row in evaluator.struve.agrid("H", 4.5, self.SPEC, chunk=4)]
        assert [r.as_complex for _, _, r in async_rows] == [r.as_complex for _, _, r in sync_rows]

    async def test_point_list(self, evaluator: Evaluator):
        points = [1 + 1j, 2 + 0j]
        rows = [row async for row in evaluator.agrid("neumannO", points, n=5)]
        assert [z for _, z, _ in rows] == points


class TestLifecycle:
    async def test_async_context_manager(self):
        async with Evaluator(LommelSettings()) as evaluator:
            result = await evaluator.struve.aeval("H", 4.5, 2.0)
            same = await evaluator.aevaluate("struveH", 2.0, nu=4.5)
        assert result.as_complex == same.as_complex

    async def test_async_sub_apis(self, evaluator: Evaluator):
        neumann = await evaluator.neumann.aeval(4, 0.8 - 0.3j)
        assert neumann.as_complex == pytest.approx(_o4(0.8 - 0.3j), rel=1e-14)
        airy = await evaluator.scorer.aeval("Ai", 0.0)
        assert airy.as_complex == pytest.approx(special.airy(0.0)[0], rel=1e-14)
