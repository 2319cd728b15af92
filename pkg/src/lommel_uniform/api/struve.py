from __future__ import annotations

from typing import TYPE_CHECKING

from .._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from ..models import EvalResult, GridSpec, Method, StruveReduction
from ..struve import (
    FUNCTION_IDS,
    Which,
    struve_continue,
    struve_eval,
    struve_reduce,
    struve_stabilized,
)

if TYPE_CHECKING:
    from ..evaluator import Evaluator

_IDS = {which: function_id for function_id, which in FUNCTION_IDS.items()}


class StruveApi:
    """Struve ``H``, ``K`` and the companions ``K^{(1)}``, ``K^{(2)}``.

    Accessed via ``evaluator.struve``.
    """

    def __init__(self, evaluator: Evaluator) -> None:
        self._evaluator = evaluator

    def reduce(self, nu: float) -> StruveReduction:
        return struve_reduce(nu)

    # ---- Sync ----

    def eval(
        self,
        which: Which,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
        branch_winding: int = 0,
    ) -> EvalResult:
        return self._evaluator._compute(
            struve_eval,
            which,
            float(nu),
            complex(z),
            method=method,
            terms=terms,
            branch_winding=branch_winding,
        )

    def continued(self, which: Which, nu: float, z: complex, m: int) -> EvalResult:
        return self._evaluator._compute(struve_continue, which, float(nu), complex(z), m)

    def stabilized(self, nu: float, z: complex, s_max: int | None = None) -> complex:
        """Regular-part expansion of ``H_nu`` inside the unit disk."""
        return struve_stabilized(nu, z, s_max, settings=self._evaluator.settings)

    def oracle(self, which: Which, nu: float, z: complex) -> EvalResult:
        return self._evaluator.oracle(_IDS[which], z, nu=nu)

    def grid(
        self,
        which: Which,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> SyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(which, nu, z, method=method, terms=terms)

        return SyncGridIterator(evaluate, grid_points(spec), chunk=chunk)

    # ---- Async ----

    async def aeval(
        self,
        which: Which,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
        branch_winding: int = 0,
    ) -> EvalResult:
        return await self._evaluator._acompute(
            struve_eval,
            which,
            float(nu),
            complex(z),
            method=method,
            terms=terms,
            branch_winding=branch_winding,
        )

    def agrid(
        self,
        which: Which,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> AsyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(which, nu, z, method=method, terms=terms)

        return AsyncGridIterator(evaluate, grid_points(spec), chunk=chunk)
