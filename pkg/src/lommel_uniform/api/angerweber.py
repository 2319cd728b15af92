from __future__ import annotations

from typing import TYPE_CHECKING

from .._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from ..angerweber import FUNCTION_IDS, Which, anger_weber_continue, anger_weber_eval
from ..models import EvalResult, GridSpec, Method

if TYPE_CHECKING:
    from ..evaluator import Evaluator

_IDS = {which: function_id for function_id, which in FUNCTION_IDS.items()}


class AngerWeberApi:
    """Anger ``J``, Weber ``E`` and Anger-Weber ``A`` of order ``+nu`` or ``-nu``.

    Accessed via ``evaluator.anger_weber``.
    """

    def __init__(self, evaluator: Evaluator) -> None:
        self._evaluator = evaluator

    # ---- Sync ----

    def eval(
        self,
        which: Which,
        sign: int,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
    ) -> EvalResult:
        return self._evaluator._compute(
            anger_weber_eval, which, sign, float(nu), complex(z), method=method, terms=terms
        )

    def continued(self, nu: float, z: complex, m: int) -> EvalResult:
        """``A_nu(z e^{m pi i})``; a negative ``nu`` continues ``A_{-|nu|}``."""
        return self._evaluator._compute(anger_weber_continue, float(nu), complex(z), m)

    def oracle(self, which: Which, sign: int, nu: float, z: complex) -> EvalResult:
        return self._evaluator.oracle(_IDS[which], z, nu=nu, sign=sign)

    def grid(
        self,
        which: Which,
        sign: int,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> SyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(which, sign, nu, z, method=method, terms=terms)

        return SyncGridIterator(evaluate, grid_points(spec), chunk=chunk)

    # ---- Async ----

    async def aeval(
        self,
        which: Which,
        sign: int,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
    ) -> EvalResult:
        return await self._evaluator._acompute(
            anger_weber_eval, which, sign, float(nu), complex(z), method=method, terms=terms
        )

    def agrid(
        self,
        which: Which,
        sign: int,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> AsyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(which, sign, nu, z, method=method, terms=terms)

        return AsyncGridIterator(evaluate, grid_points(spec), chunk=chunk)
