from __future__ import annotations

from typing import TYPE_CHECKING

from .._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from ..models import EvalResult, GridSpec, Method, NeumannPoly
from ..neumann import neumann_eval, neumann_poly

if TYPE_CHECKING:
    from ..evaluator import Evaluator


class NeumannApi:
    """Neumann polynomials ``O_n``.

    Accessed via ``evaluator.neumann``.
    """

    def __init__(self, evaluator: Evaluator) -> None:
        self._evaluator = evaluator

    def poly(self, n: int) -> NeumannPoly:
        return neumann_poly(n)

    # ---- Sync ----

    def eval(
        self, n: int, z: complex, *, method: Method = "auto", terms: int | None = None
    ) -> EvalResult:
        return self._evaluator._compute(neumann_eval, n, complex(z), method=method, terms=terms)

    def oracle(self, n: int, z: complex) -> EvalResult:
        return self._evaluator.oracle("neumannO", z, n=n)

    def grid(
        self,
        n: int,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> SyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(n, z, method=method, terms=terms)

        return SyncGridIterator(evaluate, grid_points(spec), chunk=chunk)

    # ---- Async ----

    async def aeval(
        self, n: int, z: complex, *, method: Method = "auto", terms: int | None = None
    ) -> EvalResult:
        return await self._evaluator._acompute(
            neumann_eval, n, complex(z), method=method, terms=terms
        )

    def agrid(
        self,
        n: int,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> AsyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(n, z, method=method, terms=terms)

        return AsyncGridIterator(evaluate, grid_points(spec), chunk=chunk)
