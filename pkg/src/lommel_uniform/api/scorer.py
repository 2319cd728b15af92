from __future__ import annotations

from typing import TYPE_CHECKING, Literal

from .._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from ..airy_scorer import airy, scorer_gi, scorer_hi, wi
from ..models import (
    ComplexValue,
    EvalResult,
    GridSpec,
    LommelSettings,
    ResultMethod,
    ScorerMethod,
    ScorerValue,
)

if TYPE_CHECKING:
    from ..evaluator import Evaluator

Kernel = Literal["Ai", "Hi", "Gi"]

_LABELS: dict[ScorerMethod, ResultMethod] = {
    "power_series": "series",
    "asymptotic": "asymptotic_simple",
    "quadrature": "oracle",
}


def _kernel_result(name: Kernel, x: complex, *, settings: LommelSettings) -> EvalResult:
    if name == "Ai":
        ai, aip = airy(0, x)
        # AMOS kernel, reported as a convergent evaluation
        value = ScorerValue(value=ai, derivative=aip, method="power_series")
    elif name == "Hi":
        value = scorer_hi(x, settings=settings)
    else:
        value = scorer_gi(x, settings=settings)
    return EvalResult(
        value=ComplexValue.of(value.value),
        method=_LABELS[value.method],
        function=name,
        z=ComplexValue.of(x),
    )


class ScorerApi:
    """Airy ``Ai`` and the Scorer functions ``Hi``, ``Gi``, ``Wi^{(j,k)}``.

    Accessed via ``evaluator.scorer``.
    """

    def __init__(self, evaluator: Evaluator) -> None:
        self._evaluator = evaluator

    # ---- Sync ----

    def hi(self, x: complex) -> ScorerValue:
        return scorer_hi(x, settings=self._evaluator.settings)

    def gi(self, x: complex) -> ScorerValue:
        return scorer_gi(x, settings=self._evaluator.settings)

    def wi(self, j: int, k: int, x: complex) -> tuple[complex, complex]:
        return wi(j, k, x, settings=self._evaluator.settings)

    def eval(self, name: Kernel, x: complex) -> EvalResult:
        return self._evaluator._compute(_kernel_result, name, complex(x))

    def oracle(self, name: Kernel, x: complex) -> EvalResult:
        return self._evaluator.oracle(name, x)

    def grid(
        self, name: Kernel, spec: GridSpec, *, chunk: int = DEFAULT_CHUNK
    ) -> SyncGridIterator:
        def evaluate(x: complex) -> EvalResult:
            return self.eval(name, x)

        return SyncGridIterator(evaluate, grid_points(spec), chunk=chunk)

    # ---- Async ----

    async def aeval(self, name: Kernel, x: complex) -> EvalResult:
        return await self._evaluator._acompute(_kernel_result, name, complex(x))

    def agrid(
        self, name: Kernel, spec: GridSpec, *, chunk: int = DEFAULT_CHUNK
    ) -> AsyncGridIterator:
        def evaluate(x: complex) -> EvalResult:
            return self.eval(name, x)

        return AsyncGridIterator(evaluate, grid_points(spec), chunk=chunk)
