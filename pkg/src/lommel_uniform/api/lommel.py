from __future__ import annotations

from typing import TYPE_CHECKING

from .._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from ..lommel import lommel_continue, lommel_eval, lommel_reflect
from ..models import EvalResult, GridSpec, Method, Variant

if TYPE_CHECKING:
    from ..evaluator import Evaluator


class LommelApi:
    """Lommel functions ``s``, ``S`` and ``S^{(0)}``, ``S^{(1)}``, ``S^{(2)}``.

    Accessed via ``evaluator.lommel``.
    """

    def __init__(self, evaluator: Evaluator) -> None:
        self._evaluator = evaluator

    # ---- Sync ----

    def eval(
        self,
        variant: Variant,
        mu: complex,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
        branch_winding: int = 0,
    ) -> EvalResult:
        return self._evaluator._compute(
            lommel_eval,
            variant,
            complex(mu),
            float(nu),
            complex(z),
            method=method,
            terms=terms,
            branch_winding=branch_winding,
        )

    def continued(
        self, variant: Variant, mu: complex, nu: float, z: complex, m: int
    ) -> EvalResult:
        """Value at ``z e^{m pi i}`` from the continuation formulas."""
        return self._evaluator._compute(
            lommel_continue, variant, complex(mu), float(nu), complex(z), m
        )

    def reflected(self, variant: Variant, mu: complex, nu: float, z: complex) -> complex:
        """Order ``-nu`` through the reflection identities."""
        return lommel_reflect(variant, mu, nu, z, settings=self._evaluator.settings)

    def oracle(self, variant: Variant, mu: complex, nu: float, z: complex) -> EvalResult:
        return self._evaluator.oracle(variant, z, mu=mu, nu=nu)

    def grid(
        self,
        variant: Variant,
        mu: complex,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> SyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(variant, mu, nu, z, method=method, terms=terms)

        return SyncGridIterator(evaluate, grid_points(spec), chunk=chunk)

    # ---- Async ----

    async def aeval(
        self,
        variant: Variant,
        mu: complex,
        nu: float,
        z: complex,
        *,
        method: Method = "auto",
        terms: int | None = None,
        branch_winding: int = 0,
    ) -> EvalResult:
        return await self._evaluator._acompute(
            lommel_eval,
            variant,
            complex(mu),
            float(nu),
            complex(z),
            method=method,
            terms=terms,
            branch_winding=branch_winding,
        )

    def agrid(
        self,
        variant: Variant,
        mu: complex,
        nu: float,
        spec: GridSpec,
        *,
        method: Method = "auto",
        terms: int | None = None,
        chunk: int = DEFAULT_CHUNK,
    ) -> AsyncGridIterator:
        def evaluate(z: complex) -> EvalResult:
            return self.eval(variant, mu, nu, z, method=method, terms=terms)

        return AsyncGridIterator(evaluate, grid_points(spec), chunk=chunk)
