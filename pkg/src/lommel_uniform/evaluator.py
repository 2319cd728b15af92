from __future__ import annotations

import asyncio
import logging
import threading
from typing import Any, Callable, Hashable, Sequence

from ._grid import DEFAULT_CHUNK, AsyncGridIterator, SyncGridIterator, grid_points
from .angerweber import FUNCTION_IDS as ANGER_WEBER_IDS
from .api.angerweber import AngerWeberApi
from .api.lommel import LommelApi
from .api.neumann import NeumannApi
from .api.scorer import ScorerApi
from .api.struve import StruveApi
from .coeffs import CoefficientTable, get_table
from .exceptions import ConfigurationError, PrecisionError
from .models import (
    ComplexValue,
    EvalResult,
    GridSpec,
    LommelSettings,
    Method,
    Variant,
    get_settings,
)
from .oracle import QUADRATURE_FUNCTIONS, SERIES_FUNCTIONS, oracle_eval, oracle_series
from .struve import FUNCTION_IDS as STRUVE_IDS

LOGGER = logging.getLogger(__name__)

LOMMEL_IDS = ("s", "S", "S0", "S1", "S2")
SCORER_IDS = ("Ai", "Hi", "Gi")
FUNCTION_IDS = (
    *LOMMEL_IDS,
    *ANGER_WEBER_IDS,
    *STRUVE_IDS,
    "neumannO",
    *SCORER_IDS,
)

DEFAULT_CACHE_SIZE = 4096


def _points(spec: GridSpec | Sequence[complex]) -> list[complex]:
    if isinstance(spec, GridSpec):
        return grid_points(spec)
    return [complex(z) for z in spec]


class Evaluator:
    """Unified entry point for the Lommel, Anger-Weber, Struve, Neumann and Scorer families.

    Supports both sync and async usage.  Construct with an optional
    :class:`LommelSettings`; the process-wide settings are used otherwise.

    Sync::

        evaluator = Evaluator()
        value = evaluator.lommel.eval("S", 0.3, 100.0, 200.0)
        same = evaluator.evaluate("S", 200.0, mu=0.3, nu=100.0)
        evaluator.close()

    Async::

        async with Evaluator() as evaluator:
            value = await evaluator.struve.aeval("K", 100.0, 150.0)
    """

    def __init__(
        self, settings: LommelSettings | None = None, *, cache_size: int = DEFAULT_CACHE_SIZE
    ) -> None:
        self.settings = settings or get_settings()
        self._cache_size = cache_size
        self._cache: dict[Hashable, EvalResult] = {}
        self._lock = threading.Lock()
        self._table: CoefficientTable | None = None

        self.lommel = LommelApi(self)
        self.anger_weber = AngerWeberApi(self)
        self.struve = StruveApi(self)
        self.neumann = NeumannApi(self)
        self.scorer = ScorerApi(self)

    # ------------------------------------------------------------------
    # Lazy coefficient table
    # ------------------------------------------------------------------

    @property
    def table(self) -> CoefficientTable:
        if self._table is None:
            self._table = get_table(self.settings.coeff_depth)
        return self._table

    # ------------------------------------------------------------------
    # Core evaluation with memoisation
    # ------------------------------------------------------------------

    def _cached(self, key: Hashable, build: Callable[[], EvalResult]) -> EvalResult:
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = build()
        with self._lock:
            if len(self._cache) < self._cache_size:
                self._cache[key] = result
        return result

    def _compute(self, fn: Callable[..., EvalResult], *args: Any, **kwargs: Any) -> EvalResult:
        key = (fn.__module__, fn.__qualname__, args, tuple(sorted(kwargs.items())))
        return self._cached(key, lambda: fn(*args, settings=self.settings, **kwargs))

    async def _acompute(
        self, fn: Callable[..., EvalResult], *args: Any, **kwargs: Any
    ) -> EvalResult:
        return await asyncio.to_thread(self._compute, fn, *args, **kwargs)

    # ------------------------------------------------------------------
    # Dispatch by function id
    # ------------------------------------------------------------------

    @staticmethod
    def _params(
        function_id: str,
        *,
        mu: complex,
        nu: float | None,
        sign: int,
        n: int | None,
    ) -> dict[str, Any]:
        if function_id not in FUNCTION_IDS:
            raise ConfigurationError(f"unknown function {function_id!r}", function=function_id)
        if function_id in SCORER_IDS:
            return {}
        if function_id == "neumannO":
            if n is None:
                raise ConfigurationError("neumannO needs an integer order n", function=function_id)
            return {"n": int(n)}
        if nu is None:
            raise ConfigurationError(f"{function_id} needs an order nu", function=function_id)
        if function_id in LOMMEL_IDS:
            return {"mu": complex(mu), "nu": float(nu)}
        if function_id in ANGER_WEBER_IDS:
            if sign not in (1, -1):
                raise ConfigurationError(f"sign must be +1 or -1, got {sign}")
            return {"nu": float(nu), "sign": sign}
        return {"nu": float(nu)}

    def _check_params(self, function_id: str, kwargs: dict[str, Any]) -> None:
        self._params(
            function_id,
            mu=kwargs.get("mu", 0.0),
            nu=kwargs.get("nu"),
            sign=kwargs.get("sign", 1),
            n=kwargs.get("n"),
        )

    def evaluate(
        self,
        function_id: str,
        z: complex,
        *,
        mu: complex = 0.0,
        nu: float | None = None,
        sign: int = 1,
        n: int | None = None,
        method: Method = "auto",
        terms: int | None = None,
    ) -> EvalResult:
        """Evaluate ``function_id`` at the unscaled ``z`` with the ``--method`` policy."""
        p = self._params(function_id, mu=mu, nu=nu, sign=sign, n=n)
        if function_id in LOMMEL_IDS:
            variant: Variant = function_id  # type: ignore[assignment]
            return self.lommel.eval(variant, p["mu"], p["nu"], z, method=method, terms=terms)
        if function_id in ANGER_WEBER_IDS:
            return self.anger_weber.eval(
                ANGER_WEBER_IDS[function_id], p["sign"], p["nu"], z, method=method, terms=terms
            )
        if function_id in STRUVE_IDS:
            return self.struve.eval(
                STRUVE_IDS[function_id], p["nu"], z, method=method, terms=terms
            )
        if function_id == "neumannO":
            return self.neumann.eval(p["n"], z, method=method, terms=terms)
        if method == "oracle":
            return self.scorer.oracle(function_id, z)  # type: ignore[arg-type]
        return self.scorer.eval(function_id, z)  # type: ignore[arg-type]

    async def aevaluate(self, function_id: str, z: complex, **kwargs: Any) -> EvalResult:
        return await asyncio.to_thread(self.evaluate, function_id, z, **kwargs)

    def oracle(
        self,
        function_id: str,
        z: complex,
        *,
        mu: complex = 0.0,
        nu: float | None = None,
        sign: int = 1,
        n: int | None = None,
    ) -> EvalResult:
        """Reference value: the extended-precision series where one exists, else quadrature."""
        z = complex(z)
        p = self._params(function_id, mu=mu, nu=nu, sign=sign, n=n)
        key = ("oracle", function_id, z, tuple(sorted(p.items())))
        return self._cached(key, lambda: self._oracle(function_id, p, z))

    def _oracle(self, function_id: str, params: dict[str, Any], z: complex) -> EvalResult:
        if function_id not in SERIES_FUNCTIONS:
            return oracle_eval(function_id, params, z, settings=self.settings)
        try:
            value = oracle_series(function_id, params, z, self.settings.oracle_dps)
        except PrecisionError:
            if function_id not in QUADRATURE_FUNCTIONS:
                raise
            LOGGER.debug("%s series lost precision at z=%s, using quadrature", function_id, z)
            return oracle_eval(function_id, params, z, settings=self.settings)
        return EvalResult(
            value=ComplexValue.of(value),
            method="oracle",
            err_estimate=self.settings.oracle_tol,
            function=function_id,
            z=ComplexValue.of(z),
        )

    # ------------------------------------------------------------------
    # Grids
    # ------------------------------------------------------------------

    def grid(
        self,
        function_id: str,
        spec: GridSpec | Sequence[complex],
        *,
        chunk: int = DEFAULT_CHUNK,
        **kwargs: Any,
    ) -> SyncGridIterator:
        self._check_params(function_id, kwargs)

        def evaluate(z: complex) -> EvalResult:
            return self.evaluate(function_id, z, **kwargs)

        return SyncGridIterator(evaluate, _points(spec), chunk=chunk)

    def agrid(
        self,
        function_id: str,
        spec: GridSpec | Sequence[complex],
        *,
        chunk: int = DEFAULT_CHUNK,
        **kwargs: Any,
    ) -> AsyncGridIterator:
        self._check_params(function_id, kwargs)

        def evaluate(z: complex) -> EvalResult:
            return self.evaluate(function_id, z, **kwargs)

        return AsyncGridIterator(evaluate, _points(spec), chunk=chunk)

    # ------------------------------------------------------------------
    # Lifecycle
    # ------------------------------------------------------------------

    def close(self) -> None:
        with self._lock:
            self._cache.clear()
        self._table = None

    async def aclose(self) -> None:
        self.close()

    def __enter__(self) -> Evaluator:
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()

    async def __aenter__(self) -> Evaluator:
        return self

    async def __aexit__(self, *args: Any) -> None:
        await self.aclose()
