from __future__ import annotations

import asyncio
from collections import deque
from typing import Callable, Sequence, Union

import numpy as np

from .exceptions import LommelError
from .models import EvalResult, GridSpec

DEFAULT_CHUNK = 64

GridRow = tuple[int, complex, Union[EvalResult, LommelError]]


def parse_grid(text: str) -> GridSpec:
    """``"x0,x1,y0,y1,nx,ny"`` as a :class:`GridSpec`."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise ValueError(f"grid needs x0,x1,y0,y1,nx,ny, got {text!r}")
    x0, x1, y0, y1 = (float(p) for p in parts[:4])
    return GridSpec(x0=x0, x1=x1, y0=y0, y1=y1, nx=int(parts[4]), ny=int(parts[5]))


def _axis(start: float, stop: float, count: int) -> np.ndarray:
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def grid_points(spec: GridSpec) -> list[complex]:
    """Row-major points: ``index = iy * nx + ix``; a single column or row sits at x0/y0."""
    xs = _axis(spec.x0, spec.x1, spec.nx)
    ys = _axis(spec.y0, spec.y1, spec.ny)
    return [complex(x, y) for y in ys for x in xs]


def random_points(spec: GridSpec, samples: int, seed: int = 0) -> list[complex]:
    """``samples`` uniform points in the grid rectangle, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    xs = rng.uniform(spec.x0, spec.x1, samples)
    ys = rng.uniform(spec.y0, spec.y1, samples)
    return [complex(x, y) for x, y in zip(xs, ys)]


def _row(evaluate: Callable[[complex], EvalResult], index: int, z: complex) -> GridRow:
    try:
        return index, z, evaluate(z)
    except LommelError as exc:
        return index, z, exc


class SyncGridIterator:
    """Synchronous iterator over evaluated grid rows, one chunk at a time."""

    def __init__(
        self,
        evaluate: Callable[[complex], EvalResult],
        points: Sequence[complex],
        chunk: int = DEFAULT_CHUNK,
    ):
        if chunk < 1:
            raise ValueError(f"chunk must be positive, got {chunk}")
        self._evaluate = evaluate
        self._points = list(points)
        self._chunk = chunk
        self._offset = 0
        self._buffer: deque[GridRow] = deque()

    def __iter__(self) -> SyncGridIterator:
        return self

    def __next__(self) -> GridRow:
        if not self._buffer:
            if self._offset >= len(self._points):
                raise StopIteration
            stop = min(self._offset + self._chunk, len(self._points))
            for index in range(self._offset, stop):
                self._buffer.append(_row(self._evaluate, index, self._points[index]))
            self._offset = stop
        return self._buffer.popleft()


class AsyncGridIterator:
    """Async iterator over evaluated grid rows.

    Each chunk runs in worker threads; rows still come out in row-major order.
    """

    def __init__(
        self,
        evaluate: Callable[[complex], EvalResult],
        points: Sequence[complex],
        chunk: int = DEFAULT_CHUNK,
    ):
        if chunk < 1:
            raise ValueError(f"chunk must be positive, got {chunk}")
        self._evaluate = evaluate
        self._points = list(points)
        self._chunk = chunk
        self._offset = 0
        self._buffer: deque[GridRow] = deque()

    def __aiter__(self) -> AsyncGridIterator:
        return self

    async def __anext__(self) -> GridRow:
        if not self._buffer:
            if self._offset >= len(self._points):
                raise StopAsyncIteration
            stop = min(self._offset + self._chunk, len(self._points))
            rows = await asyncio.gather(
                *(
                    asyncio.to_thread(_row, self._evaluate, index, self._points[index])
                    for index in range(self._offset, stop)
                )
            )
            self._buffer.extend(rows)
            self._offset = stop
        return self._buffer.popleft()
