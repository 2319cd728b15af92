from __future__ import annotations

from collections.abc import Iterator

import pytest

from lommel_uniform import Evaluator, LommelSettings, get_settings


@pytest.fixture
def settings() -> LommelSettings:
    return LommelSettings()


@pytest.fixture
def evaluator(settings: LommelSettings) -> Iterator[Evaluator]:
    with Evaluator(settings) as ev:
        yield ev


@pytest.fixture
def clean_settings_cache() -> Iterator[None]:
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
