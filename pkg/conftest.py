"""Shared fixtures: von Mangoldt tables built once per test session."""

from __future__ import annotations

import pytest

from logzeta.arithmetic import build_mangoldt
from logzeta.types import BoundParameters, MangoldtTable, PrecisionConfig


@pytest.fixture(scope="session")
def small_table() -> MangoldtTable:
    return build_mangoldt(10_000)


@pytest.fixture(scope="session")
def big_table() -> MangoldtTable:
    return build_mangoldt(1_000_000)


@pytest.fixture
def cfg() -> PrecisionConfig:
    return PrecisionConfig()


@pytest.fixture
def bp() -> BoundParameters:
    return BoundParameters(delta=0.0, delta0=1e-3, constant_c=1.0)
