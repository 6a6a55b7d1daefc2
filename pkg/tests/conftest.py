from __future__ import annotations

import importlib

import numpy as np
import pytest

from grmeasure import _kernels_py
from grmeasure.category import build_family
from grmeasure.poset import MeasuredPoset
from grmeasure.quiver import QuiverRep, a3_quiver

A3_LENGTHS = {"010": 1, "100": 1, "001": 1, "110": 2, "011": 2, "111": 3}
A3_RELATIONS = [("100", "110"), ("100", "111"), ("001", "011"), ("001", "111")]


def _compiled_backend():
    try:
        return importlib.import_module("grmeasure._kernels_cy")
    except ImportError:
        return None


BACKENDS = [pytest.param(_kernels_py, id="python")]
if _compiled_backend() is not None:
    BACKENDS.append(pytest.param(_compiled_backend(), id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def a3_poset() -> MeasuredPoset:
    return MeasuredPoset(A3_LENGTHS, A3_RELATIONS)


def a3_rep(d1: int, d2: int, d3: int, p: int = 2) -> QuiverRep:
    """Thin representation of 1 <- 2 -> 3 with identity-like maps."""
    q = a3_quiver()
    dims = {"1": d1, "2": d2, "3": d3}
    mats = {
        "a": np.ones((d1, d2), dtype=np.int64),
        "b": np.ones((d3, d2), dtype=np.int64),
    }
    return QuiverRep(q, p, dims, mats, name=f"{d1}{d2}{d3}")


@pytest.fixture(scope="session")
def a3_category():
    return build_family("a3paper", 2)


@pytest.fixture(scope="session")
def linear4_category():
    return build_family("linear-an", 2, n=4)


@pytest.fixture(scope="session")
def kronecker6():
    return build_family("kronecker", 2, 6)


@pytest.fixture(scope="session")
def kronecker4():
    return build_family("kronecker", 2, 4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
