import math

import numpy as np
import pytest

from alpha_synthesis.models import PlaneGrid
from alpha_synthesis.services.builtin_service import BuiltinService
from alpha_synthesis.services.grid_service import make_line_grid


@pytest.fixture(autouse=True)
def isolated_log(tmp_path, monkeypatch):
    """Le journal de chaque test va dans son répertoire temporaire."""
    monkeypatch.setenv("ALPHA_SYNTHESIS_LOG", str(tmp_path / "logs.txt"))


@pytest.fixture
def grid16():
    return make_line_grid(16)


@pytest.fixture
def grid32():
    return make_line_grid(32)


@pytest.fixture
def grid64():
    return make_line_grid(64)


@pytest.fixture
def plane64(grid64):
    return PlaneGrid(grid64)


@pytest.fixture
def builtins():
    return BuiltinService()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def gaussian(points, width=1.0):
    return np.exp(-width * math.pi * points**2)
