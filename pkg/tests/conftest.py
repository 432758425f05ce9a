"""
Shared fixtures for the quiverdt test suite
"""

import random

import pytest

from core.config import settings
from core.logging import setup_logging
from services import kac as kac_module
from services.kac import KacService
from services.quiver import affine_a1, loop_quiver

setup_logging(level="WARNING", json_logs=False)


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Every test gets its own Kac cache directory and a fresh default service"""
    monkeypatch.setattr(settings, "KAC_CACHE_DIR", str(tmp_path / "kac-cache"))
    monkeypatch.setattr(kac_module, "_default", None)
    return tmp_path / "kac-cache"


@pytest.fixture
def point():
    """Q^(0): one vertex, no arrows"""
    return loop_quiver(0)


@pytest.fixture
def jordan():
    """Q^(1): one vertex, one loop"""
    return loop_quiver(1)


@pytest.fixture
def aff_a1():
    return affine_a1()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def oracle():
    """Oracle-backed Kac source shared across tests, without disk cache"""
    return KacService(use_cache=False)
