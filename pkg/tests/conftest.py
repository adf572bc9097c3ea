"""
Shared pytest fixtures and configuration for nu-subdiv tests.

This module provides:
- Path fixtures (the worked NEENE example, staircases, small sweep lists)
- Configuration fixtures (default, fast verification, random order)
- Reduction fixtures reused across unit and integration tests
- Global pytest configuration
"""
from __future__ import annotations

import warnings

import pytest

from nu_subdiv.config import Config, ReductionConfig, VerifyConfig
from nu_subdiv.path import IndexedPath, index_path, paths_up_to


# ==============================================================================
# Global pytest configuration
# ==============================================================================

def pytest_configure(config):
    """Global pytest configuration - runs once at test session start."""
    warnings.filterwarnings("ignore", category=DeprecationWarning)
    warnings.filterwarnings("ignore", category=PendingDeprecationWarning)


# ==============================================================================
# Path fixtures
# ==============================================================================

NEENE_FACETS = {
    "x21*x23*x24",
    "x21*x23*x41",
    "x21*x24*x34",
    "x21*x31*x34",
    "x21*x31*x41",
    "x13*x23*x43",
    "x23*x41*x43",
    "x13*x14*x23",
    "x14*x23*x24",
    "x14*x24*x34",
}


@pytest.fixture
def neene() -> IndexedPath:
    """ν = NEENE, ν̄ = E1N1E2E3N3E4N4."""
    return index_path("NEENE")


@pytest.fixture
def neene_facets() -> set[str]:
    """The ten ρ_len facet monomials of NEENE."""
    return set(NEENE_FACETS)


@pytest.fixture
def two_bidirectional() -> IndexedPath:
    """ν̄ = E1N1E2E3N3N4E5E6N6, whose G_B has two bidirectional edges."""
    return index_path("NEENNEE")


@pytest.fixture
def staircase() -> IndexedPath:
    """ν = EEN, the lowest path to (2, 1)."""
    return index_path("EEN")


@pytest.fixture
def empty_path() -> IndexedPath:
    return index_path("")


def small_paths(max_size: int, min_size: int = 1) -> list[str]:
    """Every path with ``min_size <= a + b <= max_size`` as a plain string."""
    return [nu.steps for nu in paths_up_to(max_size, min_size=min_size)]


@pytest.fixture
def paths_up_to_four() -> list[str]:
    return small_paths(4)


# ==============================================================================
# Configuration fixtures
# ==============================================================================

@pytest.fixture
def default_config() -> Config:
    """Return default configuration."""
    return Config()


@pytest.fixture
def fast_config() -> Config:
    """Verification with few probes and orders, for quick tests."""
    return Config(verify=VerifyConfig(trials=50, seed=1, random_orders=2, workers=2))


@pytest.fixture
def random_config() -> Config:
    return Config(reduction=ReductionConfig(order="random", seed=7))
