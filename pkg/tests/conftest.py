import functools

import pytest

import ovaloid as ov


@functools.lru_cache(maxsize=None)
def _solve(b: float, epsilon: float = 1.0, nodes: int = 512) -> ov.SolveReport:
    return ov.solve_ovaloid(b, epsilon, node_count=nodes)


@functools.lru_cache(maxsize=None)
def _root(b: float, nodes: int = 512) -> float:
    # bare root a(b) without calibration, for unit-scale (C=1) checks
    return ov.solve_a_for_b(b, ov.ContourSpec(ov.contour.clamped_radius(b, b), nodes), b_max=0.9)


@pytest.fixture(scope="session")
def solved():
    """Cached full solve reports keyed by (b, epsilon, nodes)."""
    return _solve


@pytest.fixture(scope="session")
def root_of():
    """Cached uncalibrated roots a(b)."""
    return _root
