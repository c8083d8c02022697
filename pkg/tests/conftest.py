"""Shared fixtures for the test suite."""

import pytest

from graphlik import Graph


@pytest.fixture
def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i - i+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, i + 5))
    return Graph.from_edges(10, edges)


@pytest.fixture
def paw() -> Graph:
    """Triangle 0,1,2 with a pendant vertex 3 attached to 2."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
