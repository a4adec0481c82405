"""Tests for peeling XOR constraints."""

import numpy as np
import pytest
from src.graph_codes.exceptions import PeelingStalledError
from src.graph_codes.gf2m import GF2
from src.graph_codes.graph import DirectedGraph, ErasedGraph, UndirectedGraph, erase_nodes
from src.graph_codes.peeling import Workspace, constraints_hold, peel, peel_decode

ROWS = [tuple((i, j) for j in range(3)) for i in range(3)]
COLS = [tuple((i, j) for i in range(3)) for j in range(3)]


def _even_graph() -> DirectedGraph:
    return DirectedGraph(GF2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def test_constraints_hold():
    """Test that rows and columns of an even-weight square XOR to zero."""
    graph = _even_graph()
    assert constraints_hold(graph, ROWS + COLS)
    assert not constraints_hold(DirectedGraph(GF2, np.eye(3, dtype=np.int64)), ROWS[:1])


def test_peel_fills_single_unknowns():
    """Test that a failed node is recovered through rows then columns."""
    graph = _even_graph()
    erased = erase_nodes(graph, [1])
    workspace = Workspace(erased)
    filled = peel(workspace, ROWS + COLS)
    assert filled == 5
    assert workspace.to_graph() == graph


def test_peel_decode_stalls():
    """Test that a constraint with two Unknowns stops peeling."""
    graph = _even_graph()
    erased = erase_nodes(graph, [1])
    with pytest.raises(PeelingStalledError) as info:
        peel_decode(erased, ROWS)
    assert (1, 0) in info.value.unknown


def test_workspace_mirrors_undirected_writes():
    """Test that writing one cell of an undirected pair fills both."""
    graph = UndirectedGraph.zeros(GF2, 3)
    workspace = Workspace(erase_nodes(graph, [2]))
    workspace.set((2, 0), 1)
    assert workspace.is_known((0, 2))
    assert workspace.get((0, 2)) == 1
    assert (2, 0) not in workspace.unknown_cells()


def test_workspace_xor_known_skips_unknown_and_excluded():
    """Test that Unknown cells and skipped cells are left out of the sum."""
    known = np.ones((2, 2), dtype=bool)
    known[1, 1] = False
    workspace = Workspace(ErasedGraph(GF2, [[1, 1], [1, 0]], known))
    edges = ((0, 0), (0, 1), (1, 0), (1, 1))
    assert workspace.xor_known(edges) == 1
    assert workspace.xor_known(edges, skip=[(1, 0)]) == 0
    assert workspace.unknown_in(edges) == [(1, 1)]
