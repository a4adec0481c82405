"""Tests for graphs, erasures and edge bookkeeping."""

import numpy as np
import pytest
from src.graph_codes.exceptions import ErasurePatternError, InvalidParametersError
from src.graph_codes.gf2m import GF2, field_make
from src.graph_codes.graph import (
    DirectedGraph,
    ErasedGraph,
    Orientation,
    UndirectedGraph,
    canonical_pair,
    edge_vector,
    erase_nodes,
    failure_cells,
    failure_pairs,
    graph_from_vector,
    make_edge_set,
    neighborhoods,
    orient_edge,
    pair_count,
    pair_index,
    require_node_erasure,
)


def test_pair_index_packs_lower_triangle():
    """Test the packed order (0,0), (1,0), (1,1), (2,0), ..."""
    assert [pair_index(0, 0), pair_index(1, 0), pair_index(1, 1), pair_index(2, 0)] == [0, 1, 2, 3]
    assert pair_index(0, 2) == pair_index(2, 0)
    assert pair_count(4) == 10


def test_orientation():
    """Test that down points to the smaller index and up to the larger."""
    assert orient_edge((2, 5), Orientation.DOWN) == (5, 2)
    assert orient_edge((2, 5), Orientation.UP) == (2, 5)
    assert orient_edge((3, 3), Orientation.UP) == (3, 3)
    assert canonical_pair(1, 4) == (4, 1)


def test_make_edge_set_rejects_duplicates():
    """Test that duplicate edges raise InvalidParametersError."""
    assert make_edge_set([(2, 1), (0, 0)]) == ((0, 0), (2, 1))
    with pytest.raises(InvalidParametersError):
        make_edge_set([(1, 0), (1, 0)])


def test_directed_graph_adjacency_convention():
    """Test that row i is the out-neighborhood of node i."""
    graph = DirectedGraph(GF2, [[0, 1, 0], [0, 0, 0], [1, 0, 0]])
    assert graph.n == 3
    assert graph.label(0, 1) == 1
    assert graph.label(1, 0) == 0
    assert list(edge_vector(graph, neighborhoods(graph, 0).out)) == [0, 1, 0]
    assert list(edge_vector(graph, neighborhoods(graph, 0).inward)) == [0, 0, 1]


def test_directed_graph_rejects_bad_labels():
    """Test that non-square matrices and out-of-field labels are rejected."""
    with pytest.raises(InvalidParametersError):
        DirectedGraph(GF2, np.zeros((2, 3)))
    with pytest.raises(InvalidParametersError):
        DirectedGraph(GF2, [[0, 2], [0, 0]])


def test_undirected_graph_is_symmetric():
    """Test that an undirected graph reads the same label both ways."""
    field = field_make(4)
    graph = UndirectedGraph.from_lower(field, np.array([[3, 9], [10, 5]]))
    assert graph.label(1, 0) == 10
    assert graph.label(0, 1) == 10
    assert np.array_equal(graph.matrix(), graph.matrix().T)
    assert list(graph.vector()) == [3, 10, 5]


def test_graph_from_vector_inverts_vector():
    """Test that a coordinate vector rebuilds the same graph."""
    field = field_make(3)
    graph = UndirectedGraph(field, 3, np.arange(6) % 8)
    assert graph_from_vector(field, 3, graph.vector(), directed=False) == graph


def test_erase_nodes_counts_unknown_cells():
    """Test that two failures on five nodes erase 16 cells, or 9 unordered pairs."""
    directed = DirectedGraph.zeros(GF2, 5)
    undirected = UndirectedGraph.zeros(GF2, 5)
    assert erase_nodes(directed, [1, 3]).unknown_count() == 16
    assert erase_nodes(undirected, [1, 3]).unknown_count() == 9
    assert len(failure_cells(5, [2])) == 9
    assert len(failure_pairs(5, 2)) == 5


def test_erased_graph_round_trip():
    """Test that a fully Known erased graph turns back into the graph."""
    graph = DirectedGraph(GF2, np.eye(4, dtype=np.int64))
    erased = ErasedGraph.from_graph(graph)
    assert erased.unknown_cells() == []
    assert erased.to_graph() == graph


def test_erased_graph_hides_unknown_labels():
    """Test that Unknown cells read as 0 and block conversion to a graph."""
    graph = DirectedGraph(GF2, np.ones((3, 3), dtype=np.int64))
    erased = erase_nodes(graph, [2])
    assert erased.labels[2, 0] == 0
    assert not erased.is_known(0, 2)
    with pytest.raises(ErasurePatternError):
        erased.to_graph()


def test_undirected_erased_graph_must_be_symmetric():
    """Test that asymmetric masks are rejected for undirected graphs."""
    known = np.ones((3, 3), dtype=bool)
    known[0, 1] = False
    with pytest.raises(InvalidParametersError):
        ErasedGraph(GF2, np.zeros((3, 3)), known, directed=False)


def test_require_node_erasure():
    """Test that the Unknown mask must match the declared failures exactly."""
    graph = DirectedGraph.zeros(GF2, 5)
    erased = erase_nodes(graph, [0, 4])
    require_node_erasure(erased, [4, 0])
    with pytest.raises(ErasurePatternError):
        require_node_erasure(erased, [0])
    with pytest.raises(ErasurePatternError):
        require_node_erasure(erased, [0, 7])
