"""Tests for the row/column MDS graph code and the flat baseline."""

import itertools

import numpy as np
import pytest
from src.graph_codes.base import redundancy_bound
from src.graph_codes.exceptions import (
    ErasureBudgetExceededError,
    ErasurePatternError,
    InvalidParametersError,
    NotACodewordError,
)
from src.graph_codes.graph import DirectedGraph, ErasedGraph, erase_nodes
from src.graph_codes.linalg import rank
from src.graph_codes.mds_graph_code import FlatMdsCode, RowColumnCode, flat_make


def test_row_column_code_parameters():
    """Test k, redundancy and optimality for n=5, rho=2."""
    code = RowColumnCode(5, 2)
    assert code.k == 9
    assert code.info_shape == (3, 3)
    assert code.redundancy == 16
    assert code.bound == redundancy_bound(5, 2) == 16
    assert code.optimal
    assert rank(code.parity_check) == 16


def test_row_column_encode_is_systematic():
    """Test that information sits in the top-left block of a valid codeword."""
    code = RowColumnCode(5, 2)
    info = code.random_info(np.random.default_rng(3))
    graph = code.encode(info)
    assert isinstance(graph, DirectedGraph)
    assert code.check(graph)
    assert np.array_equal(code.info_of(graph), info)


@pytest.mark.parametrize(
    "n,rho",
    [(n, rho) for n in range(5, 10) for rho in range(1, 4) if rho < n],
)
def test_row_column_decodes_every_failure_set(n, rho):
    """Test recovery from every set of at most rho failed nodes."""
    code = RowColumnCode(n, rho)
    rng = np.random.default_rng(n * 10 + rho)
    graph = code.encode(code.random_info(rng))
    for size in range(1, rho + 1):
        for nodes in itertools.combinations(range(n), size):
            assert code.decode(erase_nodes(graph, nodes), nodes) == graph


def test_row_column_rejects_too_many_failures():
    """Test that rho + 1 failures exceed the budget."""
    code = RowColumnCode(5, 2)
    graph = code.encode(code.random_info(np.random.default_rng(0)))
    with pytest.raises(ErasureBudgetExceededError):
        code.decode(erase_nodes(graph, [0, 1, 2]), [0, 1, 2])


def test_row_column_rejects_mismatched_pattern():
    """Test that the Unknown cells must match the declared failures."""
    code = RowColumnCode(5, 2)
    graph = code.encode(code.random_info(np.random.default_rng(0)))
    with pytest.raises(ErasurePatternError):
        code.decode(erase_nodes(graph, [0, 1]), [0])


def test_row_column_detects_corruption():
    """Test that corrupted Known labels are not silently accepted."""
    code = RowColumnCode(5, 2)
    graph = code.encode(code.random_info(np.random.default_rng(0)))
    labels = graph.matrix()
    labels[0, 0] ^= 1
    corrupted = DirectedGraph(code.field, labels)
    assert not code.check(corrupted)
    with pytest.raises(NotACodewordError):
        code.decode(erase_nodes(corrupted, [4]), [4])
    with pytest.raises(NotACodewordError):
        code.decode(ErasedGraph.from_graph(corrupted), [])


def test_row_column_rejects_bad_information():
    """Test shape and range checks on the information block."""
    code = RowColumnCode(5, 2)
    with pytest.raises(InvalidParametersError):
        code.encode(np.zeros((2, 3), dtype=np.int64))
    with pytest.raises(InvalidParametersError):
        code.encode(np.full((3, 3), code.field.order, dtype=np.int64))


def test_row_column_rejects_other_graph_kinds():
    """Test that undirected or wrongly sized graphs are rejected."""
    code = RowColumnCode(5, 2)
    erased = ErasedGraph(code.field, np.zeros((5, 5)), np.ones((5, 5), dtype=bool), directed=False)
    with pytest.raises(InvalidParametersError):
        code.decode(erased, [])


@pytest.mark.parametrize("n,rho", [(4, 0), (4, 4)])
def test_row_column_rejects_bad_parameters(n, rho):
    """Test that rho must lie in [1, n)."""
    with pytest.raises(InvalidParametersError):
        RowColumnCode(n, rho)


@pytest.mark.parametrize("n,rho", [(4, 1), (5, 2)])
def test_flat_code_decodes_every_failure_set(n, rho):
    """Test the flat MDS baseline on every failure set."""
    code = FlatMdsCode(n, rho)
    assert code.optimal
    rng = np.random.default_rng(n)
    info = code.random_info(rng)
    graph = code.encode(info)
    assert code.check(graph)
    assert np.array_equal(code.info_of(graph), info)
    for size in range(1, rho + 1):
        for nodes in itertools.combinations(range(n), size):
            assert code.decode(erase_nodes(graph, nodes), nodes) == graph


def test_flat_code_uses_larger_field():
    """Test that the flat code needs a field of size about n^2."""
    assert flat_make(5, 2).field.m == 5
    assert flat_make(4, 1).field.m == 4
    assert RowColumnCode(5, 2).field.m == 2
