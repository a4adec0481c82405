"""Tests for the edge-set families and loop parameters."""

import pytest
from src.graph_codes.exceptions import InvalidParametersError
from src.graph_codes.graph import Orientation
from src.graph_codes.parity_sets import (
    FamilyTag,
    is_prime,
    loop_params,
    parity_family,
    require_prime,
    special_edge,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9, 25])
def test_require_prime_rejects(n):
    """Test that non-primes and primes below 5 are rejected."""
    with pytest.raises(InvalidParametersError):
        require_prime(n)


def test_is_prime():
    """Test primality on small numbers."""
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    require_prime(13)


def test_family_sizes():
    """Test the number of sets in each family for n=7."""
    sizes = {tag: len(parity_family(7, tag)) for tag in FamilyTag}
    assert sizes[FamilyTag.S] == sizes[FamilyTag.S_PRIME] == 6
    assert sizes[FamilyTag.D] == sizes[FamilyTag.D_PRIME] == 7
    assert sizes[FamilyTag.S_DOWN] == sizes[FamilyTag.S_UP] == 5
    assert sizes[FamilyTag.D_DOWN] == sizes[FamilyTag.D_UP] == 7
    assert sizes[FamilyTag.F_DOWN] == sizes[FamilyTag.F_UP] == 7


def test_diagonal_set_zero():
    """Test D_0 for n=7: pairs summing to 0 without node 5, plus the special edge."""
    assert parity_family(7, FamilyTag.D)[0] == ((0, 0), (4, 3), (6, 1), (6, 5))


@pytest.mark.parametrize("tag", [FamilyTag.D, FamilyTag.D_PRIME])
def test_special_edge_in_every_diagonal(tag):
    """Test that the edge between nodes n-1 and n-2 is in every diagonal set."""
    for edges in parity_family(11, tag).sets:
        assert (10, 9) in edges


def test_oriented_special_edge():
    """Test both orientations of the special edge."""
    assert special_edge(7, Orientation.DOWN) == (6, 5)
    assert special_edge(7, Orientation.UP) == (5, 6)
    assert (5, 6) in parity_family(7, FamilyTag.D_UP)[3]


def test_neighborhood_sets():
    """Test that S_h holds the n-1 pairs at h avoiding node n-1."""
    family = parity_family(7, FamilyTag.S)
    assert family[2] == ((2, 0), (2, 1), (2, 2), (3, 2), (4, 2), (5, 2))
    assert family[5] == ((0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5))
    primed = parity_family(7, FamilyTag.S_PRIME)
    assert (6, 2) in primed[2]
    assert (5, 2) not in primed[2]


def test_directed_families_are_oriented():
    """Test that down sets point to smaller indices and up sets to larger ones."""
    for edges in parity_family(7, FamilyTag.S_DOWN).sets + parity_family(7, FamilyTag.D_DOWN).sets:
        assert all(a >= b for a, b in edges)
    for edges in parity_family(7, FamilyTag.S_UP).sets + parity_family(7, FamilyTag.D_UP).sets:
        assert all(a <= b for a, b in edges)


def test_diagonals_partition_pairs():
    """Test that each pair without node n-2 lies in exactly one diagonal set."""
    n = 11
    seen = {}
    for m, edges in enumerate(parity_family(n, FamilyTag.D).sets):
        for edge in edges:
            if edge != (10, 9):
                assert edge not in seen
                seen[edge] = m
    assert len(seen) == (n - 1) * n // 2


def test_loop_params_golden():
    """Test the loop bounds for n=11 and failed nodes 3 and 5."""
    params = loop_params(11, 3, 5)
    assert params.d == 2
    assert params.a == 6
    assert (params.x, params.y) == (4, 5)
    assert (params.x_prime, params.y_prime) == (5, 4)
    assert params.A == {7, 5, 3, 1, 10}
    assert params.B == {0, 2, 4, 6, 8, 10}
    assert params.A_prime == {8, 6, 4, 2, 0, 9}
    assert params.B_prime == {1, 3, 5, 7, 9}


@pytest.mark.parametrize("i,j", [(5, 3), (3, 3), (3, 9), (-1, 2)])
def test_loop_params_rejects_bad_nodes(i, j):
    """Test that i < j must both lie among the first n-2 nodes."""
    with pytest.raises(InvalidParametersError):
        loop_params(11, i, j)
