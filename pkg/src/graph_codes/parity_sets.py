"""Neighborhood, diagonal and failure edge sets of the double-erasure codes.

Undirected families (S, D, S', D') hold canonical pairs ``(max, min)``.
Directed families orient those pairs: down families use ``(max, min)`` and
up families ``(min, max)``. The special edge between the two redundancy
nodes belongs to every diagonal set.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Tuple

from .exceptions import InvalidParametersError
from .graph import Edge, EdgeSet, Orientation, canonical_pair, make_edge_set, orient_edge


class FamilyTag(str, Enum):
    S = "S"
    D = "D"
    S_PRIME = "S'"
    D_PRIME = "D'"
    S_DOWN = "S_down"
    S_UP = "S_up"
    D_DOWN = "D_down"
    D_UP = "D_up"
    F_DOWN = "F_down"
    F_UP = "F_up"


@dataclass(frozen=True)
class ParityFamily:
    """An indexed collection of edge sets; ``sets[h]`` is the set with index h."""

    n: int
    tag: FamilyTag
    sets: Tuple[EdgeSet, ...]

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, index: int) -> EdgeSet:
        return self.sets[index]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


def require_prime(n: int) -> None:
    """Raises InvalidParametersError unless n is a prime >= 5."""
    if n < 5 or not is_prime(n):
        raise InvalidParametersError(f"n must be prime ≥ 5, got {n}")


def special_edge(n: int, direction: Orientation) -> Edge:
    """The edge between the two redundancy nodes n-1 and n-2."""
    return orient_edge((n - 1, n - 2), direction)


def _neighborhood_sets(n: int, skip: int) -> Tuple[EdgeSet, ...]:
    """S (skip = n-1) or S' (skip = n-2); the last set holds the self loops."""
    nodes = [ell for ell in range(n) if ell != skip]
    sets = [make_edge_set({canonical_pair(h, ell) for ell in nodes}) for h in range(n - 2)]
    sets.append(make_edge_set((ell, ell) for ell in nodes))
    return tuple(sets)


def _diagonal_sets(n: int, skip: int) -> Tuple[EdgeSet, ...]:
    """D (skip = n-2) or D' (skip = n-1), each with the special edge added."""
    nodes = [ell for ell in range(n) if ell != skip]
    special = special_edge(n, Orientation.DOWN)
    sets = []
    for m in range(n):
        pairs = {canonical_pair(k, ell) for k in nodes for ell in nodes if (k + ell) % n == m}
        pairs.add(special)
        sets.append(make_edge_set(pairs))
    return tuple(sets)


def _failure_pairs(n: int) -> Tuple[EdgeSet, ...]:
    return tuple(make_edge_set({canonical_pair(t, ell) for ell in range(n)}) for t in range(n))


def _orient(sets: Tuple[EdgeSet, ...], direction: Orientation) -> Tuple[EdgeSet, ...]:
    return tuple(make_edge_set({orient_edge(e, direction) for e in edges}) for edges in sets)


@lru_cache(maxsize=None)
def parity_family(n: int, tag: FamilyTag) -> ParityFamily:
    """Build one family of edge sets for prime n >= 5.

    Index ranges: S and S' have n-1 sets, D, D', F have n, and the directed
    neighborhood families S_down and S_up have n-2 (no self-loop set).
    """
    require_prime(n)
    tag = FamilyTag(tag)
    builders = {
        FamilyTag.S: lambda: _neighborhood_sets(n, n - 1),
        FamilyTag.S_PRIME: lambda: _neighborhood_sets(n, n - 2),
        FamilyTag.D: lambda: _diagonal_sets(n, n - 2),
        FamilyTag.D_PRIME: lambda: _diagonal_sets(n, n - 1),
        FamilyTag.S_DOWN: lambda: _orient(_neighborhood_sets(n, n - 1)[: n - 2], Orientation.DOWN),
        FamilyTag.S_UP: lambda: _orient(_neighborhood_sets(n, n - 2)[: n - 2], Orientation.UP),
        FamilyTag.D_DOWN: lambda: _orient(_diagonal_sets(n, n - 2), Orientation.DOWN),
        FamilyTag.D_UP: lambda: _orient(_diagonal_sets(n, n - 1), Orientation.UP),
        FamilyTag.F_DOWN: lambda: _orient(_failure_pairs(n), Orientation.DOWN),
        FamilyTag.F_UP: lambda: _orient(_failure_pairs(n), Orientation.UP),
    }
    return ParityFamily(n, tag, builders[tag]())


@dataclass(frozen=True)
class LoopParams:
    """Step size and loop bounds for failed nodes i < j.

    ``a`` is the inverse of d modulo n. The sets hold the s1 values visited by
    the four decoding loops.
    """

    n: int
    i: int
    j: int
    d: int
    a: int
    x: int
    y: int
    x_prime: int
    y_prime: int
    A: FrozenSet[int]
    B: FrozenSet[int]
    A_prime: FrozenSet[int]
    B_prime: FrozenSet[int]


def loop_s1(n: int, d: int, sign: int, offset: int, t: int) -> int:
    """s1 at iteration t: <sign*d*(t+1) - offset> mod n."""
    return (sign * d * (t + 1) - offset) % n


def loop_params(n: int, i: int, j: int) -> LoopParams:
    require_prime(n)
    if not (0 <= i < n - 2 and 0 <= j < n - 2):
        raise InvalidParametersError(f"failed nodes must lie in [0, {n - 2}), got {i}, {j}")
    if i >= j:
        raise InvalidParametersError(f"need i < j, got i={i}, j={j}")
    d = (j - i) % n
    a = pow(d, -1, n)
    x = (-1 - a) % n
    y = (-1 + a) % n
    x_prime, y_prime = y, x

    def visited(sign: int, offset: int, last: int) -> FrozenSet[int]:
        return frozenset(loop_s1(n, d, sign, offset, t) for t in range(last + 1))

    return LoopParams(
        n, i, j, d, a, x, y, x_prime, y_prime,
        A=visited(-1, 2, x),
        B=visited(1, 2, y),
        A_prime=visited(-1, 1, x_prime),
        B_prime=visited(1, 1, y_prime),
    )
