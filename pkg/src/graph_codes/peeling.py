"""Iterative resolution of XOR constraints with a single Unknown member."""

import logging
from collections import deque
from typing import Deque, Dict, List, Sequence, Set

import numpy as np

from .exceptions import InvalidParametersError, PeelingStalledError
from .gf2m import Field
from .graph import Edge, EdgeSet, ErasedGraph, Graph, graph_from_matrix

logger = logging.getLogger(__name__)


class Workspace:
    """Mutable working copy of an erased graph.

    Cells are directed ``(i, j)`` entries; in undirected graphs a write to
    ``(i, j)`` also fills ``(j, i)``.
    """

    def __init__(self, erased: ErasedGraph):
        self.field: Field = erased.field
        self.directed = erased.directed
        self.labels = erased.labels.copy()
        self.known = erased.known.copy()

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    def is_known(self, cell: Edge) -> bool:
        return bool(self.known[cell])

    def get(self, cell: Edge) -> int:
        if not self.known[cell]:
            raise InvalidParametersError(f"cell {cell} is still Unknown")
        return int(self.labels[cell])

    def set(self, cell: Edge, value: int) -> None:
        i, j = cell
        self.labels[i, j] = value
        self.known[i, j] = True
        if not self.directed:
            self.labels[j, i] = value
            self.known[j, i] = True

    def xor_known(self, edges: EdgeSet, skip: Sequence[Edge] = ()) -> int:
        """XOR of the Known members of a set, leaving out ``skip``."""
        total = 0
        for cell in edges:
            if cell not in skip and self.known[cell]:
                total ^= int(self.labels[cell])
        return total

    def unknown_in(self, edges: EdgeSet) -> List[Edge]:
        return [cell for cell in edges if not self.known[cell]]

    def unknown_cells(self) -> List[Edge]:
        return ErasedGraph(self.field, self.labels, self.known, self.directed).unknown_cells()

    def to_graph(self) -> Graph:
        if not self.known.all():
            raise PeelingStalledError(self.unknown_cells())
        return graph_from_matrix(self.field, self.labels, self.directed)


def peel(workspace: Workspace, constraints: Sequence[EdgeSet]) -> int:
    """Resolve constraints with exactly one Unknown member until none is left.

    Each constraint is a zero-sum set of cells. Returns the number of cells
    filled in; Unknown cells no constraint can reach stay Unknown.
    """
    members: Dict[Edge, List[int]] = {}
    pending: List[int] = []
    for index, edges in enumerate(constraints):
        unknown = workspace.unknown_in(edges)
        pending.append(len(unknown))
        for cell in unknown:
            members.setdefault(cell, []).append(index)

    queue: Deque[int] = deque(index for index, count in enumerate(pending) if count == 1)
    filled = 0
    while queue:
        index = queue.popleft()
        unknown = workspace.unknown_in(constraints[index])
        if len(unknown) != 1:
            continue
        cell = unknown[0]
        workspace.set(cell, workspace.xor_known(constraints[index]))
        filled += 1
        logger.debug("Peeled %s from constraint %d", cell, index)
        touched: Set[int] = set(members.get(cell, ()))
        for other in touched:
            pending[other] -= 1
            if pending[other] == 1:
                queue.append(other)
    return filled


def peel_decode(erased: ErasedGraph, constraints: Sequence[EdgeSet]) -> Graph:
    """Complete an erased graph by peeling alone.

    Raises:
        PeelingStalledError: If Unknown cells remain at the fixpoint
    """
    workspace = Workspace(erased)
    filled = peel(workspace, constraints)
    logger.debug("Peeling filled %d cells", filled)
    return workspace.to_graph()


def constraints_hold(graph: Graph, constraints: Sequence[EdgeSet]) -> bool:
    """True iff every constraint XORs to zero on the graph."""
    labels = graph.matrix()
    for edges in constraints:
        rows = np.fromiter((i for i, _ in edges), dtype=np.int64, count=len(edges))
        cols = np.fromiter((j for _, j in edges), dtype=np.int64, count=len(edges))
        if np.bitwise_xor.reduce(labels[rows, cols], initial=0):
            return False
    return True
