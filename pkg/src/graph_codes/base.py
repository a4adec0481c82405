"""Common interface shared by every code over graphs."""

import logging
from abc import ABC, abstractmethod
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np

from .exceptions import (
    ErasureBudgetExceededError,
    InconsistentSystemError,
    InvalidParametersError,
    NotACodewordError,
)
from .gf2m import Field
from .graph import (
    EdgeSet,
    ErasedGraph,
    Graph,
    cell_index,
    coordinate_count,
    graph_from_vector,
    require_node_erasure,
)
from .linalg import Matrix, matvec, solve_erasures

logger = logging.getLogger(__name__)


def redundancy_bound(n: int, rho: int, directed: bool = True) -> int:
    """Fewest redundancy symbols any rho-node-erasure-correcting code can have.

    Directed graphs: n^2 - (n-rho)^2 = 2*n*rho - rho^2. Undirected graphs
    count unordered pairs with self loops instead.
    """
    if directed:
        return 2 * n * rho - rho * rho
    return n * (n + 1) // 2 - (n - rho) * (n - rho + 1) // 2


def edge_sets_matrix(field: Field, n: int, sets: Iterable[EdgeSet], directed: bool) -> Matrix:
    """One all-ones parity row per edge set, over the graph's coordinates."""
    sets = list(sets)
    data = np.zeros((len(sets), coordinate_count(n, directed)), dtype=np.int64)
    for row, edges in enumerate(sets):
        for edge in edges:
            data[row, cell_index(n, edge, directed)] = 1
    return Matrix(field, data)


class GraphCode(ABC):
    """A linear rho-node-erasure-correcting code over complete graphs."""

    name = "abstract"

    def __init__(self, n: int, rho: int, field: Field, directed: bool = True):
        self.n = n
        self.rho = rho
        self.field = field
        self.directed = directed

    @property
    @abstractmethod
    def k(self) -> int:
        """Number of information symbols."""

    @property
    @abstractmethod
    def info_shape(self) -> Tuple[int, int]:
        """Shape of the information block accepted by ``encode``."""

    @abstractmethod
    def encode(self, info: np.ndarray) -> Graph:
        """Systematically encode an information block."""

    @abstractmethod
    def decode(self, erased: ErasedGraph, failed: Sequence[int]) -> Graph:
        """Recover the codeword after the listed nodes failed."""

    @abstractmethod
    def info_of(self, graph: Graph) -> np.ndarray:
        """Read the information block back out of a codeword."""

    @abstractmethod
    def _build_parity_check(self) -> Matrix:
        """Parity-check matrix over the coordinate vector of a graph."""

    @cached_property
    def parity_check(self) -> Matrix:
        return self._build_parity_check()

    @property
    def coordinates(self) -> int:
        return coordinate_count(self.n, self.directed)

    @property
    def redundancy(self) -> int:
        return self.coordinates - self.k

    @property
    def bound(self) -> int:
        return redundancy_bound(self.n, self.rho, self.directed)

    @property
    def optimal(self) -> bool:
        return self.redundancy == self.bound

    @property
    def rate(self) -> float:
        return self.k / self.coordinates

    def check(self, graph: Graph) -> bool:
        """True iff every constraint of the code holds."""
        if graph.n != self.n or graph.directed != self.directed or graph.field != self.field:
            return False
        return not np.any(matvec(self.parity_check, graph.vector()))

    def random_info(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.field.order, size=self.info_shape, dtype=np.int64)

    def _require_failures(self, erased: ErasedGraph, failed: Sequence[int]) -> Tuple[int, ...]:
        if erased.n != self.n or erased.directed != self.directed or erased.field != self.field:
            raise InvalidParametersError(
                f"{self.name} expects {'' if self.directed else 'un'}directed graphs on "
                f"{self.n} nodes over {self.field.tag}"
            )
        nodes = tuple(sorted(set(failed)))
        if len(nodes) > self.rho:
            raise ErasureBudgetExceededError(
                f"{len(nodes)} failed nodes exceed the budget of {self.rho}"
            )
        require_node_erasure(erased, nodes)
        return nodes

    def solve_by_constraints(self, erased: ErasedGraph) -> Graph:
        """Complete any erasure pattern by solving the full parity-check system."""
        word, known = erased.vector()
        try:
            completed = solve_erasures(self.parity_check, word, known)
        except InconsistentSystemError as e:
            raise NotACodewordError("known labels are not consistent with any codeword") from e
        return graph_from_vector(self.field, self.n, completed, self.directed)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, rho={self.rho}, field=GF(2^{self.field.m}))"
