"""Complete labeled graphs, node failures and edge bookkeeping.

Adjacency convention: ``labels[i][j] = L(v_i, v_j)``, so row i of the matrix is
the out-neighborhood of node i and column i its in-neighborhood. An unordered
pair is stored canonically as ``(max, min)``, a lower-triangle cell.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .exceptions import ErasurePatternError, InvalidParametersError
from .gf2m import Field

Edge = Tuple[int, int]
EdgeSet = Tuple[Edge, ...]


class Orientation(str, Enum):
    """Direction given to an unordered pair."""

    DOWN = "down"
    UP = "up"


def orient_edge(pair: Edge, direction: Orientation) -> Edge:
    """Direct a pair from the larger index to the smaller (down) or the reverse (up)."""
    i, j = pair
    if Orientation(direction) is Orientation.DOWN:
        return (max(i, j), min(i, j))
    return (min(i, j), max(i, j))


def canonical_pair(i: int, j: int) -> Edge:
    return (max(i, j), min(i, j))


def make_edge_set(edges: Iterable[Edge]) -> EdgeSet:
    """Sort edges lexicographically, rejecting duplicates."""
    ordered = sorted(edges)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise InvalidParametersError(f"duplicate edge {a}")
    return tuple(ordered)


def pair_index(i: int, j: int) -> int:
    """Position of the unordered pair in the packed lower triangle."""
    hi, lo = max(i, j), min(i, j)
    return hi * (hi + 1) // 2 + lo


def pair_count(n: int) -> int:
    return n * (n + 1) // 2


def coordinate_count(n: int, directed: bool) -> int:
    return n * n if directed else pair_count(n)


def cell_index(n: int, edge: Edge, directed: bool) -> int:
    i, j = edge
    return i * n + j if directed else pair_index(i, j)


def _check_node(n: int, i: int) -> None:
    if not 0 <= i < n:
        raise InvalidParametersError(f"node index {i} out of range for n={n}")


def _check_labels(field: Field, labels: np.ndarray) -> None:
    if labels.size and (labels.min() < 0 or labels.max() >= field.order):
        raise InvalidParametersError(f"labels must lie in GF(2^{field.m})")


def _frozen(array: np.ndarray, dtype: type = np.int64) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """A complete directed graph with self loops."""

    field: Field
    labels: np.ndarray

    directed = True

    def __post_init__(self) -> None:
        labels = _frozen(self.labels)
        if labels.ndim != 2 or labels.shape[0] != labels.shape[1]:
            raise InvalidParametersError(f"adjacency matrix must be square, got {labels.shape}")
        _check_labels(self.field, labels)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def zeros(cls, field: Field, n: int) -> "DirectedGraph":
        return cls(field, np.zeros((n, n), dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    def label(self, i: int, j: int) -> int:
        return int(self.labels[i, j])

    def matrix(self) -> np.ndarray:
        return self.labels.copy()

    def vector(self) -> np.ndarray:
        return self.labels.reshape(-1).copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash((self.field, self.labels.tobytes()))


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """A complete undirected graph with self loops, one label per unordered pair."""

    field: Field
    n: int
    packed: np.ndarray

    directed = False

    def __post_init__(self) -> None:
        packed = _frozen(self.packed)
        if packed.shape != (pair_count(self.n),):
            raise InvalidParametersError(
                f"undirected graph on {self.n} nodes needs {pair_count(self.n)} labels"
            )
        _check_labels(self.field, packed)
        object.__setattr__(self, "packed", packed)

    @classmethod
    def zeros(cls, field: Field, n: int) -> "UndirectedGraph":
        return cls(field, n, np.zeros(pair_count(n), dtype=np.int64))

    @classmethod
    def from_lower(cls, field: Field, matrix: np.ndarray) -> "UndirectedGraph":
        """Build from the entries on and below the diagonal of a square matrix."""
        matrix = np.asarray(matrix, dtype=np.int64)
        n = matrix.shape[0]
        rows, cols = np.tril_indices(n)
        return cls(field, n, matrix[rows, cols])

    @property
    def labels(self) -> np.ndarray:
        """Symmetric n x n adjacency matrix."""
        lower = self.lower_triangle()
        return lower + np.tril(lower, -1).T

    def label(self, i: int, j: int) -> int:
        return int(self.packed[pair_index(i, j)])

    def lower_triangle(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        rows, cols = np.tril_indices(self.n)
        out[rows, cols] = self.packed
        return out

    def upper_triangle(self) -> np.ndarray:
        return self.lower_triangle().T.copy()

    def matrix(self) -> np.ndarray:
        return self.labels

    def vector(self) -> np.ndarray:
        return self.packed.copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.field == other.field and self.n == other.n and np.array_equal(self.packed, other.packed)

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.packed.tobytes()))


Graph = Union[DirectedGraph, UndirectedGraph]


@dataclass(frozen=True, eq=False)
class ErasedGraph:
    """A graph whose cells are each Known or Unknown.

    Undirected graphs keep symmetric ``labels`` and ``known`` matrices.
    Unknown cells hold 0 in ``labels``.
    """

    field: Field
    labels: np.ndarray
    known: np.ndarray
    directed: bool = True

    def __post_init__(self) -> None:
        known = _frozen(self.known, bool)
        raw = np.asarray(self.labels, dtype=np.int64)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or known.shape != raw.shape:
            raise InvalidParametersError("labels and known mask must be equal square matrices")
        labels = _frozen(np.where(known, raw, 0))
        if not self.directed and (
            not np.array_equal(labels, labels.T) or not np.array_equal(known, known.T)
        ):
            raise InvalidParametersError("undirected erased graph must be symmetric")
        _check_labels(self.field, labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "known", known)

    @classmethod
    def from_graph(cls, graph: Graph) -> "ErasedGraph":
        """A fully Known copy of a graph."""
        labels = graph.matrix()
        return cls(graph.field, labels, np.ones(labels.shape, dtype=bool), graph.directed)

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    def is_known(self, i: int, j: int) -> bool:
        return bool(self.known[i, j])

    def unknown_cells(self) -> List[Edge]:
        """Unknown cells in lexicographic order; canonical pairs when undirected."""
        rows, cols = np.nonzero(~self.known)
        cells = [(int(i), int(j)) for i, j in zip(rows, cols)]
        if not self.directed:
            cells = [c for c in cells if c[0] >= c[1]]
        return cells

    def unknown_count(self) -> int:
        return len(self.unknown_cells())

    def vector(self) -> Tuple[np.ndarray, np.ndarray]:
        """Coordinate vector and Known mask in the graph's coordinate order."""
        if self.directed:
            return self.labels.reshape(-1).copy(), self.known.reshape(-1).copy()
        rows, cols = np.tril_indices(self.n)
        return self.labels[rows, cols].copy(), self.known[rows, cols].copy()

    def to_graph(self) -> Graph:
        """The graph itself, once every cell is Known."""
        if not self.known.all():
            raise ErasurePatternError(f"{self.unknown_count()} cells are still Unknown")
        return graph_from_matrix(self.field, self.labels, self.directed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ErasedGraph):
            return NotImplemented
        return (
            self.field == other.field
            and self.directed == other.directed
            and np.array_equal(self.known, other.known)
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.directed, self.known.tobytes(), self.labels.tobytes()))


def graph_from_matrix(field: Field, matrix: np.ndarray, directed: bool) -> Graph:
    if directed:
        return DirectedGraph(field, matrix)
    return UndirectedGraph.from_lower(field, matrix)


def graph_from_vector(field: Field, n: int, vector: np.ndarray, directed: bool) -> Graph:
    """Inverse of ``Graph.vector``."""
    vector = np.asarray(vector, dtype=np.int64)
    if directed:
        return DirectedGraph(field, vector.reshape(n, n))
    return UndirectedGraph(field, n, vector)


@dataclass(frozen=True)
class Neighborhoods:
    out: EdgeSet
    inward: EdgeSet
    all: EdgeSet


def out_neighborhood(n: int, i: int) -> EdgeSet:
    _check_node(n, i)
    return tuple((i, j) for j in range(n))


def in_neighborhood(n: int, i: int) -> EdgeSet:
    _check_node(n, i)
    return tuple((j, i) for j in range(n))


def neighborhoods(graph: Union[Graph, ErasedGraph], i: int) -> Neighborhoods:
    """Out-, in- and full neighborhood of node i (row i, column i, their union)."""
    n = graph.n
    out = out_neighborhood(n, i)
    inward = in_neighborhood(n, i)
    return Neighborhoods(out, inward, make_edge_set(set(out) | set(inward)))


def failure_cells(n: int, nodes: Iterable[int]) -> EdgeSet:
    """Union of the neighborhoods of the given nodes, as directed cells."""
    cells = set()
    for t in nodes:
        cells.update(out_neighborhood(n, t))
        cells.update(in_neighborhood(n, t))
    return make_edge_set(cells)


def failure_pairs(n: int, t: int) -> EdgeSet:
    """Unordered pairs incident to node t, in canonical form."""
    _check_node(n, t)
    return make_edge_set(canonical_pair(t, ell) for ell in range(n))


def node_failure_mask(n: int, nodes: Sequence[int]) -> np.ndarray:
    """Known mask after the given nodes fail."""
    for t in nodes:
        _check_node(n, t)
    known = np.ones((n, n), dtype=bool)
    index = np.asarray(sorted(set(nodes)), dtype=np.int64)
    known[index, :] = False
    known[:, index] = False
    return known


def erase_nodes(graph: Graph, nodes: Iterable[int]) -> ErasedGraph:
    """Mark every cell in the neighborhood of each failed node Unknown."""
    failed = sorted(set(nodes))
    known = node_failure_mask(graph.n, failed)
    return ErasedGraph(graph.field, graph.matrix(), known, graph.directed)


def require_node_erasure(erased: ErasedGraph, nodes: Iterable[int]) -> None:
    """Check that the Unknown cells are exactly the failure sets of the nodes.

    Raises:
        ErasurePatternError: If any cell disagrees with the declared failures
    """
    failed = sorted(set(nodes))
    for t in failed:
        if not 0 <= t < erased.n:
            raise ErasurePatternError(f"failed node {t} out of range for n={erased.n}")
    expected = node_failure_mask(erased.n, failed)
    if not np.array_equal(expected, erased.known):
        mismatched = int(np.count_nonzero(expected != erased.known))
        raise ErasurePatternError(
            f"{mismatched} cells disagree with the failure of nodes {failed}"
        )


def edge_vector(graph: Union[Graph, ErasedGraph], edges: Iterable[Edge]) -> np.ndarray:
    """Labels of the edges in lexicographic order."""
    ordered = make_edge_set(edges)
    if isinstance(graph, UndirectedGraph):
        return np.array([graph.label(i, j) for i, j in ordered], dtype=np.int64)
    return np.array([int(graph.labels[i, j]) for i, j in ordered], dtype=np.int64)
