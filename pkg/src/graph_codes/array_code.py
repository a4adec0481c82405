"""Binary crisscross array codes and the graph code they induce.

The array code is a Gabidulin (maximum rank distance) code: an n x n binary
matrix M is read as the vector (beta_0, ..., beta_{n-1}) over GF(2^n), with
beta_j = sum_i M[i][j] x^i, and is a codeword when

    sum_j frob(x^j, r) * beta_j = 0    for r in [2*rho].

Every nonzero codeword has matrix rank at least 2*rho + 1, so its support
cannot be covered by 2*rho rows and columns.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .base import GraphCode
from .exceptions import (
    CoverWeightMismatchError,
    EncodingError,
    ErasureBudgetExceededError,
    InconsistentSystemError,
    InvalidParametersError,
    NotACodewordError,
    NotUniquelyDecodableError,
)
from .gf2m import GF2, MAX_DEGREE, field_make
from .graph import DirectedGraph, ErasedGraph, Graph, graph_from_vector
from .linalg import Matrix, inverse, matvec, nullspace_basis, rank, solve_erasures

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_SIDE = 6


@dataclass(frozen=True)
class Cover:
    """Rows S and columns T whose union contains every nonzero entry."""

    rows: FrozenSet[int]
    cols: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.rows) + len(self.cols)

    def covers(self, matrix: np.ndarray) -> bool:
        nz_rows, nz_cols = np.nonzero(matrix)
        return all(i in self.rows or j in self.cols for i, j in zip(nz_rows, nz_cols))


def _support(matrix: np.ndarray) -> np.ndarray:
    support = np.asarray(matrix) != 0
    if support.ndim != 2 or support.shape[0] != support.shape[1]:
        raise InvalidParametersError(f"cover weight needs a square matrix, got {support.shape}")
    return support


def _max_matching(support: np.ndarray) -> List[Optional[int]]:
    """Kuhn's augmenting paths; entry j is the row matched to column j."""
    n_rows, n_cols = support.shape
    match_col: List[Optional[int]] = [None] * n_cols

    def augment(row: int, seen: List[bool]) -> bool:
        for col in np.flatnonzero(support[row]):
            col = int(col)
            if seen[col]:
                continue
            seen[col] = True
            owner = match_col[col]
            if owner is None or augment(owner, seen):
                match_col[col] = row
                return True
        return False

    for row in range(n_rows):
        augment(row, [False] * n_cols)
    return match_col


def min_cover(matrix: np.ndarray) -> Cover:
    """A minimum cover, read off a maximum matching (Konig's theorem).

    Rows reachable from unmatched rows by alternating paths are left out of
    the cover; columns reachable that way are put in.
    """
    support = _support(matrix)
    n = support.shape[0]
    match_col = _max_matching(support)
    match_row = {row: col for col, row in enumerate(match_col) if row is not None}
    reached_rows = {row for row in range(n) if row not in match_row}
    reached_cols = set()
    frontier = list(reached_rows)
    while frontier:
        row = frontier.pop()
        for col in np.flatnonzero(support[row]):
            col = int(col)
            if col in reached_cols:
                continue
            reached_cols.add(col)
            owner = match_col[col]
            if owner is not None and owner not in reached_rows:
                reached_rows.add(owner)
                frontier.append(owner)
    return Cover(frozenset(set(range(n)) - reached_rows), frozenset(reached_cols))


def cover_weight_bruteforce(matrix: np.ndarray) -> int:
    """Smallest |S| + |T| by trying every row set S."""
    support = _support(matrix)
    n = support.shape[0]
    best = n
    for size in range(n + 1):
        for rows in itertools.combinations(range(n), size):
            rest = np.delete(support, rows, axis=0)
            cols = int(np.count_nonzero(rest.any(axis=0)))
            best = min(best, size + cols)
    return best


def cover_weight(matrix: np.ndarray) -> int:
    """Minimum size of a cover of the matrix's nonzero entries."""
    support = _support(matrix)
    weight = sum(row is not None for row in _max_matching(support))
    if support.shape[0] <= BRUTE_FORCE_MAX_SIDE:
        expected = cover_weight_bruteforce(support)
        if expected != weight:
            raise CoverWeightMismatchError(weight, expected)
    return weight


def matrix_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2) of a binary matrix."""
    return rank(Matrix(GF2, np.asarray(matrix) != 0))


class ArrayCode(GraphCode):
    """Binary graph code whose adjacency matrices are crisscross codewords.

    The top n - 2*rho rows carry information and the bottom 2*rho rows are
    redundancy, so k = n(n - 2*rho) and the redundancy is 2*rho*n.
    """

    name = "c2"

    def __init__(self, n: int, rho: int):
        if rho < 1 or 2 * rho >= n:
            raise InvalidParametersError(f"need 1 <= rho < n/2, got n={n}, rho={rho}")
        if n > MAX_DEGREE:
            raise InvalidParametersError(f"array side {n} needs GF(2^{n}), beyond GF(2^{MAX_DEGREE})")
        super().__init__(n, rho, GF2, directed=True)
        self.extension = field_make(n)
        self.r = 2 * rho
        self._info_idx = np.arange((n - self.r) * n)
        self._redundancy_idx = np.arange((n - self.r) * n, n * n)
        h = self.parity_check
        try:
            self._redundancy_inverse = inverse(h.columns(self._redundancy_idx))
        except NotUniquelyDecodableError as e:
            raise EncodingError("bottom rows are not a redundancy set") from e
        logger.info("Built c2 array code n=%d rho=%d over GF(2^%d)", n, rho, n)

    @property
    def k(self) -> int:
        return self.n * (self.n - self.r)

    @property
    def info_shape(self) -> Tuple[int, int]:
        return (self.n - self.r, self.n)

    def _build_parity_check(self) -> Matrix:
        n, big = self.n, self.extension
        data = np.zeros((self.r * n, n * n), dtype=np.int64)
        for r in range(self.r):
            for j in range(n):
                g = big.frob(1 << j, r)
                for i in range(n):
                    product = big.mul(g, 1 << i)
                    for b in range(n):
                        data[r * n + b, i * n + j] = (product >> b) & 1
        return Matrix(GF2, data)

    def encode(self, info: np.ndarray) -> DirectedGraph:
        info = np.asarray(info, dtype=np.int64)
        if info.shape != self.info_shape:
            raise InvalidParametersError(
                f"information block must be {self.info_shape[0]}x{self.n}, got {info.shape}"
            )
        if info.size and (info.min() < 0 or info.max() > 1):
            raise InvalidParametersError("c2 information must be binary")
        word = np.zeros(self.n * self.n, dtype=np.int64)
        word[self._info_idx] = info.reshape(-1)
        syndrome = matvec(self.parity_check.columns(self._info_idx), word[self._info_idx])
        word[self._redundancy_idx] = matvec(self._redundancy_inverse, syndrome)
        return DirectedGraph(GF2, word.reshape(self.n, self.n))

    def info_of(self, graph: Graph) -> np.ndarray:
        return graph.matrix()[: self.n - self.r, :].copy()

    def solve_erasures(self, erased: ErasedGraph) -> DirectedGraph:
        """Recover any Unknown pattern covered by at most 2*rho rows and columns.

        Raises:
            ErasureBudgetExceededError: If the Unknown cells need a larger cover
            NotACodewordError: If the Known labels fit no codeword
        """
        if erased.n != self.n or not erased.directed or erased.field != GF2:
            raise InvalidParametersError(f"c2 expects binary directed graphs on {self.n} nodes")
        needed = cover_weight(~erased.known)
        if needed > self.r:
            raise ErasureBudgetExceededError(
                f"Unknown cells need a cover of size {needed}, the code covers {self.r}"
            )
        word, known = erased.vector()
        try:
            completed = solve_erasures(self.parity_check, word, known)
        except InconsistentSystemError as e:
            raise NotACodewordError("known labels are not consistent with any codeword") from e
        logger.debug("c2 solved %d Unknown cells", int((~known).sum()))
        return graph_from_vector(GF2, self.n, completed, directed=True)

    def decode(self, erased: ErasedGraph, failed: Sequence[int]) -> DirectedGraph:
        """Node failures erase rho rows and rho columns, a crisscross pattern."""
        self._require_failures(erased, failed)
        return self.solve_erasures(erased)


def gabidulin_make(n: int, rho: int) -> ArrayCode:
    return ArrayCode(n, rho)


def codeword_basis(code: ArrayCode) -> Matrix:
    """Rows span the codewords, each a flattened n x n matrix."""
    return nullspace_basis(code.parity_check)


def _combine(basis: np.ndarray, coefficients: np.ndarray, n: int) -> np.ndarray:
    return (coefficients @ basis % 2).reshape(n, n)


def iter_codewords(code: ArrayCode) -> Iterator[np.ndarray]:
    """Every nonzero codeword as an n x n matrix."""
    basis = codeword_basis(code).data
    for bits in itertools.product((0, 1), repeat=basis.shape[0]):
        coefficients = np.array(bits, dtype=np.int64)
        if coefficients.any():
            yield _combine(basis, coefficients, code.n)


def sample_codewords(code: ArrayCode, rng: np.random.Generator, count: int) -> Iterator[np.ndarray]:
    """Random nonzero codewords."""
    basis = codeword_basis(code).data
    produced = 0
    while produced < count:
        coefficients = rng.integers(0, 2, size=basis.shape[0], dtype=np.int64)
        if not coefficients.any():
            continue
        produced += 1
        yield _combine(basis, coefficients, code.n)
