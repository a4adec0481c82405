"""Linear algebra over GF(2) and GF(2^m).

GF(2) matrices are eliminated as Python-int bit rows; GF(2^m) matrices are
eliminated densely with vectorised field products. Both paths pivot on the
first nonzero entry in column order, so results are reproducible.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import InconsistentSystemError, InvalidParametersError, NotUniquelyDecodableError
from .gf2m import Field

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Matrix:
    """A dense matrix over a binary extension field."""

    field: Field
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise InvalidParametersError(f"matrix data must be 2-D, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= self.field.order):
            raise InvalidParametersError(f"matrix entries must lie in GF(2^{self.field.m})")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, size: int) -> "Matrix":
        return cls(field, np.eye(size, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], cols: int = 0) -> "Matrix":
        if len(rows) == 0:
            return cls.zeros(field, 0, cols)
        return cls(field, np.array(rows, dtype=np.int64))

    def columns(self, index: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.data[:, np.asarray(index, dtype=np.int64)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))


@dataclass(frozen=True)
class RowReduction:
    """Reduced row echelon form together with its pivot columns."""

    reduced: np.ndarray
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _pack_rows(data: np.ndarray) -> List[int]:
    packed = np.packbits(data.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _unpack_rows(rows: List[int], cols: int) -> np.ndarray:
    width = max(1, (cols + 7) // 8)
    out = np.zeros((len(rows), cols), dtype=np.int64)
    for k, value in enumerate(rows):
        raw = np.frombuffer(value.to_bytes(width, "little"), dtype=np.uint8)
        out[k] = np.unpackbits(raw, bitorder="little")[:cols]
    return out


def _reduce_gf2(data: np.ndarray, limit: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    n_rows, n_cols = data.shape
    work = _pack_rows(data)
    pivots = []
    r = 0
    for col in range(limit):
        if r == n_rows:
            break
        bit = 1 << col
        pivot = next((k for k in range(r, n_rows) if work[k] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pivot_row = work[r]
        for k in range(n_rows):
            if k != r and work[k] & bit:
                work[k] ^= pivot_row
        pivots.append(col)
        r += 1
    return _unpack_rows(work, n_cols), tuple(pivots)


def _reduce_dense(field: Field, data: np.ndarray, limit: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    work = np.array(data, dtype=np.int64, copy=True)
    n_rows = work.shape[0]
    pivots = []
    r = 0
    for col in range(limit):
        if r == n_rows:
            break
        nonzero = np.flatnonzero(work[r:, col])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            work[[r, pivot]] = work[[pivot, r]]
        lead = int(work[r, col])
        if lead != 1:
            work[r] = field.mul_array(work[r], field.inv(lead))
        factors = work[:, col].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            work[hit] ^= field.mul_array(factors[hit, None], work[r][None, :])
        pivots.append(col)
        r += 1
    return work, tuple(pivots)


def _reduce(field: Field, data: np.ndarray, limit: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    if data.shape[0] == 0 or data.shape[1] == 0:
        return np.array(data, dtype=np.int64, copy=True), ()
    if field.is_binary:
        return _reduce_gf2(data, limit)
    return _reduce_dense(field, data, limit)


def rref(matrix: Matrix) -> RowReduction:
    """Reduced row echelon form over the matrix's field."""
    reduced, pivots = _reduce(matrix.field, matrix.data, matrix.cols)
    return RowReduction(reduced, pivots)


def rank(matrix: Matrix) -> int:
    return rref(matrix).rank


def nullspace_dim(matrix: Matrix) -> int:
    return matrix.cols - rank(matrix)


def nullspace_basis(matrix: Matrix) -> Matrix:
    """Rows form a basis of {x : M x = 0}."""
    reduction = rref(matrix)
    pivot_set = set(reduction.pivots)
    free = [c for c in range(matrix.cols) if c not in pivot_set]
    basis = np.zeros((len(free), matrix.cols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for k, pivot_col in enumerate(reduction.pivots):
            # characteristic 2: -a == a
            basis[row, pivot_col] = reduction.reduced[k, f]
    return Matrix(matrix.field, basis)


def transpose(matrix: Matrix) -> Matrix:
    return Matrix(matrix.field, matrix.data.T)


def matvec(matrix: Matrix, vector: np.ndarray) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.int64)
    if vector.shape != (matrix.cols,):
        raise InvalidParametersError(f"vector length {vector.shape} does not match {matrix.cols} columns")
    if matrix.cols == 0:
        return np.zeros(matrix.rows, dtype=np.int64)
    products = matrix.field.mul_array(matrix.data, vector[None, :])
    return np.bitwise_xor.reduce(products, axis=1).astype(np.int64)


def matmul(left: Matrix, right: Matrix) -> Matrix:
    if left.cols != right.rows:
        raise InvalidParametersError(f"cannot multiply {left.rows}x{left.cols} by {right.rows}x{right.cols}")
    if left.cols == 0:
        return Matrix.zeros(left.field, left.rows, right.cols)
    products = left.field.mul_array(left.data[:, :, None], right.data[None, :, :])
    return Matrix(left.field, np.bitwise_xor.reduce(products, axis=1))


def solve_unique(matrix: Matrix, rhs: np.ndarray) -> np.ndarray:
    """Solve A x = b when the solution is unique.

    Args:
        matrix: Coefficient matrix A
        rhs: Right-hand side b, one entry per row of A

    Returns:
        The unique solution x

    Raises:
        NotUniquelyDecodableError: If A does not have full column rank
        InconsistentSystemError: If no x satisfies the system
    """
    rhs = np.asarray(rhs, dtype=np.int64)
    if rhs.shape != (matrix.rows,):
        raise InvalidParametersError(f"right-hand side length {rhs.shape} does not match {matrix.rows} rows")
    augmented = np.hstack([matrix.data, rhs[:, None]])
    reduced, pivots = _reduce(matrix.field, augmented, matrix.cols)
    if len(pivots) < matrix.cols:
        raise NotUniquelyDecodableError(
            f"system has rank {len(pivots)} but {matrix.cols} unknowns"
        )
    if np.any(reduced[len(pivots):, -1]):
        raise InconsistentSystemError("no solution")
    return reduced[: matrix.cols, -1].copy()


def inverse(matrix: Matrix) -> Matrix:
    if matrix.rows != matrix.cols:
        raise InvalidParametersError("only square matrices are invertible")
    size = matrix.rows
    augmented = np.hstack([matrix.data, np.eye(size, dtype=np.int64)])
    reduced, pivots = _reduce(matrix.field, augmented, size)
    if len(pivots) < size:
        raise NotUniquelyDecodableError("matrix is singular")
    return Matrix(matrix.field, reduced[:, size:])


def solve_erasures(parity_check: Matrix, word: np.ndarray, known: np.ndarray) -> np.ndarray:
    """Complete a word with H word = 0 from its Known coordinates.

    Args:
        parity_check: H, one column per coordinate
        word: Coordinate values; entries at Unknown positions are ignored
        known: Boolean mask of Known coordinates

    Returns:
        A copy of word with the Unknown coordinates filled in
    """
    word = np.asarray(word, dtype=np.int64)
    known = np.asarray(known, dtype=bool)
    unknown_idx = np.flatnonzero(~known)
    known_idx = np.flatnonzero(known)
    completed = word.copy()
    completed[unknown_idx] = 0
    if unknown_idx.size == 0:
        if np.any(matvec(parity_check, completed)):
            raise InconsistentSystemError("no solution")
        return completed
    syndrome = matvec(parity_check.columns(known_idx), completed[known_idx])
    completed[unknown_idx] = solve_unique(parity_check.columns(unknown_idx), syndrome)
    logger.debug("Solved %d erased coordinates against %d checks", unknown_idx.size, parity_check.rows)
    return completed
