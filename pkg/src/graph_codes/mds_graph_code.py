"""Node-erasure codes built directly from one Reed-Solomon code.

``RowColumnCode`` protects the first n-rho columns and every row of the
adjacency matrix with the same MDS code. ``FlatMdsCode`` is the baseline that
treats the whole matrix as one long MDS codeword.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from .base import GraphCode
from .exceptions import DecodingError, InvalidParametersError, NotACodewordError
from .gf2m import Field
from .graph import DirectedGraph, ErasedGraph, Graph
from .linalg import Matrix
from .reed_solomon import MdsCode, mds_encode_systematic, mds_erasure_decode, rs_make

logger = logging.getLogger(__name__)


def _require_info(info: np.ndarray, shape: Tuple[int, int], field: Field) -> np.ndarray:
    info = np.asarray(info, dtype=np.int64)
    if info.shape != shape:
        raise InvalidParametersError(f"information block must be {shape[0]}x{shape[1]}, got {info.shape}")
    if info.size and (info.min() < 0 or info.max() >= field.order):
        raise InvalidParametersError(f"information symbols must lie in GF(2^{field.m})")
    return info


class RowColumnCode(GraphCode):
    """Every row and the first n-rho columns are codewords of one [n, n-rho] MDS code.

    Information sits verbatim in the top-left (n-rho) x (n-rho) block.
    """

    name = "c1"

    def __init__(self, n: int, rho: int):
        if not 1 <= rho < n:
            raise InvalidParametersError(f"need 1 <= rho < n, got n={n}, rho={rho}")
        self.mds: MdsCode = rs_make(n, rho)
        super().__init__(n, rho, self.mds.field, directed=True)
        logger.info("Built c1 code n=%d rho=%d over GF(2^%d)", n, rho, self.field.m)

    @property
    def k(self) -> int:
        return (self.n - self.rho) ** 2

    @property
    def info_shape(self) -> Tuple[int, int]:
        side = self.n - self.rho
        return (side, side)

    def encode(self, info: np.ndarray) -> DirectedGraph:
        """Encode the first n-rho columns, then every row."""
        info = _require_info(info, self.info_shape, self.field)
        side = self.n - self.rho
        labels = np.zeros((self.n, self.n), dtype=np.int64)
        labels[:side, :side] = info
        for m in range(side):
            labels[:, m] = mds_encode_systematic(self.mds, labels[:side, m])
        for row in range(self.n):
            labels[row, :] = mds_encode_systematic(self.mds, labels[row, :side])
        return DirectedGraph(self.field, labels)

    def info_of(self, graph: Graph) -> np.ndarray:
        side = self.n - self.rho
        return graph.matrix()[:side, :side].copy()

    def _build_parity_check(self) -> Matrix:
        h = self.mds.parity_check.data
        n = self.n
        blocks: List[np.ndarray] = []
        for m in range(n - self.rho):
            block = np.zeros((h.shape[0], n * n), dtype=np.int64)
            block[:, np.arange(n) * n + m] = h
            blocks.append(block)
        for row in range(n):
            block = np.zeros((h.shape[0], n * n), dtype=np.int64)
            block[:, row * n + np.arange(n)] = h
            blocks.append(block)
        return Matrix(self.field, np.vstack(blocks))

    def _decode_line(self, labels: np.ndarray, known: np.ndarray, index: Tuple) -> None:
        if known[index].all():
            return
        labels[index] = mds_erasure_decode(self.mds, labels[index], known[index])
        known[index] = True

    def decode(self, erased: ErasedGraph, failed: Sequence[int]) -> DirectedGraph:
        """Surviving rows first, then the first n-rho columns, then the failed rows.

        Raises:
            ErasureBudgetExceededError: If more than rho nodes failed
            ErasurePatternError: If the Unknown cells are not those node failures
            NotACodewordError: If the Known labels fit no codeword
        """
        nodes = self._require_failures(erased, failed)
        labels = erased.labels.copy()
        known = erased.known.copy()
        survivors = [row for row in range(self.n) if row not in nodes]
        try:
            for row in survivors:
                self._decode_line(labels, known, (row, slice(None)))
            for m in range(self.n - self.rho):
                self._decode_line(labels, known, (slice(None), m))
            for row in nodes:
                self._decode_line(labels, known, (row, slice(None)))
        except DecodingError as e:
            raise NotACodewordError(f"c1 decode failed: {e}") from e
        logger.debug("c1 recovered nodes %s on n=%d", list(nodes), self.n)
        result = DirectedGraph(self.field, labels)
        if not self.check(result):
            raise NotACodewordError("recovered graph violates the c1 constraints")
        return result


class FlatMdsCode(GraphCode):
    """One [n^2, (n-rho)^2] MDS code over the whole adjacency matrix.

    Code positions list the top-left (n-rho) x (n-rho) cells first, so they
    carry the information, followed by the remaining cells in row-major order.
    """

    name = "flat"

    def __init__(self, n: int, rho: int):
        if not 1 <= rho < n:
            raise InvalidParametersError(f"need 1 <= rho < n, got n={n}, rho={rho}")
        self.mds: MdsCode = rs_make(n * n, 2 * n * rho - rho * rho)
        super().__init__(n, rho, self.mds.field, directed=True)
        side = n - rho
        head = [i * n + j for i in range(side) for j in range(side)]
        head_set = set(head)
        tail = [cell for cell in range(n * n) if cell not in head_set]
        self.positions = np.array(head + tail, dtype=np.int64)
        logger.info("Built flat code n=%d rho=%d over GF(2^%d)", n, rho, self.field.m)

    @property
    def k(self) -> int:
        return (self.n - self.rho) ** 2

    @property
    def info_shape(self) -> Tuple[int, int]:
        side = self.n - self.rho
        return (side, side)

    def encode(self, info: np.ndarray) -> DirectedGraph:
        info = _require_info(info, self.info_shape, self.field)
        codeword = mds_encode_systematic(self.mds, info.reshape(-1))
        cells = np.zeros(self.n * self.n, dtype=np.int64)
        cells[self.positions] = codeword
        return DirectedGraph(self.field, cells.reshape(self.n, self.n))

    def info_of(self, graph: Graph) -> np.ndarray:
        side = self.n - self.rho
        return graph.matrix()[:side, :side].copy()

    def _build_parity_check(self) -> Matrix:
        h = self.mds.parity_check.data
        data = np.zeros_like(h)
        data[:, self.positions] = h
        return Matrix(self.field, data)

    def decode(self, erased: ErasedGraph, failed: Sequence[int]) -> DirectedGraph:
        self._require_failures(erased, failed)
        word, known = erased.vector()
        try:
            codeword = mds_erasure_decode(self.mds, word[self.positions], known[self.positions])
        except DecodingError as e:
            raise NotACodewordError(f"flat decode failed: {e}") from e
        cells = np.zeros(self.n * self.n, dtype=np.int64)
        cells[self.positions] = codeword
        result = DirectedGraph(self.field, cells.reshape(self.n, self.n))
        if not np.array_equal(result.labels[erased.known], erased.labels[erased.known]):
            raise NotACodewordError("recovered graph disagrees with the Known labels")
        return result


def flat_make(n: int, rho: int) -> FlatMdsCode:
    return FlatMdsCode(n, rho)
