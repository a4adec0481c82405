"""Systematic (singly extended) Reed-Solomon codes with known-position erasure decoding."""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import (
    EncodingError,
    ErasureBudgetExceededError,
    InconsistentSystemError,
    InvalidParametersError,
    NotACodewordError,
    NotUniquelyDecodableError,
)
from .gf2m import MAX_DEGREE, Field, field_make
from .linalg import Matrix, inverse, matmul, matvec, nullspace_basis, rank, solve_unique, transpose

logger = logging.getLogger(__name__)

# Marks the point at infinity in ``MdsCode.eval_points``.
INFINITY: Optional[int] = None


@dataclass(frozen=True, eq=False)
class MdsCode:
    """An [n, k, n-k+1] code over GF(2^m).

    ``generator`` is in systematic form: its first k columns are the identity.
    """

    n: int
    k: int
    field: Field
    eval_points: Tuple[Optional[int], ...]
    generator: Matrix
    parity_check: Matrix

    @property
    def rho(self) -> int:
        return self.n - self.k

    @property
    def extended(self) -> bool:
        return INFINITY in self.eval_points


def evaluation_points(field: Field, n: int) -> Tuple[Optional[int], ...]:
    """0, 1, alpha, alpha^2, ... then the point at infinity when n = q + 1."""
    if n > field.order + 1:
        raise InvalidParametersError(f"length {n} exceeds q+1 = {field.order + 1}")
    finite = min(n, field.order)
    points: List[Optional[int]] = [0]
    value = 1
    while len(points) < finite:
        points.append(value)
        value = field.mul(value, field.primitive_element)
    if n == field.order + 1:
        points.append(INFINITY)
    return tuple(points)


def _vandermonde(field: Field, points: Tuple[Optional[int], ...], k: int) -> Matrix:
    columns = []
    for point in points:
        if point is INFINITY:
            columns.append([1 if e == k - 1 else 0 for e in range(k)])
        else:
            columns.append([field.pow(point, e) for e in range(k)])
    return Matrix(field, np.array(columns, dtype=np.int64).T)


def rs_make(n: int, rho: int) -> MdsCode:
    """Build the shortest-field Reed-Solomon code of length n correcting rho erasures.

    The smallest m with 2^m + 1 >= n is chosen; when 2^m < n the code is
    singly extended with the point at infinity.

    Args:
        n: Code length
        rho: Number of erasures to correct (n - k)

    Returns:
        Systematic MdsCode

    Raises:
        InvalidParametersError: If rho is not in [1, n) or no field is large enough
    """
    if not 1 <= rho < n:
        raise InvalidParametersError(f"need 1 <= rho < n, got n={n}, rho={rho}")
    m = 1
    while (1 << m) + 1 < n:
        m += 1
    if m > MAX_DEGREE:
        raise InvalidParametersError(f"length {n} needs a field beyond GF(2^{MAX_DEGREE})")
    field = field_make(m)
    k = n - rho
    points = evaluation_points(field, n)
    raw = _vandermonde(field, points, k)
    try:
        head_inverse = inverse(raw.columns(range(k)))
    except NotUniquelyDecodableError as e:
        raise EncodingError("first k positions are not an information set") from e
    generator = matmul(head_inverse, raw)
    parity_check = nullspace_basis(generator)
    logger.info("Built [%d, %d] RS code over GF(2^%d)%s", n, k, m,
                " (extended)" if INFINITY in points else "")
    return MdsCode(n, k, field, points, generator, parity_check)


def mds_encode_systematic(code: MdsCode, info: np.ndarray) -> np.ndarray:
    """Encode k symbols; the first k output symbols are the input."""
    info = np.asarray(info, dtype=np.int64)
    if info.shape != (code.k,):
        raise InvalidParametersError(f"expected {code.k} information symbols, got {info.shape}")
    return matvec(transpose(code.generator), info)


def is_codeword(code: MdsCode, word: np.ndarray) -> bool:
    word = np.asarray(word, dtype=np.int64)
    return word.shape == (code.n,) and not np.any(matvec(code.parity_check, word))


def mds_erasure_decode(code: MdsCode, word: np.ndarray, known: np.ndarray) -> np.ndarray:
    """Return the unique codeword agreeing with every Known position.

    Raises:
        ErasureBudgetExceededError: If more than n - k positions are Unknown
        NotACodewordError: If the Known positions fit no codeword
    """
    word = np.asarray(word, dtype=np.int64)
    known = np.asarray(known, dtype=bool)
    erased = code.n - int(known.sum())
    if erased > code.rho:
        raise ErasureBudgetExceededError(f"{erased} erasures exceed the budget of {code.rho}")
    known_idx = np.flatnonzero(known)
    system = transpose(code.generator.columns(known_idx))
    try:
        info = solve_unique(system, word[known_idx])
    except InconsistentSystemError as e:
        raise NotACodewordError("known symbols are not consistent with any codeword") from e
    return mds_encode_systematic(code, info)


def is_mds(code: MdsCode) -> bool:
    """Check that every k columns of the generator are linearly independent."""
    for subset in itertools.combinations(range(code.n), code.k):
        if rank(code.generator.columns(subset)) < code.k:
            return False
    return True
