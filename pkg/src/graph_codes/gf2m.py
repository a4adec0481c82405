"""Arithmetic in binary extension fields GF(2^m), 1 <= m <= 32.

Elements are plain ints whose bits are polynomial coefficients over GF(2); the
:class:`Field` is passed as context. Multiplication is a carry-less product
reduced by a fixed lowest-weight irreducible modulus, so serialized labels are
reproducible. Fields with m <= 8 also carry a multiplication table that gives
identical results and speeds up bulk matrix work.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Tuple, Union

import numpy as np

from .exceptions import FieldDivisionError, FieldError

logger = logging.getLogger(__name__)

MIN_DEGREE = 1
MAX_DEGREE = 32
TABLE_MAX_DEGREE = 8

# Exponents of the lowest-weight irreducible polynomial of each degree
# (a trinomial when one exists, otherwise a pentanomial).
LOWEST_WEIGHT_MODULI: Dict[int, Tuple[int, ...]] = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 1, 0),
    9: (9, 1, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 3, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 5, 0),
    15: (15, 1, 0),
    16: (16, 5, 3, 1, 0),
    17: (17, 3, 0),
    18: (18, 3, 0),
    19: (19, 5, 2, 1, 0),
    20: (20, 3, 0),
    21: (21, 2, 0),
    22: (22, 1, 0),
    23: (23, 5, 0),
    24: (24, 4, 3, 1, 0),
    25: (25, 3, 0),
    26: (26, 4, 3, 1, 0),
    27: (27, 5, 2, 1, 0),
    28: (28, 1, 0),
    29: (29, 2, 0),
    30: (30, 1, 0),
    31: (31, 3, 0),
    32: (32, 7, 3, 2, 0),
}

ArrayLike = Union[np.ndarray, int]


def modulus_for(m: int) -> int:
    """Return the table modulus of degree m as a bit mask."""
    if m not in LOWEST_WEIGHT_MODULI:
        raise FieldError(f"extension degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {m}")
    return sum(1 << e for e in LOWEST_WEIGHT_MODULI[m])


def clmul(a: int, b: int) -> int:
    """Carry-less (GF(2)[x]) product of two polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_mod(a: int, b: int) -> int:
    """Remainder of a divided by b in GF(2)[x]."""
    if b == 0:
        raise FieldDivisionError("polynomial division by zero")
    degree_b = b.bit_length()
    while a.bit_length() >= degree_b:
        a ^= b << (a.bit_length() - degree_b)
    return a


@lru_cache(maxsize=None)
def is_irreducible(poly: int) -> bool:
    """Check irreducibility over GF(2) by trial division.

    Every polynomial of degree 1..deg/2 is tried as a divisor.

    Args:
        poly: Polynomial as a bit mask (bit i is the coefficient of x^i)

    Returns:
        True if poly has degree >= 1 and no proper factor
    """
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if poly_mod(poly, divisor) == 0:
            return False
    return True


def _prime_factors(value: int) -> List[int]:
    factors = []
    p = 2
    while p * p <= value:
        if value % p == 0:
            factors.append(p)
            while value % p == 0:
                value //= p
        p += 1
    if value > 1:
        factors.append(value)
    return factors


def _clmul_array(a: np.ndarray, b: np.ndarray, m: int, modulus: int) -> np.ndarray:
    # Operands are below 2^32, so the unreduced product fits in 63 bits.
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    product = np.zeros(a.shape, dtype=np.int64)
    for bit in range(m):
        product ^= ((b >> bit) & 1) * (a << bit)
    for bit in range(2 * m - 2, m - 1, -1):
        product ^= ((product >> bit) & 1) * (modulus << (bit - m))
    return product


@lru_cache(maxsize=None)
def _mul_table(m: int, modulus: int) -> np.ndarray:
    elements = np.arange(1 << m, dtype=np.int64)
    table = _clmul_array(elements[:, None], elements[None, :], m, modulus)
    table.setflags(write=False)
    logger.debug("Built %dx%d multiplication table for GF(2^%d)", 1 << m, 1 << m, m)
    return table


@dataclass(frozen=True)
class Field:
    """A binary extension field GF(2^m) with a fixed modulus."""

    m: int
    modulus: int

    def __post_init__(self) -> None:
        if not MIN_DEGREE <= self.m <= MAX_DEGREE:
            raise FieldError(f"extension degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {self.m}")
        if self.modulus.bit_length() != self.m + 1:
            raise FieldError(f"modulus {self.modulus:#x} does not have degree {self.m}")
        if not is_irreducible(self.modulus):
            raise FieldError(f"modulus {self.modulus:#x} is reducible over GF(2)")

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def is_binary(self) -> bool:
        return self.m == 1

    @property
    def tag(self) -> str:
        """Alphabet tag used in graph file headers."""
        return "gf2" if self.m == 1 else f"gf2m:{self.m}"

    @cached_property
    def _table(self) -> Union[np.ndarray, None]:
        if self.m > TABLE_MAX_DEGREE:
            return None
        return _mul_table(self.m, self.modulus)

    @cached_property
    def _table_rows(self) -> Union[List[List[int]], None]:
        table = self._table
        return None if table is None else table.tolist()

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def check(self, a: int) -> int:
        if not self.contains(a):
            raise FieldError(f"{a:#x} is not an element of GF(2^{self.m})")
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        rows = self._table_rows
        if rows is not None:
            return rows[a][b]
        return poly_mod(clmul(a, b), self.modulus)

    def pow(self, a: int, exponent: int) -> int:
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        result = 1
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def inv(self, a: int) -> int:
        """Multiplicative inverse, a^(2^m - 2).

        Raises:
            FieldDivisionError: If a is zero
        """
        if a == 0:
            raise FieldDivisionError(f"zero has no inverse in GF(2^{self.m})")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int) -> int:
        """Return a^(2^k); k is reduced modulo m since frob(., m) is the identity."""
        if k < 0:
            raise FieldError("Frobenius iteration count must be non-negative")
        for _ in range(k % self.m):
            a = self.mul(a, a)
        return a

    def mul_array(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        """Elementwise product of two broadcastable arrays of elements."""
        table = self._table
        if table is not None:
            return table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        return _clmul_array(np.asarray(a), np.asarray(b), self.m, self.modulus)

    @cached_property
    def primitive_element(self) -> int:
        """Smallest element of multiplicative order 2^m - 1."""
        group_order = self.order - 1
        if group_order == 1:
            return 1
        factors = _prime_factors(group_order)
        for candidate in range(2, self.order):
            if all(self.pow(candidate, group_order // p) != 1 for p in factors):
                return candidate
        raise FieldError(f"modulus {self.modulus:#x} is not irreducible")

    def format_element(self, a: int) -> str:
        """Minimal lowercase hex, no prefix."""
        return format(self.check(a), "x")

    def parse_element(self, token: str) -> int:
        if not token or any(c not in "0123456789abcdef" for c in token):
            raise FieldError(f"not a lowercase hex token: {token!r}")
        if len(token) > 1 and token[0] == "0":
            raise FieldError(f"hex token has leading zeros: {token!r}")
        value = int(token, 16)
        if not self.contains(value):
            raise FieldError(f"{token} is outside GF(2^{self.m})")
        return value


@lru_cache(maxsize=None)
def field_make(m: int) -> Field:
    """Build GF(2^m) with the table modulus.

    Args:
        m: Extension degree, 1 <= m <= 32

    Returns:
        The field, shared across calls

    Raises:
        FieldError: If m is out of range
    """
    return Field(m, modulus_for(m))


GF2 = field_make(1)
