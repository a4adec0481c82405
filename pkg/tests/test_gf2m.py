"""Tests for GF(2^m) arithmetic."""

import itertools

import numpy as np
import pytest
from src.graph_codes.exceptions import FieldDivisionError, FieldError
from src.graph_codes.gf2m import (
    GF2,
    Field,
    LOWEST_WEIGHT_MODULI,
    clmul,
    field_make,
    is_irreducible,
    modulus_for,
    poly_mod,
)


def test_field_make_uses_table_modulus():
    """Test that GF(2^3) is built with x^3 + x + 1."""
    field = field_make(3)
    assert field.m == 3
    assert field.modulus == 0b1011
    assert field.order == 8
    assert field.tag == "gf2m:3"


def test_binary_field():
    """Test that m=1 gives GF(2) with modulus x + 1."""
    assert GF2.modulus == 0b11
    assert GF2.is_binary
    assert GF2.tag == "gf2"


@pytest.mark.parametrize("m", [0, -1, 33])
def test_field_make_rejects_degree_out_of_range(m):
    """Test that degrees outside [1, 32] raise FieldError."""
    with pytest.raises(FieldError):
        field_make(m)


@pytest.mark.parametrize("m", range(1, 17))
def test_table_moduli_are_irreducible(m):
    """Test that every modulus up to degree 16 passes trial division."""
    poly = modulus_for(m)
    assert poly.bit_length() == m + 1
    assert is_irreducible(poly)


def test_reducible_polynomials_are_detected():
    """Test that products of two polynomials are reducible."""
    assert not is_irreducible(clmul(0b11, 0b111))
    assert not is_irreducible(0b101)  # (x + 1)^2
    assert is_irreducible(0b111)


def test_field_rejects_reducible_modulus():
    """Test that a modulus of the right degree must also be irreducible."""
    with pytest.raises(FieldError):
        Field(4, 0b10001)  # (x + 1)^4
    with pytest.raises(FieldError):
        Field(3, 0b1111)  # (x + 1)^3
    assert Field(4, 0b10011).mul(0b10, 0b1000) == 0b0011


def test_poly_mod_by_zero_raises():
    """Test that polynomial division by zero is rejected."""
    with pytest.raises(FieldDivisionError):
        poly_mod(0b101, 0)


def test_add_is_xor():
    """Test that addition is XOR of representations."""
    field = field_make(3)
    assert field.add(0b010, 0b011) == 0b001
    for a in field.elements():
        assert field.add(a, a) == 0
        assert field.add(a, 0) == a


def test_mul_known_value():
    """Test that x * (x + 1) = x^2 + x in GF(2^3)."""
    field = field_make(3)
    assert field.mul(0b010, 0b011) == 0b110


def test_mul_identity_and_zero():
    """Test that 1 is the identity and 0 absorbs."""
    field = field_make(5)
    for a in field.elements():
        assert field.mul(a, 1) == a
        assert field.mul(a, 0) == 0


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    """Test associativity, commutativity and distributivity on every triple."""
    field = field_make(m)
    elements = list(field.elements())
    for a, b, c in itertools.product(elements, repeat=3):
        assert field.mul(a, b) == field.mul(b, a)
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, b ^ c) == field.mul(a, b) ^ field.mul(a, c)


def test_inverse_known_values():
    """Test inv(1) = 1 and inv(x) = x^2 + 1 in GF(2^3)."""
    field = field_make(3)
    assert field.inv(1) == 1
    assert field.inv(0b010) == 0b101


def test_inverse_of_zero_raises():
    """Test that inverting zero raises a division error."""
    with pytest.raises(FieldDivisionError):
        field_make(4).inv(0)
    with pytest.raises(ZeroDivisionError):
        field_make(4).div(1, 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_inverse_is_a_bijection(m):
    """Test that a * inv(a) = 1 and inv hits every nonzero element."""
    field = field_make(m)
    inverses = set()
    for a in range(1, field.order):
        inverse = field.inv(a)
        assert field.mul(a, inverse) == 1
        inverses.add(inverse)
    assert inverses == set(range(1, field.order))


def test_frobenius_known_values():
    """Test frob(a, 0) = a and frob(x, 1) = x^2."""
    field = field_make(3)
    assert field.frob(0b110, 0) == 0b110
    assert field.frob(0b010, 1) == 0b100


@pytest.mark.parametrize("m", range(1, 9))
def test_frobenius_has_order_m(m):
    """Test that a^(2^m) = a for every element."""
    field = field_make(m)
    for a in field.elements():
        assert field.frob(a, m) == a


@pytest.mark.parametrize("m", [3, 6, 8])
def test_frobenius_is_additive(m):
    """Test that squaring distributes over addition."""
    field = field_make(m)
    for a, b in itertools.product(field.elements(), repeat=2):
        assert field.frob(a ^ b, 1) == field.frob(a, 1) ^ field.frob(b, 1)


def test_frobenius_rejects_negative_count():
    """Test that a negative iteration count raises FieldError."""
    with pytest.raises(FieldError):
        field_make(3).frob(1, -1)


@pytest.mark.parametrize("m", [4, 8, 11, 20, 32])
def test_mul_array_matches_scalar_mul(m):
    """Test that the table and carry-less paths agree with scalar multiplication."""
    field = field_make(m)
    rng = np.random.default_rng(m)
    a = rng.integers(0, field.order, size=64, dtype=np.int64)
    b = rng.integers(0, field.order, size=64, dtype=np.int64)
    products = field.mul_array(a, b)
    assert [int(p) for p in products] == [field.mul(int(x), int(y)) for x, y in zip(a, b)]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 8])
def test_primitive_element_generates_group(m):
    """Test that the primitive element has multiplicative order 2^m - 1."""
    field = field_make(m)
    alpha = field.primitive_element
    powers = {field.pow(alpha, e) for e in range(field.order - 1)}
    assert powers == set(range(1, field.order))


def test_element_format_and_parse():
    """Test minimal lowercase hex serialization."""
    field = field_make(8)
    assert field.format_element(0x1A) == "1a"
    assert field.format_element(0) == "0"
    assert field.parse_element("ff") == 255


@pytest.mark.parametrize("token", ["01", "A", "", "100", "0x1", "-1"])
def test_element_parse_rejects_bad_tokens(token):
    """Test that non-minimal, uppercase or out-of-range tokens raise FieldError."""
    with pytest.raises(FieldError):
        field_make(8).parse_element(token)


def test_lowest_weight_table_covers_every_degree():
    """Test that the modulus table has one entry for each degree 1..32."""
    assert sorted(LOWEST_WEIGHT_MODULI) == list(range(1, 33))


def test_mul_matches_galois():
    """Test multiplication against the galois package when it is installed."""
    galois = pytest.importorskip("galois")
    field = field_make(8)
    reference = galois.GF(2**8, irreducible_poly=field.modulus)
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, 256, size=(200, 2)):
        expected = int(reference(int(a)) * reference(int(b)))
        assert field.mul(int(a), int(b)) == expected
