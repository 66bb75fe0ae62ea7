import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from doobcolor.gf import (
    PRIMITIVE_POLYNOMIALS, FieldElem, connecting_set_labels, field, label_additivity_check,
    label_classes, poly_mulmod, shrikhande_label, z4_label,
)
from doobcolor.graph import SHRIKHANDE_CONNECTING

ks = st.sampled_from(sorted(PRIMITIVE_POLYNOMIALS))


@st.composite
def elems(draw, n=3):
    k = draw(ks)
    return k, [draw(st.integers(0, (1 << k) - 1)) for _ in range(n)]


def _clmul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a, b = a << 1, b >> 1
    return out


def _reduce(x, modulus):
    deg = modulus.bit_length() - 1
    while x.bit_length() - 1 >= deg:
        x ^= modulus << (x.bit_length() - 1 - deg)
    return x


@given(elems())
def test_table_product_matches_polynomial_product(ke):
    k, (a, b, _) = ke
    F = field(k)
    ref = _reduce(_clmul(a, b), PRIMITIVE_POLYNOMIALS[k])
    assert F.mul(a, b) == ref == poly_mulmod(a, b, F.modulus)


@given(elems())
def test_field_axioms(ke):
    k, (a, b, c) = ke
    A, B, C = (FieldElem(k, v) for v in (a, b, c))
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A + A == FieldElem(k, 0)
    if a:
        assert A * A ** -1 == FieldElem(k, 1)


@pytest.mark.parametrize("k", sorted(PRIMITIVE_POLYNOMIALS))
def test_alpha_is_primitive(k):
    F = field(k)
    if k > 1:
        assert F.element_order(F.alpha) == (1 << k) - 1
    assert sorted(F.position_labels().tolist()) == list(range(1 << k))


def test_vectorised_mul_and_mismatch():
    F = field(4)
    a = np.arange(16)
    prod = F.mul(a, a[::-1])
    assert [int(x) for x in prod] == [poly_mulmod(int(x), int(y), F.modulus) for x, y in zip(a, a[::-1])]
    with pytest.raises(ValueError):
        FieldElem(2, 1) + FieldElem(3, 1)
    with pytest.raises(ValueError):
        FieldElem(2, 4)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_gf4_relation():
    a = FieldElem.alpha(2)
    assert a * a == a + FieldElem(2, 1)


def test_shrikhande_labels():
    assert label_additivity_check()
    classes = label_classes()
    assert all(len(v) == 4 for v in classes.values())
    # the connecting set hits each nonzero label exactly twice
    labs = connecting_set_labels()
    assert sorted(labs) == [1, 1, 2, 2, 3, 3]
    assert len(SHRIKHANDE_CONNECTING) == 6
    assert shrikhande_label((0, 0)).bits == 0
    assert [z4_label(x).bits for x in range(4)] == [0, 1, 2, 3]
