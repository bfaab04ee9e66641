import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import labels, pauli_matrix
from pauligeom.gf2core import DimensionError, symplectic_form
from pauligeom.pauli_codec import SIGN_TABLE, SignedPauli, decode, encode, encode_n, multiply, product

label_st = st.integers(1, 5).flatmap(lambda n: st.text("IXZY", min_size=n, max_size=n))


def test_single_qubit_codes():
    assert [encode(c).bits for c in "IXZY"] == [0, 1, 2, 3]
    assert encode("XZ").bits == 0b0110
    assert encode("ZI").bits == 0b1000


@given(label_st)
def test_roundtrip(label):
    v = encode(label)
    assert v.n == len(label)
    assert decode(v) == label
    assert decode(v.bits, len(label)) == label


def test_label_order_is_integer_order():
    labs = labels(2)
    assert [encode(l).bits for l in labs] == list(range(1, 16))


def test_bad_labels():
    for bad in ("", "XA", "x", None):
        with pytest.raises(ValueError):
            encode(bad)
    with pytest.raises(DimensionError):
        encode_n("XX", 3)
    with pytest.raises(ValueError):
        decode(3)
    with pytest.raises(DimensionError):
        decode(16, 2)


def test_sign_table_against_matrices():
    for (a, b), (s, c) in SIGN_TABLE.items():
        assert np.array_equal(pauli_matrix(a) @ pauli_matrix(b), s * pauli_matrix(c))
    assert SIGN_TABLE["Z", "X"] == (1, "Y")
    assert SIGN_TABLE["X", "Z"] == (-1, "Y")
    assert SIGN_TABLE["Y", "Y"] == (-1, "I")


@given(label_st.flatmap(lambda l: st.tuples(st.just(l), st.text("IXZY", min_size=len(l), max_size=len(l)))),
       st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_product_matches_kronecker(pair, sa, sb):
    a, b = pair
    got = multiply(SignedPauli(sa, a), SignedPauli(sb, b))
    want = sa * sb * pauli_matrix(a) @ pauli_matrix(b)
    assert np.array_equal(got.sign * pauli_matrix(got.label), want)
    # the label part is the xor of the vectors
    assert encode(got.label).bits == encode(a).bits ^ encode(b).bits


def test_commutation_sign():
    for a in labels(2):
        for b in labels(2):
            ab = multiply(SignedPauli(1, a), SignedPauli(1, b))
            ba = multiply(SignedPauli(1, b), SignedPauli(1, a))
            assert ab.label == ba.label
            assert (ab.sign != ba.sign) == bool(symplectic_form(encode(a), encode(b)))


def test_associativity_single_qubit():
    ops = [SignedPauli(s, c) for s in (1, -1) for c in "IXZY"]
    for a in ops:
        for b in ops:
            for c in ops:
                assert (a * b) * c == a * (b * c)


def test_signed_parse_and_str():
    p = SignedPauli.parse("-XYZ")
    assert p == SignedPauli(-1, "XYZ") and str(p) == "-XYZ" and p.n == 3
    assert SignedPauli.parse("+II").is_identity()
    assert p.vector == encode("XYZ")
    with pytest.raises(ValueError):
        SignedPauli(0, "X")
    with pytest.raises(DimensionError):
        SignedPauli(1, "X") * SignedPauli(1, "XX")


def test_real_y_products():
    # with Y = ZX (real), XX * YY = ZZ, so that row multiplies to +II
    assert multiply(SignedPauli(1, "XX"), SignedPauli(1, "YY")) == SignedPauli(1, "ZZ")
    assert product([SignedPauli(1, "XX"), SignedPauli(1, "YY"), SignedPauli(1, "ZZ")]) == SignedPauli(1, "II")
    assert product([SignedPauli(1, "XZ"), SignedPauli(1, "ZX"), SignedPauli(1, "YY")]) == SignedPauli(-1, "II")
