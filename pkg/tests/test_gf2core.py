import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pauligeom.gf2core import (DimensionError, PauliVector, QubitRangeError, arf, check_qubits,
                               even_mask, form_matrix, gf2_rank, odd_mask, q0, qp,
                               symplectic_basis, symplectic_form, transvect)


def coords(x, n):
    return [(x >> (2 * n - 1 - i)) & 1 for i in range(2 * n)]


def form_ref(x, y, n):
    """sum_i a_i b'_i + b_i a'_i from explicit coordinates."""
    cx, cy = coords(x, n), coords(y, n)
    return sum(cx[2 * i] * cy[2 * i + 1] + cx[2 * i + 1] * cy[2 * i] for i in range(n)) % 2


def q0_ref(x, n):
    c = coords(x, n)
    return sum(c[2 * i] * c[2 * i + 1] for i in range(n)) % 2


@st.composite
def vecs(draw, k=2, n=None):
    n = n or draw(st.integers(1, 6))
    return n, [draw(st.integers(0, 4**n - 1)) for _ in range(k)]


@given(vecs(3))
def test_form_is_bilinear_and_alternating(data):
    n, (x, y, z) = data
    assert symplectic_form(x, y) == form_ref(x, y, n)
    assert symplectic_form(x, x) == 0
    assert symplectic_form(x, y) == symplectic_form(y, x)
    assert symplectic_form(x ^ y, z) == symplectic_form(x, z) ^ symplectic_form(y, z)


@given(vecs(2))
def test_q0_polarizes_to_the_form(data):
    n, (x, y) = data
    assert q0(x) == q0_ref(x, n)
    assert q0(x ^ y) == q0(x) ^ q0(y) ^ symplectic_form(x, y)


@given(vecs(2))
def test_qp_and_arf(data):
    n, (p, x) = data
    assert qp(p, x) == q0(x) ^ symplectic_form(p, x)
    assert arf(p) == q0(p)


def test_arf_is_majority_value():
    # the Arf invariant is the value taken by Q_p on the majority of vectors
    for n in (1, 2, 3):
        for p in range(4**n):
            ones = sum(qp(p, x) for x in range(4**n))
            majority = int(ones > 4**n // 2)
            assert arf(p) == majority


@given(vecs(3))
def test_transvection_is_symplectic_involution(data):
    n, (p, x, y) = data
    tx, ty = transvect(p, x), transvect(p, y)
    assert transvect(p, tx) == x
    assert symplectic_form(tx, ty) == symplectic_form(x, y)


def test_form_matches_commutation_of_matrices():
    from conftest import labels, pauli_matrix
    from pauligeom.pauli_codec import encode

    labs = labels(2)
    for a in labs:
        for b in labs:
            ma, mb = pauli_matrix(a), pauli_matrix(b)
            commute = np.array_equal(ma @ mb, mb @ ma)
            assert symplectic_form(encode(a), encode(b)) == (not commute)


def test_pauli_vector_basics():
    v = PauliVector.from_coords([1, 0, 0, 1])
    assert v.n == 2 and v.bits == 0b1001 and v.coords == (1, 0, 0, 1)
    w = PauliVector(0b0110, 2)
    assert (v + w).bits == 0b1111
    assert int(v) == 9 and bool(PauliVector(0, 2)) is False
    assert v == PauliVector(9, 2) and v != PauliVector(9, 3)
    assert len({v, PauliVector(9, 2)}) == 1
    assert w < v


def test_dimension_errors():
    with pytest.raises(DimensionError):
        PauliVector(16, 2)
    with pytest.raises(DimensionError):
        PauliVector(1, 1) + PauliVector(1, 2)
    with pytest.raises(DimensionError):
        symplectic_form(PauliVector(1, 1), PauliVector(1, 2))
    with pytest.raises(DimensionError):
        PauliVector.from_coords([1, 0, 1])
    with pytest.raises(ValueError):
        PauliVector.from_coords([2, 0])


def test_check_qubits():
    assert check_qubits(3) == 3
    for bad in (0, -1, True, 2.0):
        with pytest.raises(QubitRangeError):
            check_qubits(bad)
    with pytest.raises(QubitRangeError):
        check_qubits(5, hi=4)


def test_masks_and_form_matrix():
    assert even_mask(2) == 0b0101 and odd_mask(2) == 0b1010
    j = form_matrix(3)
    assert j.shape == (6, 6) and (j == j.T).all() and j.sum() == 6
    for x in range(0, 64, 7):
        for y in range(0, 64, 5):
            cx, cy = np.array(coords(x, 3)), np.array(coords(y, 3))
            assert (cx @ j @ cy) % 2 == symplectic_form(x, y)


def test_gf2_rank():
    assert gf2_rank([]) == 0
    assert gf2_rank([1, 2, 3]) == 2
    assert gf2_rank(range(1, 16)) == 4
    assert gf2_rank([5, 5, 0]) == 1


def test_symplectic_basis():
    pairs = symplectic_basis(range(1, 64))
    assert len(pairs) == 3
    for i, (e, f) in enumerate(pairs):
        assert symplectic_form(e, f) == 1
        for e2, f2 in pairs[i + 1:]:
            assert symplectic_form(e, e2) == symplectic_form(e, f2) == 0
            assert symplectic_form(f, e2) == symplectic_form(f, f2) == 0
    with pytest.raises(ValueError):
        symplectic_basis([0b0100, 0b0001])  # XI and IX commute


def test_nmax_environment_override():
    code = "import pauligeom.gf2core as g; print(g.N_MAX)"
    env = dict(os.environ, VELDKAMP_NMAX="7")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "7"
