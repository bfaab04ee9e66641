import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from pauligeom.geometry import Geometry
from pauligeom.gf2core import DimensionError, q0, symplectic_form
from pauligeom.group_action import (SwapError, SymplecticMap, Transvection, act_on_kind,
                                    act_word_on_kind, apply_hyperplane, apply_point,
                                    count_graph_automorphisms, find_swap, hyperplane_orbits,
                                    image_mask, is_symplectic, maps_pair, orbit_hyperplanes,
                                    sp_order, transport_pair, verify_swap)
from pauligeom.hyperplanes import HyperplaneFamily, kind_mask, perp_hyperplane, quadric_hyperplane
from pauligeom.pauli_codec import encode


def test_transvection_basics():
    t = Transvection(encode("XZ").bits, 2)
    assert t.label == "XZ"
    assert t(encode("ZI").bits) == encode("ZI").bits ^ encode("XZ").bits
    assert t(encode("XI").bits) == encode("XI").bits
    with pytest.raises(ValueError):
        Transvection(0, 2)
    with pytest.raises(DimensionError):
        Transvection(16, 2)


@settings(deadline=None)
@given(st.lists(st.integers(1, 63), max_size=6))
def test_words_are_symplectic(word):
    m = SymplecticMap.of(word, 3)
    assert is_symplectic(m.matrix())
    for x in (1, 5, 40):
        for y in (2, 17, 63):
            assert symplectic_form(m(x), m(y)) == symplectic_form(x, y)


def test_composition_order():
    a, b = SymplecticMap.of([3], 2), SymplecticMap.of([12], 2)
    ab = a @ b
    for x in range(16):
        assert ab(x) == a(b(x))
    assert ab.labels == ["IY", "YI"]


def test_matrix_columns():
    m = SymplecticMap.of([encode("XX").bits], 2)
    mat = m.matrix()
    for j in range(4):
        img = m(1 << (3 - j))
        col = int("".join(str(v) for v in mat[:, j]), 2)
        assert col == img


def test_is_symplectic_rejects():
    assert not is_symplectic(np.array([[1, 1], [0, 0]]))
    with pytest.raises(ValueError):
        is_symplectic(np.eye(3, dtype=int))


def test_apply_point():
    m = SymplecticMap.of([1], 1)
    assert apply_point(m, encode("Z")) == encode("Y")
    with pytest.raises(DimensionError):
        apply_point(m, encode("ZZ"))


def test_action_formula_all_n2(fam2):
    for p in range(1, 16):
        for h in fam2:
            assert kind_mask(act_on_kind(p, h.kind)) == image_mask(p, h.mask, 2)
            apply_hyperplane(Transvection(p, 2), h)


def test_action_formula_examples():
    # t_p fixes H_a when Q_a(p) = 1, and moves it to H_{a+p} otherwise
    h = quadric_hyperplane(encode("II")).kind
    assert act_on_kind(encode("YI").bits, h) == h
    assert act_on_kind(encode("XI").bits, h).key == "H:XI"
    c = perp_hyperplane(encode("ZI")).kind
    assert act_on_kind(encode("XI").bits, c).key == "C:YI"


def test_action_sampled_n4():
    fam = HyperplaneFamily(4)
    rng = np.random.default_rng(3)
    for _ in range(300):
        p = int(rng.integers(1, 256))
        h = fam[int(rng.integers(len(fam)))]
        assert kind_mask(act_on_kind(p, h.kind)) == image_mask(p, h.mask, 4)


def test_word_action_preserves_arf(fam3):
    m = SymplecticMap.of([5, 17, 40], 3)
    for h in list(fam3)[::3]:
        img = act_word_on_kind(m, h.kind)
        assert img.tag == h.kind.tag


@pytest.mark.parametrize("n,sizes", [(2, [6, 10, 15]), (3, [28, 36, 63])])
def test_orbits(n, sizes):
    orbits = hyperplane_orbits(n)
    assert sorted(len(o) for o in orbits) == sizes
    for o in orbits:
        assert len({k.tag for k in o}) == 1
    with pytest.raises(ValueError):
        orbit_hyperplanes(perp_hyperplane(encode("X")))


def test_find_swap_both_branches():
    a, b = encode("IXX").bits, encode("XIX").bits
    f = encode("ZZI").bits
    m = find_swap(a, b, f, 3)
    assert len(m.word) == 2 and verify_swap(m, a, b, f)
    f = encode("YII").bits  # Q_f(a + b) = 1 here
    m = find_swap(a, b, f, 3)
    assert m.word == (a ^ b,) and verify_swap(m, a, b, f)


def test_find_swap_exhaustive_n3_one_arf():
    # the full n = 3 sweep lives in the acceptance suite; here fix f
    for f in (0, 27, 63):
        for a in range(64):
            for b in range(64):
                if len({a, b, f}) == 3 and q0(a) == q0(b):
                    assert verify_swap(find_swap(a, b, f, 3), a, b, f)


def test_find_swap_errors():
    with pytest.raises(ValueError):
        find_swap(1, 2, 3, 2)
    with pytest.raises(ValueError):
        find_swap(1, 1, 3, 3)
    with pytest.raises(ValueError):
        find_swap(0, 3, 5, 3)  # Arf 0 vs Arf 1
    with pytest.raises(ValueError):
        find_swap(encode("XX"), encode("ZZI"), encode("III"))  # mixed n
    assert issubclass(SwapError, RuntimeError)


def test_automorphisms_n2():
    graph = Geometry(2).collinearity_graph()
    adj = {v: set(graph[v]) for v in graph}
    assert count_graph_automorphisms(adj) == 720 == sp_order(2)
    # independent count through networkx
    assert sum(1 for _ in GraphMatcher(graph, graph).isomorphisms_iter()) == 720


def test_automorphism_counter_small_graphs():
    assert count_graph_automorphisms({v: set(nx.cycle_graph(5)[v]) for v in range(5)}) == 10
    k4 = nx.complete_graph(4)
    assert count_graph_automorphisms({v: set(k4[v]) for v in k4}) == 24
    assert sp_order(3) == 1451520


@pytest.mark.parametrize("arf", [0, 1])
def test_two_transitive_on_quadrics_n3(arf):
    n = 3
    qs = [x for x in range(64) if q0(x) == arf]
    a0, b0 = qs[0], qs[1]
    for a in qs:
        for b in qs:
            if a != b:
                assert maps_pair(transport_pair(a0, b0, a, b, n), a0, b0, a, b)
    with pytest.raises(ValueError):
        transport_pair(a0, a0, a0, b0, n)
