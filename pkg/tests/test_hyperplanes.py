from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pauligeom.geometry import Geometry, n_points, points_of
from pauligeom.gf2core import q0, qp, symplectic_form
from pauligeom.hyperplanes import (HyperplaneFamily, HyperplaneKind, Kind, NotAHyperplaneError,
                                   boxplus, boxplus_kind, boxplus_mask, classify, contained_line_count,
                                   exhaustive_h1_search, expected_size, from_points, h1_sets,
                                   kind_mask, contained_line_formula, perp_hyperplane, quadric_hyperplane,
                                   satisfies_h1, hyperplane_type_counts)
from pauligeom.pauli_codec import encode


def test_perp_and_quadric_members():
    c = perp_hyperplane(encode("XY"))
    assert c.key == "C:XY" and c.size == 7
    assert set(c.points) == {x for x in range(1, 16) if not symplectic_form(encode("XY").bits, x)}
    h = quadric_hyperplane(encode("II"))
    assert h.size == 9 and h.kind.arf == 0
    assert set(h.points) == {x for x in range(1, 16) if not q0(x)}
    assert encode("XX").bits in h and encode("YI").bits not in h


def test_kind_parse_roundtrip():
    for text in ("C:XY", "H:IYZ", "H:II"):
        assert HyperplaneKind.parse(text).key == text
    assert HyperplaneKind.parse("H:IY").tag == "H1"
    for bad in ("Q:XX", "C:II", "C", "H:"):
        with pytest.raises(ValueError):
            HyperplaneKind.parse(bad)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_table1_closed_forms(n):
    fam = HyperplaneFamily(n)
    sizes = fam.sizes()
    for code, tag in enumerate(("C", "H0", "H1")):
        copies, pts = hyperplane_type_counts(n)[tag]
        sel = fam.tags() == code
        assert sel.sum() == copies
        assert set(sizes[sel].tolist()) == {pts}
    assert len(fam) == 2 * 4**n - 1


def test_table1_values():
    assert hyperplane_type_counts(2) == {"C": (15, 7), "H0": (10, 9), "H1": (6, 5)}
    assert hyperplane_type_counts(3) == {"C": (63, 31), "H0": (36, 35), "H1": (28, 27)}


def test_sizes_against_direct_count(fam3):
    for h in list(fam3)[::5]:
        p = h.kind.p
        if h.kind.kind is Kind.PERP:
            want = sum(1 for x in range(1, 64) if not symplectic_form(p, x))
        else:
            want = sum(1 for x in range(1, 64) if not qp(p, x))
        assert h.size == want == expected_size(h.kind)


@pytest.mark.parametrize("n", [2, 3])
def test_every_member_is_h1(n):
    fam = HyperplaneFamily(n)
    hits = fam.line_hits()
    assert not hits[:, 0].any() and not hits[:, 2].any()
    assert len(set(fam.mask_ints)) == len(fam)


def test_n1_family_is_degenerate():
    fam = HyperplaneFamily(1)
    assert fam.degenerate and len(fam) == 7
    # no lines: every proper subset is (H1); 7 hyperplanes plus P
    assert len(set(fam.mask_ints) | {Geometry(1).full_mask}) == len(h1_sets(1))


def test_exhaustive_search_requires_flag():
    g = Geometry(2)
    with pytest.raises(ValueError):
        exhaustive_h1_search(g)
    with pytest.raises(ValueError):
        exhaustive_h1_search(Geometry(3), exhaustive=True)


def test_exhaustive_search_n1():
    g = Geometry(1)
    found = exhaustive_h1_search(g, exhaustive=True)
    assert len(found) == 8  # every subset of 3 points


def test_classify_all(fam3):
    g = fam3.geometry
    for h in fam3:
        assert classify(h.mask, g) == h.kind
    with pytest.raises(NotAHyperplaneError):
        classify(g.full_mask, g)
    with pytest.raises(NotAHyperplaneError):
        classify(0b110, g)


def test_from_points(fam2):
    g = fam2.geometry
    h = fam2[20]
    assert from_points(h.points, g) == h
    with pytest.raises(NotAHyperplaneError):
        from_points([1, 2], g)


def test_boxplus_examples():
    a, b = perp_hyperplane(encode("IX")), perp_hyperplane(encode("XI"))
    assert boxplus(a, b).key == "C:XX"
    c, h = perp_hyperplane(encode("XZ")), quadric_hyperplane(encode("II"))
    assert boxplus(c, h).key == "H:XZ"
    assert boxplus_kind(quadric_hyperplane(encode("IY")).kind, quadric_hyperplane(encode("YI")).kind).key == "C:YY"
    with pytest.raises(ValueError):
        boxplus(a, a)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 126), st.integers(0, 126))
def test_boxplus_laws_n3(i, j):
    fam = _fam3()
    if i == j:
        return
    a, b = fam[i], fam[j]
    g = fam.geometry
    c = boxplus(a, b)
    assert c.mask == boxplus_mask(a, b, g)
    assert a.mask & c.mask == a.mask & b.mask
    assert boxplus(a, c) == b
    assert satisfies_h1(c, g)


_CACHE = {}


def _fam3():
    if 3 not in _CACHE:
        _CACHE[3] = HyperplaneFamily(3)
    return _CACHE[3]


@pytest.mark.parametrize("n", [2, 3])
def test_lower_bound_and_contained_lines(n):
    fam = HyperplaneFamily(n)
    hits = fam.line_hits()
    for h, contained in zip(fam, hits[:, 3].tolist()):
        assert 3 * h.size >= n_points(n)
        assert contained_line_formula(h.size, n) == contained
    assert contained_line_count(fam[0], fam.geometry) == hits[0, 3]


def test_contained_line_formula_values():
    # perp-set at n=2 holds 3 lines through p, grids hold 6 lines, ovoids none
    assert contained_line_formula(7, 2) == 3 and contained_line_formula(9, 2) == 6 and contained_line_formula(5, 2) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_antichain(n):
    fam = HyperplaneFamily(n)
    assert fam.containment_violations() == []


def test_antichain_brute_force_n2(fam2):
    ms = fam2.mask_ints
    assert not any(a & ~b == 0 for a, b in combinations(ms, 2))
    assert not any(b & ~a == 0 for a, b in combinations(ms, 2))


def test_kind_mask_matches_family(fam2):
    for i, h in enumerate(fam2):
        assert kind_mask(h.kind) == fam2.mask_ints[i]
        assert fam2.index_of(h.kind) == i


def test_to_json(fam2):
    obj = fam2[fam2.index(1, 3)].to_json()
    assert obj == {"kind": "quadric", "p": "IY", "arf": 1, "size": 5, "points": obj["points"]}
    assert len(obj["points"]) == 5 and all(len(p) == 2 for p in obj["points"])
    assert fam2[0].to_json()["arf"] is None and fam2[0].to_json()["kind"] == "perp"
