"""Small-n substructures: Mermin squares, ovoids, generalized quadrangles, Wootters set."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .gf2core import _form
from .geometry import Geometry, Line, points_of
from .hyperplanes import (Hyperplane, HyperplaneFamily, Kind, quadric_hyperplane,
                          satisfies_h1)
from .pauli_codec import SignedPauli, decode, encode, product


class WrongHyperplaneError(ValueError):
    pass


class NotAGQError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class GQParameters:
    s: int
    t: int


def _require(h: Hyperplane, n: int, arf: int) -> None:
    if h.n != n or h.kind.kind is not Kind.QUADRIC or h.kind.arf != arf:
        raise WrongHyperplaneError(f"expected an n={n} quadric with arf {arf}, got {h.key}")


def check_gq(points, lines) -> GQParameters:
    """Return ``(s, t)`` if the incidence structure is a generalized quadrangle.

    Checks constant line size ``s + 1``, constant point degree ``t + 1`` and
    that each point off a line is collinear with exactly one of its points.
    """
    points = sorted(set(points))
    lines = [tuple(l) for l in lines]
    if not points or not lines:
        raise NotAGQError("empty incidence structure")
    pset = set(points)
    sizes = {len(l) for l in lines}
    if len(sizes) != 1:
        raise NotAGQError("lines of different sizes", witness=sorted(sizes))
    on = {p: [] for p in points}
    for l in lines:
        for p in l:
            if p not in pset:
                raise NotAGQError("line point outside the point set", witness=(p, l))
            on[p].append(l)
    degrees = {len(v) for v in on.values()}
    if len(degrees) != 1:
        raise NotAGQError("points on different numbers of lines", witness=sorted(degrees))
    nbrs = {p: set() for p in points}
    for l in lines:
        for x, y in combinations(l, 2):
            nbrs[x].add(y)
            nbrs[y].add(x)
    for p in points:
        for l in lines:
            if p in l:
                continue
            if sum(1 for x in l if x in nbrs[p]) != 1:
                raise NotAGQError("GQ axiom fails", witness=(p, l))
    return GQParameters(sizes.pop() - 1, degrees.pop() - 1)


def sub_lines(mask: int, g: Geometry) -> list[Line]:
    return g.contained_lines(mask)


@dataclass(frozen=True)
class MerminSquare:
    cells: tuple[tuple[SignedPauli, ...], ...]
    row_lines: tuple[Line, ...]
    col_lines: tuple[Line, ...]
    row_products: tuple[SignedPauli, ...]
    col_products: tuple[SignedPauli, ...]

    @property
    def negative_line_count(self) -> int:
        return sum(p.sign < 0 for p in self.row_products + self.col_products)

    def render(self) -> str:
        width = max(len(str(c)) for row in self.cells for c in row)
        out = []
        for row, prod in zip(self.cells, self.row_products):
            out.append("  ".join(str(c).rjust(width) for c in row) + f"   | {_sign(prod)}")
        out.append("  ".join("-" * width for _ in self.cells[0]))
        out.append("  ".join(_sign(p).rjust(width) for p in self.col_products))
        return "\n".join(out)

    def to_json(self) -> dict:
        return {
            "cells": [[str(c) for c in row] for row in self.cells],
            "row_products": [str(p) for p in self.row_products],
            "col_products": [str(p) for p in self.col_products],
            "negative_line_count": self.negative_line_count,
        }


def _sign(p: SignedPauli) -> str:
    return ("-" if p.sign < 0 else "+") + "I"


def extract_grid(h: Hyperplane) -> MerminSquare:
    """Arrange a two-qubit arf-0 quadric (9 points, 6 lines) as a 3 x 3 square."""
    _require(h, 2, 0)
    g = Geometry(2)
    lines = sorted(g.contained_lines(h.mask))
    if h.size != 9 or len(lines) != 6:
        raise AssertionError(f"{h.key} is not a 9-point, 6-line grid")
    first = lines[0]
    rows = [l for l in lines if l == first or not set(l) & set(first)]
    cols = [l for l in lines if l not in rows]
    if len(rows) != 3 or len(cols) != 3 or any(set(a) & set(b) for a, b in combinations(rows, 2)):
        raise AssertionError("lines do not split into two parallel classes")
    cells = []
    for r in rows:
        row = []
        for c in cols:
            (x,) = set(r) & set(c)
            row.append(SignedPauli(1, decode(x, 2)))
        cells.append(tuple(row))
    row_products = tuple(product(row) for row in cells)
    col_products = tuple(product(col) for col in zip(*cells))
    for p in row_products + col_products:
        if not p.is_identity():
            raise AssertionError("a row or column does not multiply to +-I")
    return MerminSquare(tuple(cells), tuple(rows), tuple(cols), row_products, col_products)


def extract_ovoid(h: Hyperplane) -> list[SignedPauli]:
    """The 5 pairwise anticommuting operators of a two-qubit arf-1 quadric."""
    _require(h, 2, 1)
    pts = h.points
    if any(not _form(x, y) for x, y in combinations(pts, 2)):
        raise AssertionError(f"{h.key} has a commuting pair")
    return [SignedPauli(1, decode(x, 2)) for x in pts]


def gq24_sections(h: Hyperplane, family: HyperplaneFamily | None = None) -> Counter:
    """Histogram of ``h & H'`` over all other hyperplanes ``H'`` of G_3.

    Keys are ``(section size, (s, t) or None, satisfies (H1) inside h)``.
    """
    _require(h, 3, 1)
    fam = family or HyperplaneFamily(3)
    g = fam.geometry
    inner = sub_lines(h.mask, g)
    hist = Counter()
    for other in fam:
        if other.kind == h.kind:
            continue
        sec = h.mask & other.mask
        pts = points_of(sec)
        h1 = all(sum((sec >> x) & 1 for x in l) in (1, 3) for l in inner)
        sec_lines = [l for l in inner if all((sec >> x) & 1 for x in l)]
        try:
            params = check_gq(pts, sec_lines)
            key = (params.s, params.t)
        except NotAGQError:
            key = None
        hist[len(pts), key, h1] += 1
    return hist


def wootters_selfdual(n: int) -> Hyperplane:
    """``H_{YY...Y}``: operators with an even number of non-identity factors."""
    return quadric_hyperplane(encode("Y" * n))


def even_weight_labels(n: int) -> set[str]:
    g = Geometry(n)
    out = set()
    for x in g.points:
        lab = decode(x, n)
        if (n - lab.count("I")) % 2 == 0:
            out.add(lab)
    return out


def ovoid_is_maximal(h: Hyperplane) -> bool:
    """No further point anticommutes with all points of the ovoid."""
    pts = h.points
    g = Geometry(h.n)
    return not any(all(_form(x, y) for y in pts) for x in g.points if x not in pts)
