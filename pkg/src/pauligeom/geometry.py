"""The incidence structure of the n-qubit Pauli group.

Points are the nonzero vectors of V_n; lines are the triples ``{a, b, a+b}``
of pairwise commuting points.  Point sets are handled as Python-int bitsets
indexed by the packed vector value (bit 0, the identity, is never set).
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .gf2core import DimensionError, PauliVector, Vec, _bits, _form, _swap, check_qubits
from .pauli_codec import decode

Line = tuple[int, int, int]

# lines are materialized eagerly up to this n
EAGER_LINES_MAX_N = 4


def n_points(n: int) -> int:
    return 4**n - 1


def n_lines(n: int) -> int:
    return (4**n - 1) * (4 ** (n - 1) - 1) // 3


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << int(p)
    return m


def points_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def form_table(n: int) -> np.ndarray:
    """``T[x, y] = <x, y>`` for all of V_n, as uint8."""
    xs = np.arange(4**n, dtype=np.uint64)
    sw = np.array([_swap(int(x)) for x in xs], dtype=np.uint64)
    return (np.bitwise_count(sw[:, None] & xs[None, :]) & 1).astype(np.uint8)


def q0_table(n: int) -> np.ndarray:
    xs = np.arange(4**n, dtype=np.uint64)
    even = np.uint64(int("01" * n, 2))
    return (np.bitwise_count(xs & (xs >> np.uint64(1)) & even) & 1).astype(np.uint8)


class Geometry:
    """The geometry G_n = (P, L, membership)."""

    def __init__(self, n: int):
        self.n = check_qubits(n)
        self.size = 4**n  # |V_n|

    def __repr__(self) -> str:
        return f"Geometry(n={self.n})"

    @property
    def points(self) -> range:
        return range(1, self.size)

    @property
    def full_mask(self) -> int:
        """Bitset of all of P."""
        return (1 << self.size) - 2

    def _check(self, *vs: Vec) -> list[int]:
        out = []
        for v in vs:
            if isinstance(v, PauliVector) and v.n != self.n:
                raise DimensionError(f"{v!r} is not in V_{self.n}")
            b = _bits(v)
            if b >> (2 * self.n):
                raise DimensionError(f"{b:#x} is not in V_{self.n}")
            out.append(b)
        return out

    def _check_point(self, p: Vec) -> int:
        (b,) = self._check(p)
        if b == 0:
            raise ValueError("the zero vector is not a point")
        return b

    def iter_lines(self) -> Iterator[Line]:
        """Lines in canonical order: sorted triples, ascending by smallest then middle point."""
        for a in range(1, self.size):
            sa = _swap(a)
            for b in range(a + 1, self.size):
                if not (sa & b).bit_count() & 1 and a ^ b > b:
                    yield (a, b, a ^ b)

    @cached_property
    def _lines(self) -> list[Line]:
        return list(self.iter_lines())

    @property
    def lines(self) -> list[Line] | Iterator[Line]:
        """All lines; a list up to n = 4, a fresh iterator above that unless already cached."""
        if self.n <= EAGER_LINES_MAX_N or "_lines" in self.__dict__:
            return self._lines
        return self.iter_lines()

    @cached_property
    def lines_array(self) -> np.ndarray:
        """``(|L|, 3)`` int64 array of the canonical line triples."""
        if self.n == 1:
            return np.zeros((0, 3), dtype=np.int64)
        ft = form_table(self.n)
        chunks = []
        for a in range(1, self.size):
            bs = np.arange(a + 1, self.size, dtype=np.int64)
            cs = bs ^ a
            keep = (ft[a, a + 1 :] == 0) & (cs > bs)
            if keep.any():
                bs = bs[keep]
                chunks.append(np.stack([np.full_like(bs, a), bs, cs[keep]], axis=1))
        return np.concatenate(chunks) if chunks else np.zeros((0, 3), dtype=np.int64)

    @property
    def n_points(self) -> int:
        return n_points(self.n)

    @property
    def n_lines(self) -> int:
        return n_lines(self.n)

    def is_line(self, a: Vec, b: Vec, c: Vec) -> bool:
        a, b, c = self._check(a, b, c)
        if 0 in (a, b, c) or len({a, b, c}) < 3:
            return False
        return a ^ b ^ c == 0 and _form(a, b) == 0

    def perp_set(self, p: Vec) -> set[int]:
        p = self._check_point(p)
        sp = _swap(p)
        return {x for x in self.points if not (sp & x).bit_count() & 1}

    def perp_mask(self, p: Vec) -> int:
        return mask_of(self.perp_set(p))

    def lines_through(self, p: Vec) -> set[Line]:
        p = self._check_point(p)
        out = set()
        for x in self.perp_set(p):
            if x != p:
                out.add(tuple(sorted((p, x, p ^ x))))
        return out

    def collinearity_graph(self):
        """networkx graph on the points; edges join distinct commuting points."""
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.points)
        for a in self.points:
            sa = _swap(a)
            for b in range(a + 1, self.size):
                if not (sa & b).bit_count() & 1:
                    g.add_edge(a, b)
        return g

    def contained_lines(self, mask: int) -> list[Line]:
        """Lines with all three points in the bitset."""
        return [
            l for l in self.lines
            if (mask >> l[0]) & (mask >> l[1]) & (mask >> l[2]) & 1
        ]

    def label(self, v: int) -> str:
        return decode(v, self.n)


def build_geometry(n: int) -> Geometry:
    return Geometry(n)
