"""Geometric hyperplanes of G_n: perp-sets C_p and quadrics H_p.

Every hyperplane is one of

* ``C_p = {x in P : <p, x> = 0}`` for ``p != 0``, or
* ``H_p = {x in P : Q_0(x) + <p, x> = 0}`` for any ``p``,

and the ``boxplus`` of two hyperplanes (complement of their symmetric
difference) follows ``C+C -> C``, ``H+H -> C``, ``C+H -> H`` with defining
vectors adding.  This module builds them, recognises them from point sets and
checks the ``(H1)`` condition.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from . import _kernels
from .gf2core import DimensionError, PauliVector, Vec, _bits, _form, _q0, _swap, check_qubits
from .geometry import Geometry, form_table, n_points, points_of, q0_table
from .pauli_codec import decode, encode

# enumerate_hyperplanes materializes 2 * 16**n bits; keep it bounded
ENUM_MAX_N = 6


class NotAHyperplaneError(ValueError):
    pass


class Kind(enum.IntEnum):
    PERP = 0
    QUADRIC = 1


@dataclass(frozen=True, order=True)
class HyperplaneKind:
    kind: Kind
    p: int
    n: int = field(compare=False)

    def __post_init__(self):
        if self.kind is Kind.PERP and self.p == 0:
            raise NotAHyperplaneError("C_0 is the whole point set, not a hyperplane")

    @property
    def arf(self) -> int | None:
        return _q0(self.p) if self.kind is Kind.QUADRIC else None

    @property
    def tag(self) -> str:
        """'C', 'H0' or 'H1'."""
        return "C" if self.kind is Kind.PERP else f"H{self.arf}"

    @property
    def key(self) -> str:
        return ("C:" if self.kind is Kind.PERP else "H:") + decode(self.p, self.n)

    @classmethod
    def parse(cls, text: str) -> "HyperplaneKind":
        """Inverse of :attr:`key`, e.g. ``"C:XZ"`` or ``"H:II"``."""
        try:
            head, label = text.split(":")
            kind = {"C": Kind.PERP, "H": Kind.QUADRIC}[head.strip().upper()]
        except (ValueError, KeyError):
            raise ValueError(f"bad hyperplane key {text!r}; expected C:<label> or H:<label>") from None
        v = encode(label.strip())
        return cls(kind, v.bits, v.n)

    def __str__(self) -> str:
        return self.key


def _membership_row(kind: Kind, p: int, n: int) -> np.ndarray:
    ft_row = form_table_row(p, n)
    if kind is Kind.PERP:
        row = ft_row == 0
    else:
        row = (q0_table(n) ^ ft_row) == 0
    row[0] = False
    return row


def form_table_row(p: int, n: int) -> np.ndarray:
    xs = np.arange(4**n, dtype=np.uint64)
    return (np.bitwise_count(np.uint64(_swap(p)) & xs) & 1).astype(np.uint8)


def kind_mask(kind: HyperplaneKind) -> int:
    row = _membership_row(kind.kind, kind.p, kind.n)
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Hyperplane:
    kind: HyperplaneKind
    mask: int = field(repr=False)

    @classmethod
    def from_kind(cls, kind: HyperplaneKind) -> "Hyperplane":
        return cls(kind, kind_mask(kind))

    @property
    def n(self) -> int:
        return self.kind.n

    @property
    def key(self) -> str:
        return self.kind.key

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def points(self) -> list[int]:
        return points_of(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def to_json(self) -> dict:
        return {
            "kind": "perp" if self.kind.kind is Kind.PERP else "quadric",
            "p": decode(self.kind.p, self.n),
            "arf": self.kind.arf,
            "size": self.size,
            "points": [decode(x, self.n) for x in self.points],
        }


def _vec_and_n(p: Vec, n: int | None) -> tuple[int, int]:
    if isinstance(p, PauliVector):
        if n is not None and n != p.n:
            raise DimensionError(f"vector has n={p.n}, asked for n={n}")
        n = p.n
    if n is None:
        raise ValueError("an int vector needs an explicit n")
    check_qubits(n)
    b = _bits(p)
    if b >> (2 * n):
        raise DimensionError(f"{b:#x} is not in V_{n}")
    return b, n


def perp_hyperplane(p: Vec, n: int | None = None) -> Hyperplane:
    """``C_p``: all points commuting with ``p`` (``p`` included)."""
    b, n = _vec_and_n(p, n)
    if b == 0:
        raise NotAHyperplaneError("C_0 is the whole point set")
    return Hyperplane.from_kind(HyperplaneKind(Kind.PERP, b, n))


def quadric_hyperplane(p: Vec, n: int | None = None) -> Hyperplane:
    """``H_p``: nonzero zeros of ``Q_p``."""
    b, n = _vec_and_n(p, n)
    return Hyperplane.from_kind(HyperplaneKind(Kind.QUADRIC, b, n))


def expected_size(kind: HyperplaneKind) -> int:
    n = kind.n
    if kind.kind is Kind.PERP:
        return 4**n // 2 - 1
    if kind.arf == 0:
        return (4**n + 2**n) // 2 - 1
    return (4**n - 2**n) // 2 - 1


def _as_mask(s) -> int:
    if isinstance(s, Hyperplane):
        return s.mask
    if isinstance(s, int):
        return s
    m = 0
    for x in s:
        m |= 1 << int(x)
    return m


def line_hit_histogram(s, g: Geometry) -> np.ndarray:
    """Counts of lines meeting ``s`` in 0, 1, 2 and 3 points."""
    arr = _kernels.ints_to_array([_as_mask(s)], g.size)
    return _kernels.backend.line_hits(arr, g.lines_array)[0]


def satisfies_h1(s, g: Geometry) -> bool:
    """True iff every line meets ``s`` (bitset, point iterable or Hyperplane) in 1 or 3 points."""
    mask = _as_mask(s)
    if mask & ~g.full_mask:
        raise ValueError("set contains vectors outside P")
    h = line_hit_histogram(mask, g)
    return h[0] == 0 and h[2] == 0


def contained_line_count(h, g: Geometry) -> int:
    return int(line_hit_histogram(h, g)[3])


def contained_line_formula(size: int, n: int) -> Fraction:
    """Lines inside an (H1)-set of the given size: (4^(n-1)-1)(|H| - |P|/3)/2."""
    return Fraction(4 ** (n - 1) - 1) * (Fraction(size) - Fraction(n_points(n), 3)) / 2


def boxplus_mask(a, b, g: Geometry) -> int:
    """Set-level ``A boxplus B``: points in both or in neither."""
    return g.full_mask & ~(_as_mask(a) ^ _as_mask(b))


def boxplus_kind(a: HyperplaneKind, b: HyperplaneKind) -> HyperplaneKind:
    if a.n != b.n:
        raise DimensionError("hyperplanes from different geometries")
    if a == b:
        raise ValueError("boxplus of a hyperplane with itself is the whole point set")
    return HyperplaneKind(Kind(a.kind ^ b.kind), a.p ^ b.p, a.n)


def boxplus(a: Hyperplane, b: Hyperplane) -> Hyperplane:
    """Third hyperplane on the Veldkamp line through ``a`` and ``b``.

    Computed both from the point sets and from the defining vectors; the two
    must agree.
    """
    if a.n != b.n:
        raise DimensionError("hyperplanes from different geometries")
    if a.mask == b.mask:
        raise ValueError("boxplus of a hyperplane with itself is the whole point set")
    kind = boxplus_kind(a.kind, b.kind)
    mask = ((1 << 4**a.n) - 2) & ~(a.mask ^ b.mask)
    if mask != kind_mask(kind):
        raise AssertionError(f"set-level boxplus disagrees with {kind.key}")
    return Hyperplane(kind, mask)


def classify(s, g: Geometry) -> HyperplaneKind:
    """Identify an (H1)-set as ``C_p`` or ``H_p``.

    The complement indicator ``x -> [x not in s]`` is ``<p, x>`` for ``C_p``
    and ``Q_0(x) + <p, x>`` for ``H_p``.  Both are linear on the basis vectors
    (``Q_0`` vanishes there), which fixes ``p``; one ``Y`` vector decides the
    kind.  If the reconstructed candidate does not match, all candidates are
    tried before giving up.
    """
    mask = _as_mask(s)
    n = g.n
    if mask & ~g.full_mask:
        raise ValueError("set contains vectors outside P")
    if mask == g.full_mask:
        raise NotAHyperplaneError("the whole point set is not a hyperplane")
    sw = 0
    for k in range(2 * n):
        if not (mask >> (1 << k)) & 1:
            sw |= 1 << k
    p = _swap(sw)
    y = 3 << (2 * n - 2)
    outside_y = not (mask >> y) & 1
    kind = Kind.PERP if outside_y == _form(p, y) else Kind.QUADRIC
    if not (kind is Kind.PERP and p == 0):
        cand = HyperplaneKind(kind, p, n)
        if kind_mask(cand) == mask:
            return cand
    for cand in _all_kinds(n):
        if kind_mask(cand) == mask:
            return cand
    raise NotAHyperplaneError("set matches no C_p or H_p")


def _all_kinds(n: int):
    for p in range(1, 4**n):
        yield HyperplaneKind(Kind.PERP, p, n)
    for p in range(4**n):
        yield HyperplaneKind(Kind.QUADRIC, p, n)


class HyperplaneFamily:
    """All ``2 * 4^n - 1`` hyperplanes of G_n in canonical order.

    Order: ``C_p`` for ``p = 1 .. 4^n - 1``, then ``H_p`` for ``p = 0 .. 4^n - 1``.
    ``masks`` is the packed ``(count, words)`` uint64 array used by the kernels.
    For ``n = 1`` the geometry has no lines and the family is flagged
    ``degenerate``: its 7 members are exactly the proper subsets of P.
    """

    def __init__(self, n: int):
        self.n = check_qubits(n, hi=ENUM_MAX_N)
        self.geometry = Geometry(n)
        self.degenerate = n == 1
        size = 4**n
        ft = form_table(n)
        q = q0_table(n)
        rows = np.concatenate([ft[1:] == 0, (ft ^ q[None, :]) == 0])
        rows[:, 0] = False
        self.masks = _kernels.bool_rows_to_array(rows)
        self.kinds = np.concatenate([np.zeros(size - 1, np.int64), np.ones(size, np.int64)])
        self.ps = np.concatenate([np.arange(1, size), np.arange(size)]).astype(np.int64)
        self.arfs = np.where(self.kinds == 1, q[self.ps], -1)
        self.full = _kernels.ints_to_array([self.geometry.full_mask], size)[0]

    def __len__(self) -> int:
        return len(self.kinds)

    def index(self, kind: int, p) -> np.ndarray | int:
        """Row of ``C_p`` (kind 0) or ``H_p`` (kind 1); -1 for the non-hyperplane ``C_0``."""
        size = 4**self.n
        kind = np.asarray(kind)
        p = np.asarray(p)
        out = np.where(kind == 0, p - 1, size - 1 + p)
        return out if out.ndim else int(out)

    def index_of(self, kind: HyperplaneKind) -> int:
        return int(self.index(int(kind.kind), kind.p))

    @cached_property
    def mask_ints(self) -> list[int]:
        return _kernels.array_to_ints(self.masks)

    def kind_at(self, i: int) -> HyperplaneKind:
        return HyperplaneKind(Kind(int(self.kinds[i])), int(self.ps[i]), self.n)

    def __getitem__(self, i: int) -> Hyperplane:
        return Hyperplane(self.kind_at(i), self.mask_ints[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def sizes(self) -> np.ndarray:
        return _kernels.backend.popcounts(self.masks)

    def line_hits(self) -> np.ndarray:
        return _kernels.backend.line_hits(self.masks, self.geometry.lines_array)

    def tags(self) -> np.ndarray:
        """Per-row tag code: 0 = C, 1 = H with arf 0, 2 = H with arf 1."""
        return np.where(self.kinds == 0, 0, 1 + self.arfs)

    def containment_violations(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)``, ``i != j``, with hyperplane i inside hyperplane j."""
        counts = _kernels.backend.superset_counts(self.masks, self.masks)
        out = []
        for i in np.nonzero(counts != 1)[0]:
            mi = self.mask_ints[i]
            out += [(int(i), j) for j, mj in enumerate(self.mask_ints) if j != i and not mi & ~mj]
        return out


def enumerate_hyperplanes(n: int) -> HyperplaneFamily:
    return HyperplaneFamily(n)


def hyperplane_type_counts(n: int) -> dict[str, tuple[int, int]]:
    """Tag -> (copies, points per hyperplane) from the closed formulas."""
    return {
        "C": (4**n - 1, 4**n // 2 - 1),
        "H0": ((4**n + 2**n) // 2, (4**n + 2**n) // 2 - 1),
        "H1": ((4**n - 2**n) // 2, (4**n - 2**n) // 2 - 1),
    }


def h1_sets(n: int) -> list[int]:
    """Bitsets of every subset satisfying (H1): the hyperplanes plus P itself."""
    fam = HyperplaneFamily(n)
    return fam.mask_ints + [fam.geometry.full_mask]


EXHAUSTIVE_MAX_N = 2


def exhaustive_h1_search(g: Geometry, exhaustive: bool = False) -> list[int]:
    """Brute force over all ``2^|P|`` subsets; returns the (H1)-sets as bitsets.

    Only offered for n <= 2 and only with ``exhaustive=True``.
    """
    if not exhaustive:
        raise ValueError("exhaustive subset search must be requested explicitly")
    if g.n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive subset search is limited to n <= {EXHAUSTIVE_MAX_N}")
    # compact indexing: point x -> bit x - 1
    lms = np.array([(1 << (a - 1)) | (1 << (b - 1)) | (1 << (c - 1)) for a, b, c in g.lines],
                   dtype=np.uint64)
    found = _kernels.backend.h1_subset_search(lms, g.n_points)
    return sorted(int(s) << 1 for s in found)


def from_points(points: Iterable[int], g: Geometry) -> Hyperplane:
    mask = _as_mask(points)
    if not satisfies_h1(mask, g) or mask == g.full_mask:
        raise NotAHyperplaneError("point set is not a geometric hyperplane")
    return Hyperplane(classify(mask, g), mask)
