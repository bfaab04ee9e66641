"""Sp(2n, 2) acting on points and hyperplanes through symplectic transvections."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf2core import (DimensionError, PauliVector, Vec, _bits, _form, _q0, _qp, _swap,
                      _transvect, check_qubits, form_matrix)
from .hyperplanes import Hyperplane, HyperplaneKind, Kind, kind_mask
from .pauli_codec import decode


@dataclass(frozen=True)
class Transvection:
    p: int
    n: int

    def __post_init__(self):
        if self.p == 0:
            raise ValueError("the zero vector defines the identity, not a transvection")
        if self.p >> (2 * self.n):
            raise DimensionError(f"{self.p:#x} is not in V_{self.n}")

    def __call__(self, x: int) -> int:
        return _transvect(self.p, x)

    @property
    def label(self) -> str:
        return decode(self.p, self.n)


@dataclass(frozen=True)
class SymplecticMap:
    """A word of transvections; ``word[0]`` is applied last (right-to-left)."""

    word: tuple[int, ...]
    n: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def identity(cls, n: int) -> "SymplecticMap":
        return cls((), n)

    @classmethod
    def of(cls, ps: Sequence[Vec], n: int) -> "SymplecticMap":
        word = tuple(_bits(p) for p in ps)
        for p in word:
            Transvection(p, n)
        return cls(word, n)

    def __call__(self, x: int) -> int:
        for p in reversed(self.word):
            x = _transvect(p, x)
        return x

    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        if self.n != other.n:
            raise DimensionError("maps on different spaces")
        return SymplecticMap(self.word + other.word, self.n)

    @property
    def labels(self) -> list[str]:
        return [decode(p, self.n) for p in self.word]

    def matrix(self) -> np.ndarray:
        """2n x 2n matrix; column j is the image of the j-th coordinate vector."""
        if "m" not in self._cache:
            m = 2 * self.n
            mat = np.zeros((m, m), dtype=np.uint8)
            for j in range(m):
                img = self(1 << (m - 1 - j))
                for i in range(m):
                    mat[i, j] = (img >> (m - 1 - i)) & 1
            self._cache["m"] = mat
        return self._cache["m"]

    def is_involution(self) -> bool:
        m = 2 * self.n
        return all(self(self(1 << k)) == 1 << k for k in range(m))


def apply_point(m: SymplecticMap, x: Vec) -> Vec:
    if isinstance(x, PauliVector):
        if x.n != m.n:
            raise DimensionError("vector and map on different spaces")
        return PauliVector(m(x.bits), x.n)
    if _bits(x) >> (2 * m.n):
        raise DimensionError(f"{x:#x} is not in V_{m.n}")
    return m(int(x))


def act_on_kind(p: int, kind: HyperplaneKind) -> HyperplaneKind:
    """Closed form: ``t_p C_a = C_{t_p a}``, ``t_p H_a = H_{a + (1 + Q_a(p)) p}``."""
    if kind.kind is Kind.PERP:
        return HyperplaneKind(Kind.PERP, _transvect(p, kind.p), kind.n)
    a = kind.p
    return HyperplaneKind(Kind.QUADRIC, a ^ p if not _qp(a, p) else a, kind.n)


def act_word_on_kind(m: SymplecticMap, kind: HyperplaneKind) -> HyperplaneKind:
    for p in reversed(m.word):
        kind = act_on_kind(p, kind)
    return kind


def image_mask(p: int, mask: int, n: int) -> int:
    """Elementwise image of a point bitset under ``t_p``."""
    xs = np.arange(4**n, dtype=np.int64)
    bits = np.frombuffer(mask.to_bytes(4**n // 8 or 1, "little"), dtype=np.uint8)
    member = np.unpackbits(bits, bitorder="little")[: 4**n].astype(bool)
    sw = np.int64(_swap(p))
    flip = (np.bitwise_count(xs & sw) & 1).astype(bool)
    imgs = np.where(flip, xs ^ p, xs)
    out = np.zeros(4**n, dtype=bool)
    out[imgs[member]] = True
    return int.from_bytes(np.packbits(out, bitorder="little").tobytes(), "little")


def apply_hyperplane(t: Transvection, h: Hyperplane, check: bool = True) -> Hyperplane:
    """Image of ``h`` under ``t``; with ``check`` the closed form is compared to the pointwise image."""
    if t.n != h.n:
        raise DimensionError("transvection and hyperplane on different spaces")
    kind = act_on_kind(t.p, h.kind)
    mask = kind_mask(kind)
    if check and mask != image_mask(t.p, h.mask, h.n):
        raise AssertionError(f"action formula fails for t_{t.label} on {h.key}")
    return Hyperplane(kind, mask)


def orbit_hyperplanes(seed: HyperplaneKind | Hyperplane) -> list[HyperplaneKind]:
    """BFS closure of ``seed`` under all ``4^n - 1`` transvections, in discovery order."""
    kind = seed.kind if isinstance(seed, Hyperplane) else seed
    n = kind.n
    if n < 2:
        raise ValueError("orbits are computed for n >= 2")
    seen = {kind}
    out = [kind]
    queue = deque([kind])
    while queue:
        k = queue.popleft()
        for p in range(1, 4**n):
            img = act_on_kind(p, k)
            if img not in seen:
                seen.add(img)
                out.append(img)
                queue.append(img)
    return out


def hyperplane_orbits(n: int) -> list[list[HyperplaneKind]]:
    """Partition of all hyperplanes of G_n into orbits."""
    check_qubits(n, lo=2)
    from .hyperplanes import _all_kinds

    left = set(_all_kinds(n))
    orbits = []
    for k in sorted(left):
        if k in left:
            orb = orbit_hyperplanes(k)
            left.difference_update(orb)
            orbits.append(orb)
    return orbits


class SwapError(RuntimeError):
    pass


def find_swap(a: Vec, b: Vec, f: Vec, n: int | None = None) -> SymplecticMap:
    """An involution fixing ``H_f`` and exchanging ``H_a`` and ``H_b``.

    If ``Q_f(a+b) = 1`` this is ``t_{a+b}``.  Otherwise take the smallest
    ``p`` in ``C_{a+b} & H_a`` outside ``H_f``, set ``q = a + b + p`` and
    return ``t_q t_p``.
    """
    if n is None:
        ns = {v.n for v in (a, b, f) if isinstance(v, PauliVector)}
        if len(ns) != 1:
            raise ValueError("pass n or PauliVectors of one dimension")
        n = ns.pop()
    a, b, f = _bits(a), _bits(b), _bits(f)
    if n < 3:
        raise ValueError("find_swap needs n >= 3")
    if len({a, b, f}) < 3:
        raise ValueError("a, b and f must be distinct")
    if _q0(a) != _q0(b):
        raise ValueError("H_a and H_b must have equal Arf invariants")
    if max(a, b, f) >> (2 * n):
        raise DimensionError(f"vectors must lie in V_{n}")
    s = a ^ b
    if _qp(f, s):
        m = SymplecticMap((s,), n)
    else:
        p = next((x for x in range(1, 4**n)
                  if not _form(s, x) and not _qp(a, x) and _qp(f, x)), None)
        if p is None:
            raise SwapError("no point in C_{a+b} & H_a outside H_f")
        m = SymplecticMap((s ^ p, p), n)
    return m


def _act_quadric(word: tuple[int, ...], a: int) -> int:
    for p in reversed(word):
        if not _qp(a, p):
            a ^= p
    return a


def verify_swap(m: SymplecticMap, a: int, b: int, f: int) -> bool:
    """``m`` swaps ``H_a``, ``H_b``, fixes ``H_f`` and squares to the identity."""
    w = m.word
    return (_act_quadric(w, a) == b and _act_quadric(w, b) == a
            and _act_quadric(w, f) == f and m.is_involution())


def is_symplectic(m) -> bool:
    """``M^T J M == J`` over GF(2)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even size, got shape {m.shape}")
    j = form_matrix(m.shape[0] // 2).astype(np.int64)
    mm = m.astype(np.int64) % 2
    return bool(np.array_equal((mm.T @ j @ mm) % 2, j))


def count_graph_automorphisms(adj: dict) -> int:
    """Brute-force backtracking count of automorphisms of a simple graph.

    ``adj`` maps each vertex to the set of its neighbours.
    """
    verts = list(adj)
    # order vertices so each one has as many earlier neighbours as possible
    order = [verts[0]]
    placed = {verts[0]}
    while len(order) < len(verts):
        nxt = max((v for v in verts if v not in placed),
                  key=lambda v: (len(adj[v] & placed), len(adj[v])))
        order.append(nxt)
        placed.add(nxt)
    degree = {v: len(adj[v]) for v in verts}
    image: dict = {}
    used: set = set()

    def extend(k: int) -> int:
        if k == len(order):
            return 1
        v = order[k]
        total = 0
        for w in verts:
            if w in used or degree[w] != degree[v]:
                continue
            if all((u in adj[v]) == (image[u] in adj[w]) for u in order[:k]):
                image[v] = w
                used.add(w)
                total += extend(k + 1)
                used.discard(w)
                del image[v]
        return total

    return extend(0)


def sp_order(n: int) -> int:
    """``|Sp(2n, 2)| = 2^(n^2) * prod (4^i - 1)``."""
    out = 2 ** (n * n)
    for i in range(1, n + 1):
        out *= 4**i - 1
    return out


def transport_pair(a1: int, b1: int, a2: int, b2: int, n: int) -> SymplecticMap:
    """A map sending ``H_a1 -> H_a2`` and ``H_b1 -> H_b2``, built from two swaps.

    All four quadrics must share one Arf invariant, with ``a1 != b1`` and
    ``a2 != b2``.
    """
    if a1 == b1 or a2 == b2:
        raise ValueError("pairs must consist of distinct quadrics")
    if len({_q0(a1), _q0(b1), _q0(a2), _q0(b2)}) != 1:
        raise ValueError("all four quadrics need the same Arf invariant")
    first = SymplecticMap.identity(n)
    if a1 != a2:
        f = b1 if b1 != a2 else next(x for x in range(4**n) if x not in (a1, a2))
        first = find_swap(a1, a2, f, n)
    b_mid = _act_quadric(first.word, b1)
    second = SymplecticMap.identity(n)
    if b_mid != b2:
        second = find_swap(b_mid, b2, a2, n)
    return second @ first


def maps_pair(m: SymplecticMap, a1: int, b1: int, a2: int, b2: int) -> bool:
    return _act_quadric(m.word, a1) == a2 and _act_quadric(m.word, b1) == b2
