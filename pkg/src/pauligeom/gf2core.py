"""Bit-packed symplectic algebra over GF(2).

A vector of V_n = Z_2^{2n} is stored as a plain ``int`` holding the
coordinates ``(a1, b1, a2, b2, ..., an, bn)`` MSB-first: ``a1`` sits at bit
``2n - 1`` and ``bn`` at bit 0.  With this layout a single-qubit ``Z`` is
``0b10`` and ``X`` is ``0b01`` on its qubit slot, and integer order agrees with
label order under ``I < X < Z < Y``.

The hot paths in the rest of the package call the underscore helpers
(``_form``, ``_q0``, ``_transvect``) directly on ints.  The public functions
accept either ints or :class:`PauliVector` and validate dimensions.
"""
from __future__ import annotations

import os
from typing import Iterable, Union

N_MAX = int(os.environ.get("VELDKAMP_NMAX", "12"))


class DimensionError(ValueError):
    """Vectors of different ``n`` were combined, or a vector does not fit in V_n."""


class QubitRangeError(ValueError):
    """The qubit count is outside the range supported by an operation."""


def check_qubits(n: int, lo: int = 1, hi: int | None = None) -> int:
    hi = N_MAX if hi is None else hi
    if not isinstance(n, int) or isinstance(n, bool):
        raise QubitRangeError(f"qubit count must be an int, got {n!r}")
    if not lo <= n <= hi:
        raise QubitRangeError(f"qubit count {n} outside [{lo}, {hi}]")
    return n


def even_mask(n: int) -> int:
    """Bits holding the ``b`` (X-part) coordinates."""
    return int("01" * n, 2) if n else 0


def odd_mask(n: int) -> int:
    """Bits holding the ``a`` (Z-part) coordinates."""
    return int("10" * n, 2) if n else 0


# 64 bits covers every n <= 32, far beyond N_MAX
_EVEN = int("01" * 32, 2)
_ODD = _EVEN << 1


def _swap(x: int) -> int:
    return ((x & _EVEN) << 1) | ((x & _ODD) >> 1)


def _form(x: int, y: int) -> int:
    return (_swap(x) & y).bit_count() & 1


def _q0(x: int) -> int:
    return (x & (x >> 1) & _EVEN).bit_count() & 1


def _qp(p: int, x: int) -> int:
    return _q0(x) ^ _form(p, x)


def _transvect(p: int, x: int) -> int:
    return x ^ p if _form(p, x) else x


class PauliVector:
    """A vector of V_n tagged with its qubit count."""

    __slots__ = ("bits", "n")

    def __init__(self, bits: int, n: int):
        check_qubits(n, hi=max(N_MAX, 1))
        if bits < 0 or bits >> (2 * n):
            raise DimensionError(f"{bits:#x} does not fit in V_{n}")
        self.bits = bits
        self.n = n

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "PauliVector":
        coords = list(coords)
        if len(coords) % 2 or not coords:
            raise DimensionError("coordinate sequence must have positive even length")
        bits = 0
        for c in coords:
            if c not in (0, 1):
                raise ValueError(f"coordinate {c!r} is not a bit")
            bits = (bits << 1) | c
        return cls(bits, len(coords) // 2)

    @property
    def coords(self) -> tuple[int, ...]:
        m = 2 * self.n
        return tuple((self.bits >> (m - 1 - i)) & 1 for i in range(m))

    def __add__(self, other: "PauliVector") -> "PauliVector":
        if not isinstance(other, PauliVector):
            return NotImplemented
        _same_n(self, other)
        return PauliVector(self.bits ^ other.bits, self.n)

    __xor__ = __add__

    def __int__(self) -> int:
        return self.bits

    __index__ = __int__

    def __eq__(self, other) -> bool:
        if isinstance(other, PauliVector):
            return self.bits == other.bits and self.n == other.n
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __lt__(self, other: "PauliVector") -> bool:
        _same_n(self, other)
        return self.bits < other.bits

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __repr__(self) -> str:
        return f"PauliVector({''.join(map(str, self.coords))}, n={self.n})"


Vec = Union[int, PauliVector]


def _same_n(*vs: Vec) -> int | None:
    ns = {v.n for v in vs if isinstance(v, PauliVector)}
    if len(ns) > 1:
        raise DimensionError(f"mismatched qubit counts {sorted(ns)}")
    return ns.pop() if ns else None


def _bits(v: Vec) -> int:
    if isinstance(v, PauliVector):
        return v.bits
    if v < 0:
        raise DimensionError(f"negative vector {v}")
    return int(v)


def _wrap(bits: int, like: tuple[Vec, ...]) -> Vec:
    n = _same_n(*like)
    return PauliVector(bits, n) if n is not None else bits


def symplectic_form(x: Vec, y: Vec) -> int:
    """``<x, y>``: 0 when the Pauli operators commute, 1 when they anticommute."""
    _same_n(x, y)
    return _form(_bits(x), _bits(y))


def q0(x: Vec) -> int:
    """Sum of ``a_i b_i``; 1 exactly for antisymmetric Pauli matrices (odd number of Y)."""
    return _q0(_bits(x))


def qp(p: Vec, x: Vec) -> int:
    """The quadratic form ``Q_p(x) = Q_0(x) + <p, x>``."""
    _same_n(p, x)
    return _qp(_bits(p), _bits(x))


def arf(p: Vec) -> int:
    """Arf invariant of ``Q_p``, which equals ``Q_0(p)``."""
    return _q0(_bits(p))


def transvect(p: Vec, x: Vec) -> Vec:
    """Symplectic transvection ``x -> x + <p, x> p``."""
    _same_n(p, x)
    return _wrap(_transvect(_bits(p), _bits(x)), (p, x))


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank of a family of packed vectors (xor-basis elimination)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def form_matrix(n: int):
    """The 2n x 2n Gram matrix of the form: n diagonal copies of [[0,1],[1,0]]."""
    import numpy as np

    j = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    for i in range(n):
        j[2 * i, 2 * i + 1] = j[2 * i + 1, 2 * i] = 1
    return j


def symplectic_basis(vectors: Iterable[int]) -> list[tuple[int, int]]:
    """Hyperbolic pairs ``(e_i, f_i)`` with ``<e_i, f_i> = 1`` spanning ``vectors``.

    Raises ``ValueError`` if the span is degenerate.
    """
    pool = [v for v in vectors if v]
    pairs: list[tuple[int, int]] = []
    while pool:
        e = pool.pop(0)
        partner = next((i for i, v in enumerate(pool) if _form(e, v)), None)
        if partner is None:
            # e is orthogonal to the whole remaining span, hence radical
            raise ValueError("span is degenerate")
        f = pool.pop(partner)
        rest = []
        for v in pool:
            # project onto the complement of span{e, f}
            v ^= (f if _form(v, e) else 0) ^ (e if _form(v, f) else 0)
            if v:
                rest.append(v)
        pool = rest
        pairs.append((e, f))
    return pairs
