"""Pauli labels <-> packed vectors, and sign-tracked products of real Pauli operators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2core import DimensionError, PauliVector, Vec, _bits

LETTERS = "IXZY"  # index == 2-bit code (a, b): I=00, X=01, Z=10, Y=11
_CODE = {c: i for i, c in enumerate(LETTERS)}

_MATRICES = {
    "I": np.array([[1, 0], [0, 1]]),
    "X": np.array([[0, 1], [1, 0]]),
    "Z": np.array([[1, 0], [0, -1]]),
}
_MATRICES["Y"] = _MATRICES["Z"] @ _MATRICES["X"]


def _build_sign_table() -> dict[tuple[str, str], tuple[int, str]]:
    table = {}
    for a in LETTERS:
        for b in LETTERS:
            prod = _MATRICES[a] @ _MATRICES[b]
            for c in LETTERS:
                for s in (1, -1):
                    if np.array_equal(prod, s * _MATRICES[c]):
                        table[a, b] = (s, c)
            if (a, b) not in table:
                raise AssertionError(f"{a}{b} is not a signed Pauli matrix")
    return table


# (a, b) -> (sign, letter) with  a @ b == sign * letter
SIGN_TABLE = _build_sign_table()


def encode(label: str) -> PauliVector:
    """``"XZ"`` -> packed vector with qubit 1 in the most significant slot."""
    if not isinstance(label, str) or not label:
        raise ValueError(f"invalid Pauli label {label!r}")
    bits = 0
    for ch in label:
        try:
            bits = (bits << 2) | _CODE[ch]
        except KeyError:
            raise ValueError(f"invalid character {ch!r} in Pauli label {label!r}") from None
    return PauliVector(bits, len(label))


def encode_n(label: str, n: int) -> PauliVector:
    v = encode(label)
    if v.n != n:
        raise DimensionError(f"label {label!r} has length {v.n}, expected {n}")
    return v


def decode(v: Vec, n: int | None = None) -> str:
    if isinstance(v, PauliVector):
        if n is not None and n != v.n:
            raise DimensionError(f"vector has n={v.n}, asked for n={n}")
        n = v.n
    if n is None:
        raise ValueError("decode of a bare int needs n")
    bits = _bits(v)
    if bits >> (2 * n):
        raise DimensionError(f"{bits:#x} does not fit in V_{n}")
    return "".join(LETTERS[(bits >> (2 * (n - 1 - i))) & 3] for i in range(n))


@dataclass(frozen=True)
class SignedPauli:
    """A real Pauli operator ``sign * label``, sign in {+1, -1}."""

    sign: int
    label: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        encode(self.label)

    @classmethod
    def parse(cls, text: str) -> "SignedPauli":
        text = text.strip()
        if text.startswith("-"):
            return cls(-1, text[1:])
        return cls(1, text.lstrip("+"))

    @property
    def n(self) -> int:
        return len(self.label)

    @property
    def vector(self) -> PauliVector:
        return encode(self.label)

    def is_identity(self) -> bool:
        return set(self.label) == {"I"}

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.label

    def __mul__(self, other: "SignedPauli") -> "SignedPauli":
        return multiply(self, other)


def multiply(a: SignedPauli, b: SignedPauli) -> SignedPauli:
    if a.n != b.n:
        raise DimensionError(f"cannot multiply {a.n}-qubit and {b.n}-qubit operators")
    sign = a.sign * b.sign
    letters = []
    for x, y in zip(a.label, b.label):
        s, c = SIGN_TABLE[x, y]
        sign *= s
        letters.append(c)
    return SignedPauli(sign, "".join(letters))


def product(ops) -> SignedPauli:
    ops = list(ops)
    out = ops[0]
    for op in ops[1:]:
        out = multiply(out, op)
    return out
