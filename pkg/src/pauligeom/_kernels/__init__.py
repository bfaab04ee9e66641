"""Bitset kernels with a compiled backend and a pure-Python fallback.

The Cython module is used when it was built; otherwise, or when
``PAULIGEOM_KERNELS=python`` is set, the reference implementation is used.
Both expose the same functions.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend(name: str | None = None):
    if name is None:
        name = os.environ.get("PAULIGEOM_KERNELS", "").lower() or (
            "cython" if "cython" in _BACKENDS else "python"
        )
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {available_backends()}") from None


backend = get_backend()
BACKEND_NAME = "cython" if backend is _ckernels else "python"


def n_words(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def ints_to_array(masks, nbits: int) -> np.ndarray:
    """Pack Python-int bitsets into a ``(len(masks), words)`` uint64 array."""
    w = n_words(nbits)
    buf = b"".join(int(m).to_bytes(8 * w, "little") for m in masks)
    return np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(masks), w)


def array_to_ints(arr: np.ndarray) -> list[int]:
    arr = np.ascontiguousarray(arr, dtype=np.uint64)
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in arr]


def bool_rows_to_array(rows: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(rows, nbits)`` membership matrix into uint64 words."""
    rows = np.asarray(rows, dtype=bool)
    nbits = rows.shape[1]
    w = n_words(nbits)
    padded = np.zeros((rows.shape[0], 64 * w), dtype=bool)
    padded[:, :nbits] = rows
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)
