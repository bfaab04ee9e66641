"""Reference implementations of the bitset kernels (no compiled code).

Every function takes and returns the same numpy types as the Cython module.
Masks are ``uint64`` arrays of shape ``(rows, words)`` with bit ``p`` of a row
stored at word ``p // 64``, position ``p % 64``.
"""
from __future__ import annotations

import numpy as np


def _rows_as_ints(masks: np.ndarray) -> list[int]:
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in masks]


def popcounts(masks):
    return np.array([m.bit_count() for m in _rows_as_ints(masks)], dtype=np.int64)


def pair_scan(masks, full, ii, jj, kk):
    rows = _rows_as_ints(masks)
    full_int = _rows_as_ints(np.asarray(full, dtype=np.uint64)[None, :])[0]
    m = len(ii)
    core = np.zeros(m, dtype=np.int32)
    ok = np.zeros(m, dtype=np.uint8)
    for t, (i, j, k) in enumerate(zip(ii.tolist(), jj.tolist(), kk.tolist())):
        a, b = rows[i], rows[j]
        core[t] = (a & b).bit_count()
        ok[t] = k >= 0 and (full_int & ~(a ^ b)) == rows[k]
    return core, ok


def pair_superset_counts(masks, ii, jj):
    rows = _rows_as_ints(masks)
    out = np.zeros(len(ii), dtype=np.int32)
    for t, (i, j) in enumerate(zip(ii.tolist(), jj.tolist())):
        core = rows[i] & rows[j]
        out[t] = sum(1 for r in rows if not core & ~r)
    return out


def superset_counts(masks, queries):
    rows = _rows_as_ints(masks)
    return np.array(
        [sum(1 for r in rows if not q & ~r) for q in _rows_as_ints(queries)],
        dtype=np.int32,
    )


def line_hits(masks, lines):
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    lines = np.asarray(lines, dtype=np.int64)
    out = np.zeros((masks.shape[0], 4), dtype=np.int64)
    if lines.size == 0:
        return out
    bits = np.unpackbits(masks.astype("<u8").view(np.uint8), axis=1, bitorder="little")
    step = max(1, 2**24 // lines.size)
    for lo in range(0, len(bits), step):
        hits = bits[lo:lo + step][:, lines].sum(axis=2, dtype=np.uint8)
        for k in range(4):
            out[lo:lo + step, k] = (hits == k).sum(axis=1)
    return out


def h1_subset_search(line_masks, npoints):
    if npoints < 0 or npoints > 32:
        raise ValueError("subset search is limited to 32 points")
    lms = [int(x) for x in line_masks]
    found = []
    for s in range(1 << npoints):
        for lm in lms:
            if (s & lm).bit_count() in (0, 2):
                break
        else:
            found.append(s)
    return np.array(found, dtype=np.uint64)
