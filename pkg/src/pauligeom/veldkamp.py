"""Veldkamp lines of G_n: hyperplane triples {A, B, A boxplus B} and their cores.

There are five kinds of line, told apart by the kinds of the three members
and, for three perp-sets, by whether their defining points commute.  The
census scans every unordered pair of hyperplanes with the bitset kernels.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .gf2core import _form, gf2_rank, symplectic_basis
from .geometry import Geometry, form_table, points_of
from .hyperplanes import Hyperplane, HyperplaneFamily, Kind, boxplus
from .pauli_codec import decode

CENSUS_MAX_N = 5


class InconsistentLineError(RuntimeError):
    pass


class VeldkampLineType(enum.Enum):
    # value: (tag, composition as counts of C, H0, H1)
    CCC_ISOTROPIC = ("CCC-isotropic", (3, 0, 0))
    CCC_HYPERBOLIC = ("CCC-hyperbolic", (3, 0, 0))
    CH0H0 = ("CH0H0", (1, 2, 0))
    CH0H1 = ("CH0H1", (1, 1, 1))
    CH1H1 = ("CH1H1", (1, 0, 2))

    @property
    def tag(self) -> str:
        return self.value[0]

    @property
    def composition(self) -> tuple[int, int, int]:
        return self.value[1]

    def core_size(self, n: int) -> int:
        if self is VeldkampLineType.CH0H0:
            return 4 ** (n - 1) + 2 ** (n - 1) - 1
        if self is VeldkampLineType.CH1H1:
            return 4 ** (n - 1) - 2 ** (n - 1) - 1
        return 4 ** (n - 1) - 1

    def count(self, n: int) -> int:
        """Number of Veldkamp lines of this type."""
        q = 4**n - 1
        if self is VeldkampLineType.CCC_ISOTROPIC:
            return q * (4 ** (n - 1) - 1) // 3
        if self is VeldkampLineType.CCC_HYPERBOLIC:
            return 4 ** (n - 1) * q // 3
        if self is VeldkampLineType.CH0H1:
            return 4 ** (n - 1) * q
        # 2^(n-3) (4^n - 1)(2^n +- 2), kept integral for n = 2
        s = 2 if self is VeldkampLineType.CH0H0 else -2
        return q * (2**n + s) * 2**n // 8

    @classmethod
    def from_tag(cls, tag: str) -> "VeldkampLineType":
        for t in cls:
            if t.tag == tag:
                return t
        raise ValueError(f"unknown Veldkamp line type {tag!r}")


LINE_TYPES = list(VeldkampLineType)


def total_lines(n: int) -> int:
    return (2 ** (2 * n + 1) - 1) * (4**n - 1) // 3


@dataclass(frozen=True)
class VeldkampLine:
    members: tuple[Hyperplane, Hyperplane, Hyperplane]
    core: int = field(repr=False)

    @property
    def n(self) -> int:
        return self.members[0].n

    @property
    def core_points(self) -> list[int]:
        return points_of(self.core)

    @property
    def core_size(self) -> int:
        return self.core.bit_count()

    def to_json(self) -> dict:
        return {
            "type": classify_line(self).tag,
            "members": [h.key for h in self.members],
            "core_size": self.core_size,
            "core": [decode(x, self.n) for x in self.core_points],
        }


def veldkamp_line(a: Hyperplane, b: Hyperplane) -> VeldkampLine:
    if a.n < 2:
        raise ValueError("Veldkamp lines need n >= 2")
    c = boxplus(a, b)  # raises for a == b
    members = tuple(sorted((a, b, c), key=lambda h: h.kind))
    return VeldkampLine(members, a.mask & b.mask)


def classify_line(vl: VeldkampLine) -> VeldkampLineType:
    tags = sorted(h.kind.tag for h in vl.members)
    comp = (tags.count("C"), tags.count("H0"), tags.count("H1"))
    if comp == (3, 0, 0):
        a, b = vl.members[0].kind.p, vl.members[1].kind.p
        t = VeldkampLineType.CCC_HYPERBOLIC if _form(a, b) else VeldkampLineType.CCC_ISOTROPIC
    else:
        t = {(1, 2, 0): VeldkampLineType.CH0H0,
             (1, 1, 1): VeldkampLineType.CH0H1,
             (1, 0, 2): VeldkampLineType.CH1H1}.get(comp)
        if t is None:
            raise InconsistentLineError(f"impossible composition {comp}")
    if vl.core_size != t.core_size(vl.n):
        raise InconsistentLineError(
            f"{t.tag} core has {vl.core_size} points, expected {t.core_size(vl.n)}")
    return t


def core_rank(vl: VeldkampLine) -> int:
    """Dimension of the span of the core points."""
    return gf2_rank(vl.core_points)


def hyperbolic_core_isomorphism(a: int, b: int, n: int) -> dict[int, int]:
    """Bijection from the points of G_(n-1) onto ``C_a & C_b`` (``<a, b> = 1``).

    A symplectic basis of ``span{a, b}^perp`` stands in for the standard
    basis of V_(n-1), so the map preserves the form and hence collinearity.
    """
    if not _form(a, b):
        raise ValueError("a and b must anticommute")
    g = Geometry(n)
    core = [x for x in g.points if not _form(a, x) and not _form(b, x)]
    pairs = symplectic_basis(core)
    if len(pairs) != n - 1:
        raise AssertionError("complement is not a nondegenerate (2n-2)-space")
    out = {}
    for v in range(1, 4 ** (n - 1)):
        img = 0
        for i, (e, f) in enumerate(pairs):
            code = (v >> (2 * (n - 2 - i))) & 3
            if code & 2:  # Z slot
                img ^= e
            if code & 1:  # X slot
                img ^= f
        out[v] = img
    return out


@dataclass
class CensusRow:
    type: VeldkampLineType
    count: int
    pair_count: int
    core_size: int
    formula_value: int
    core_exceptions: int

    @property
    def match(self) -> bool:
        return self.count == self.formula_value and self.core_exceptions == 0

    def to_json(self, n: int) -> dict:
        return {
            "n": n,
            "type": self.type.tag,
            "composition": list(self.type.composition),
            "core_size": self.core_size,
            "count": self.count,
            "pair_count": self.pair_count,
            "formula_value": self.formula_value,
            "match": self.match,
        }


@dataclass
class CensusResult:
    n: int
    rows: list[CensusRow]
    total_pairs: int
    total_lines: int
    boxplus_mismatches: int
    bad_triples: int  # triples not hit by exactly three pairs
    inconsistent_pairs: int

    @property
    def expected_total(self) -> int:
        return total_lines(self.n)

    @property
    def passed(self) -> bool:
        return (
            all(r.match for r in self.rows)
            and self.total_lines == self.expected_total
            and self.total_pairs == 3 * self.total_lines
            and self.boxplus_mismatches == 0
            and self.bad_triples == 0
            and self.inconsistent_pairs == 0
        )


def pair_types(fam: HyperplaneFamily, ii: np.ndarray, jj: np.ndarray, kk: np.ndarray) -> np.ndarray:
    """Type index (position in ``LINE_TYPES``) for each pair, -1 if inconsistent."""
    tags = fam.tags()
    comp = np.zeros((len(ii), 3), dtype=np.int64)
    for col in (ii, jj, kk):
        t = tags[col]
        for c in range(3):
            comp[:, c] += t == c
    out = np.full(len(ii), -1, dtype=np.int64)
    ccc = comp[:, 0] == 3
    if ccc.any():
        ft = form_table(fam.n)
        hyper = ft[fam.ps[ii[ccc]], fam.ps[jj[ccc]]].astype(bool)
        out[ccc] = np.where(hyper, 1, 0)
    for idx, key in ((2, (1, 2, 0)), (3, (1, 1, 1)), (4, (1, 0, 2))):
        out[(comp == key).all(axis=1)] = idx
    return out


def all_pairs(h: int) -> tuple[np.ndarray, np.ndarray]:
    ii, jj = np.triu_indices(h, 1)
    return ii.astype(np.int64), jj.astype(np.int64)


def third_members(fam: HyperplaneFamily, ii: np.ndarray, jj: np.ndarray) -> np.ndarray:
    return np.asarray(fam.index(fam.kinds[ii] ^ fam.kinds[jj], fam.ps[ii] ^ fam.ps[jj]), dtype=np.int64)


def census(n: int, limit: int = CENSUS_MAX_N, family: HyperplaneFamily | None = None) -> CensusResult:
    """Count Veldkamp lines by type over all unordered hyperplane pairs.

    Each pair is checked against the closed-form third member, its core
    measured, and each resulting triple must be reached by exactly three pairs.
    """
    if not 2 <= n <= limit:
        raise ValueError(f"census needs 2 <= n <= {limit}, got {n}")
    fam = family or HyperplaneFamily(n)
    ii, jj = all_pairs(len(fam))
    kk = third_members(fam, ii, jj)
    core, ok = _kernels.backend.pair_scan(fam.masks, fam.full, ii, jj, kk)
    types = pair_types(fam, ii, jj, kk)

    triples = np.sort(np.stack([ii, jj, kk], axis=1), axis=1)
    h = len(fam)
    keys = (triples[:, 0] * h + triples[:, 1]) * h + triples[:, 2]
    _, first, hits = np.unique(keys, return_index=True, return_counts=True)
    line_types = types[first]

    rows = []
    for idx, t in enumerate(LINE_TYPES):
        sel = types == idx
        expected_core = t.core_size(n)
        rows.append(CensusRow(
            type=t,
            count=int((line_types == idx).sum()),
            pair_count=int(sel.sum()),
            core_size=expected_core,
            formula_value=t.count(n),
            core_exceptions=int((core[sel] != expected_core).sum()),
        ))
    return CensusResult(
        n=n,
        rows=rows,
        total_pairs=len(ii),
        total_lines=len(hits),
        boxplus_mismatches=int((ok == 0).sum()),
        bad_triples=int((hits != 3).sum()),
        inconsistent_pairs=int((types < 0).sum()),
    )


@dataclass
class V2Report:
    n: int
    mode: str
    seed: int | None
    pairs_checked: int
    violations: list[tuple[str, str, str]]  # (A, B, extra C) keys, first few
    violation_count: int
    counterexample: dict | None = None

    @property
    def holds(self) -> bool:
        return self.violation_count == 0

    @property
    def as_expected(self) -> bool:
        """(V2) holds for n >= 3 and fails, with a pentad-in-grid witness, for n = 2."""
        if self.n >= 3:
            return self.holds
        cx = self.counterexample
        return (not self.holds and cx is not None
                and cx["grid_size"] == 9 and cx["pentad_sizes"] == [5, 5])

    def to_json(self) -> dict:
        return {
            "n": self.n, "mode": self.mode, "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "violation_count": self.violation_count,
            "violations": [list(v) for v in self.violations],
            "holds": self.holds,
            "counterexample": self.counterexample,
            "as_expected": self.as_expected,
        }


def v2_counterexample(fam: HyperplaneFamily) -> dict | None:
    """Two commuting perp-sets whose common line lies in a grid (n = 2)."""
    g = fam.geometry
    grids = [h for h in fam if h.kind.tag == "H0"]
    for a in g.points:
        for b in range(a + 1, g.size):
            if _form(a, b):
                continue
            ca, cb = fam[fam.index(0, a)], fam[fam.index(0, b)]
            core = ca.mask & cb.mask
            for grid in grids:
                if not core & ~grid.mask:
                    return {
                        "perps": [ca.key, cb.key],
                        "core": [decode(x, g.n) for x in points_of(core)],
                        "grid": grid.key,
                        "grid_size": grid.size,
                        "pentad_sizes": [(grid.mask & ca.mask).bit_count(),
                                         (grid.mask & cb.mask).bit_count()],
                        "pentads": [[decode(x, g.n) for x in points_of(grid.mask & h.mask)]
                                    for h in (ca, cb)],
                    }
    return None


def verify_v2(n: int, mode: str = "exhaustive", seed: int = 0, limit: int = 2000,
              family: HyperplaneFamily | None = None, max_reported: int = 5) -> V2Report:
    """For each pair (A, B) count hyperplanes containing ``A & B``; (V2) allows exactly 3."""
    if n < 2:
        raise ValueError("(V2) is only meaningful for n >= 2")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    fam = family or HyperplaneFamily(n)
    ii, jj = all_pairs(len(fam))
    if mode == "sampled" and limit < len(ii):
        rng = np.random.default_rng(seed)
        pick = np.sort(rng.choice(len(ii), size=limit, replace=False))
        ii, jj = ii[pick], jj[pick]
    counts = _kernels.backend.pair_superset_counts(fam.masks, ii, jj)
    bad = np.nonzero(counts != 3)[0]
    violations = []
    for t in bad[:max_reported]:
        i, j = int(ii[t]), int(jj[t])
        core = fam.mask_ints[i] & fam.mask_ints[j]
        k = int(third_members(fam, ii[t:t + 1], jj[t:t + 1])[0])
        extra = next(x for x, m in enumerate(fam.mask_ints)
                     if x not in (i, j, k) and not core & ~m)
        violations.append((fam[i].key, fam[j].key, fam[extra].key))
    report = V2Report(
        n=n, mode=mode, seed=seed if mode == "sampled" else None,
        pairs_checked=len(ii), violations=violations, violation_count=len(bad),
    )
    if n == 2:
        report.counterexample = v2_counterexample(fam)
    return report
