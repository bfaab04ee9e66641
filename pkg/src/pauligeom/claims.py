"""Claim-by-claim verification suite behind ``pauligeom verify``.

Each check returns a :class:`ClaimResult`, or ``None`` when it does not apply
to the requested ``n``.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .geometry import Geometry, n_lines, n_points
from .gf2core import _q0
from .group_action import (act_on_kind, count_graph_automorphisms,
                           find_swap, hyperplane_orbits, image_mask, sp_order, verify_swap)
from .hyperplanes import (ENUM_MAX_N, HyperplaneFamily, classify, exhaustive_h1_search,
                          kind_mask, contained_line_formula, hyperplane_type_counts)
from .subgeometries import (NotAGQError, check_gq, even_weight_labels, extract_grid,
                            extract_ovoid, gq24_sections, wootters_selfdual)
from .veldkamp import CENSUS_MAX_N, all_pairs, census, third_members, verify_v2

log = logging.getLogger(__name__)


@dataclass
class ClaimResult:
    id: str
    statement: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "statement": self.statement,
                "result": "pass" if self.passed else "fail", "details": self.details}


@dataclass
class Options:
    exhaustive: bool = False
    seed: int = 0
    limit: int = 10_000


class Context:
    """Lazily shared objects for one ``n``."""

    def __init__(self, n: int, opts: Options):
        self.n = n
        self.opts = opts
        self.geometry = Geometry(n)
        self._family = None

    @property
    def family(self) -> HyperplaneFamily:
        if self._family is None:
            self._family = HyperplaneFamily(self.n)
        return self._family


def point_line_counts(ctx: Context):
    g = ctx.geometry
    lines = len(g.lines_array)
    through = Counter()
    for l in g.lines_array.tolist():
        through.update(l)
    per_point = set(through.values()) if through else {0}
    want_per_point = 4 ** (ctx.n - 1) - 1
    ok = (g.n_points == n_points(ctx.n) and lines == n_lines(ctx.n)
          and (per_point == {want_per_point} or lines == 0))
    return ClaimResult(
        "point-line-counts", "|P| = 4^n - 1, |L| = (4^n-1)(4^(n-1)-1)/3, 4^(n-1)-1 lines per point",
        ok, {"points": g.n_points, "lines": lines, "lines_per_point": sorted(per_point)})


def hyperplane_census(ctx: Context):
    if ctx.n > ENUM_MAX_N:
        return None
    fam = ctx.family
    tags = ["C", "H0", "H1"]
    sizes = fam.sizes()
    codes = fam.tags()
    measured = {}
    ok = True
    for c, tag in enumerate(tags):
        sel = codes == c
        copies, pts = hyperplane_type_counts(ctx.n)[tag]
        got_sizes = sorted(set(sizes[sel].tolist()))
        measured[tag] = {"copies": int(sel.sum()), "points": got_sizes,
                         "expected_copies": copies, "expected_points": pts}
        ok &= int(sel.sum()) == copies and got_sizes == [pts]
    distinct = len(set(fam.mask_ints)) == len(fam)
    return ClaimResult("hyperplane-census",
                       "hyperplanes are C_p (4^n-1 of them) and H_p split by Arf invariant, sizes per formula",
                       ok and distinct, {"by_type": measured, "total": len(fam), "distinct": distinct})


def h1_exhaustive(ctx: Context):
    if ctx.n > 2:
        return None
    if not ctx.opts.exhaustive:
        return None
    g = ctx.geometry
    sets = exhaustive_h1_search(g, exhaustive=True)
    full = g.full_mask
    kinds = [classify(s, g).key for s in sets if s != full]
    ok = len(sets) == 2 * 4**ctx.n and full in sets and len(kinds) == len(sets) - 1
    return ClaimResult("h1-exhaustive-search",
                       "every (H1)-subset found by brute force is P, some C_p or some H_p",
                       ok, {"h1_sets": len(sets), "classified": len(kinds)})


def veldkamp_census(ctx: Context):
    if not 2 <= ctx.n <= CENSUS_MAX_N:
        return None
    res = census(ctx.n, family=ctx.family)
    return ClaimResult("veldkamp-census", "five Veldkamp line types with stated core sizes and counts",
                       res.passed, {"rows": [r.to_json(ctx.n) for r in res.rows],
                                    "total_lines": res.total_lines, "expected_total": res.expected_total,
                                    "boxplus_mismatches": res.boxplus_mismatches,
                                    "bad_triples": res.bad_triples})


def boxplus_algebra(ctx: Context):
    if not 2 <= ctx.n <= 4:
        return None
    fam = ctx.family
    ii, jj = all_pairs(len(fam))
    kk = third_members(fam, ii, jj)
    _, ok = _kernels.backend.pair_scan(fam.masks, fam.full, ii, jj, kk)
    m = fam.mask_ints
    full = fam.geometry.full_mask
    inter = recover = 0
    for i, j, k in zip(ii.tolist(), jj.tolist(), kk.tolist()):
        c = full & ~(m[i] ^ m[j])
        inter += (m[i] & c) != (m[i] & m[j])
        recover += (full & ~(m[i] ^ c)) != m[j]
    bad = int((ok == 0).sum())
    return ClaimResult("boxplus-algebra",
                       "set-level boxplus equals the closed-form kind; A&(A+B) = A&B; A+(A+B) = B",
                       bad == inter == recover == 0,
                       {"pairs": len(ii), "formula_mismatches": bad,
                        "intersection_violations": inter, "recovery_violations": recover})


def antichain_bounds(ctx: Context):
    if not 2 <= ctx.n <= ENUM_MAX_N:
        return None
    fam = ctx.family
    n = ctx.n
    sizes = fam.sizes()
    hits = fam.line_hits()
    contain = fam.containment_violations()
    low = int((3 * sizes < n_points(n)).sum())
    h1 = int(((hits[:, 0] != 0) | (hits[:, 2] != 0)).sum())
    n2 = sum(1 for s, h3 in zip(sizes.tolist(), hits[:, 3].tolist()) if contained_line_formula(s, n) != h3)
    diff = int((8 * (n_points(n) - sizes) < 3 * 4**n).sum())
    ok = not contain and low == h1 == n2 == diff == 0
    return ClaimResult("antichain-bounds",
                       "no hyperplane contains another; |H| >= |P|/3; contained-line counts match the size formula",
                       ok, {"containments": len(contain), "below_lower_bound": low,
                            "h1_failures": h1, "n2_mismatches": n2, "difference_bound_failures": diff})


def v2_axiom(ctx: Context):
    if ctx.n < 2 or ctx.n > ENUM_MAX_N:
        return None
    mode = "exhaustive" if ctx.n <= 4 or ctx.opts.exhaustive else "sampled"
    rep = verify_v2(ctx.n, mode=mode, seed=ctx.opts.seed, limit=ctx.opts.limit, family=ctx.family)
    statement = ("(V2) holds: the only hyperplanes through a core are its triple" if ctx.n >= 3
                 else "(V2) fails: two commuting perp-sets meet in a line lying in a grid that cuts them in pentads")
    return ClaimResult("v2-axiom", statement, rep.as_expected, rep.to_json())


def action_formula(ctx: Context):
    n = ctx.n
    if not 2 <= n <= ENUM_MAX_N:
        return None
    fam = ctx.family
    if n == 2:
        cases = [(p, i) for p in range(1, 4**n) for i in range(len(fam))]
    else:
        rng = np.random.default_rng(ctx.opts.seed)
        ps = rng.integers(1, 4**n, size=ctx.opts.limit)
        hs = rng.integers(0, len(fam), size=ctx.opts.limit)
        cases = list(zip(ps.tolist(), hs.tolist()))
    bad = 0
    for p, i in cases:
        h = fam[i]
        if kind_mask(act_on_kind(p, h.kind)) != image_mask(p, h.mask, n):
            bad += 1
    return ClaimResult("action-formula",
                       "t_p C_a = C_{t_p a} and t_p H_a = H_{a + (1 + Q_a(p)) p} match pointwise images",
                       bad == 0, {"cases": len(cases), "mismatches": bad,
                                  "mode": "exhaustive" if n == 2 else "sampled",
                                  "seed": None if n == 2 else ctx.opts.seed})


def orbit_sizes(ctx: Context):
    if not 2 <= ctx.n <= 4:
        return None
    orbits = hyperplane_orbits(ctx.n)
    got = Counter((len(o), o[0].tag) for o in orbits)
    want = Counter((c, tag) for tag, (c, _) in hyperplane_type_counts(ctx.n).items())
    return ClaimResult("orbit-sizes", "transvection orbits on hyperplanes are exactly the three types",
                       got == want, {"orbits": sorted([list(k) for k in got.elements()])})


def swap_lemma(ctx: Context):
    n = ctx.n
    if not 3 <= n <= 4:
        return None
    size = 4**n
    if n == 3:
        triples = [(a, b, f) for a in range(size) for b in range(size)
                   if a != b and _q0(a) == _q0(b) for f in range(size) if f not in (a, b)]
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(ctx.opts.seed)
        triples = []
        while len(triples) < ctx.opts.limit:
            a, b, f = (int(x) for x in rng.integers(0, size, 3))
            if len({a, b, f}) == 3 and _q0(a) == _q0(b):
                triples.append((a, b, f))
        mode = "sampled"
    fails = sum(not verify_swap(find_swap(a, b, f, n), a, b, f) for a, b, f in triples)
    return ClaimResult("swap-lemma", "an involution fixes H_f and swaps H_a, H_b whenever Q_0(a) = Q_0(b)",
                       fails == 0, {"triples": len(triples), "failures": fails, "mode": mode})


def automorphisms(ctx: Context):
    if ctx.n != 2:
        return None
    g = ctx.geometry.collinearity_graph()
    count = count_graph_automorphisms({v: set(g[v]) for v in g})
    return ClaimResult("collinearity-automorphisms", "the collinearity graph has |Sp(4,2)| = 720 automorphisms",
                       count == sp_order(2), {"automorphisms": count})


def structures_n2(ctx: Context):
    if ctx.n != 2:
        return None
    fam = ctx.family
    g = ctx.geometry
    grids = [h for h in fam if h.kind.tag == "H0"]
    ovoids = [h for h in fam if h.kind.tag == "H1"]
    negs = []
    grid_ok = True
    for h in grids:
        sq = extract_grid(h)
        negs.append(sq.negative_line_count)
        p = check_gq(h.points, g.contained_lines(h.mask))
        grid_ok &= (p.s, p.t) == (2, 1) and sq.negative_line_count % 2 == 1
    ov_ok = all(len(extract_ovoid(h)) == 5 and not g.contained_lines(h.mask) for h in ovoids)
    whole = check_gq(g.points, g.lines)
    ok = grid_ok and ov_ok and (whole.s, whole.t) == (2, 2) and len(grids) == 10 and len(ovoids) == 6
    return ClaimResult("two-qubit-structures",
                       "G_2 is GQ(2,2); arf-0 quadrics are Mermin grids with an odd number of -I lines; "
                       "arf-1 quadrics are 5-point ovoids",
                       ok, {"grids": len(grids), "negative_line_counts": negs, "ovoids": len(ovoids),
                            "g2_parameters": [whole.s, whole.t]})


def structures_n3(ctx: Context):
    if ctx.n != 3:
        return None
    fam = ctx.family
    g = ctx.geometry
    ok = True
    hist_total = Counter()
    quads = [h for h in fam if h.kind.tag == "H1"]
    for h in quads:
        try:
            p = check_gq(h.points, g.contained_lines(h.mask))
        except NotAGQError:
            ok = False
            continue
        ok &= (p.s, p.t) == (2, 4) and h.size == 27 and len(g.contained_lines(h.mask)) == 45
        hist_total.update(gq24_sections(h, fam))
    allowed = {(15, (2, 2), True), (11, None, True)}
    ok &= set(hist_total) <= allowed
    return ClaimResult("gq24",
                       "arf-1 quadrics of G_3 are GQ(2,4); their hyperplane sections are GQ(2,2)s or 11-point perp-sets",
                       ok, {"quadrics": len(quads),
                            "sections": {f"{k[0]}:{k[1]}": v for k, v in sorted(hist_total.items(), key=str)}})


def wootters(ctx: Context):
    n = ctx.n
    if n > 4:
        return None
    h = wootters_selfdual(n)
    labels = {ctx.geometry.label(x) for x in h.points}
    ok = labels == even_weight_labels(n) and h.kind.arf == n % 2
    details = {"size": h.size, "arf": h.kind.arf}
    if n == 3:
        p = check_gq(h.points, ctx.geometry.contained_lines(h.mask))
        ok &= (p.s, p.t) == (2, 4)
        details["gq"] = [p.s, p.t]
    return ClaimResult("wootters-selfdual", "H_{Y...Y} is the set of even-weight operators",
                       ok, details)


CHECKS = [point_line_counts, hyperplane_census, h1_exhaustive, veldkamp_census, boxplus_algebra,
          antichain_bounds, v2_axiom, action_formula, orbit_sizes, swap_lemma, automorphisms,
          structures_n2, structures_n3, wootters]


def run_claims(n: int, opts: Options | None = None) -> list[ClaimResult]:
    ctx = Context(n, opts or Options())
    out = []
    for check in CHECKS:
        res = check(ctx)
        if res is not None:
            log.info("%s: %s", res.id, "pass" if res.passed else "FAIL")
            out.append(res)
    return out
