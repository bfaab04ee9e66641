"""Command line interface: ``pauligeom <verb> --qubits N [options]``.

Exit codes: 0 success, 1 a checked claim did not reproduce, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field

from . import __version__, _kernels
from .claims import Options, run_claims
from .geometry import Geometry
from .gf2core import N_MAX, QubitRangeError, check_qubits
from .group_action import find_swap, hyperplane_orbits, verify_swap
from .hyperplanes import (ENUM_MAX_N, HyperplaneFamily, HyperplaneKind, Hyperplane,
                          kind_mask, hyperplane_type_counts)
from .pauli_codec import encode_n
from .subgeometries import (NotAGQError, check_gq, even_weight_labels, extract_grid,
                            extract_ovoid, gq24_sections, wootters_selfdual)
from .veldkamp import CENSUS_MAX_N, census, classify_line, veldkamp_line

log = logging.getLogger("pauligeom")

VERBS = ("census", "hyperplanes", "veldkamp", "orbits", "swap", "mermin", "gq", "wootters",
         "verify", "export")


CENSUS_CSV_FIELDS = ["n", "type", "composition", "core_size", "count"]


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    n: int
    results: dict
    passed: bool = True
    seed: int | None = None
    text: str = ""
    csv_rows: list[dict] | None = None
    csv_fields: list[str] | None = None
    dot: str | None = None
    formats: tuple[str, ...] = ("text", "json")
    timing: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        out = {"command": self.command, "n": self.n}
        if self.seed is not None:
            out["seed"] = self.seed
        out["results"] = self.results
        out["passed"] = self.passed
        return out

    def render(self, fmt: str) -> str:
        if fmt not in self.formats:
            raise UsageError(f"format {fmt!r} not supported here; choose from {list(self.formats)}")
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            fields = self.csv_fields or list(self.csv_rows[0])
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            w.writerows(self.csv_rows)
            return buf.getvalue()
        if fmt == "dot":
            return self.dot
        summary = "PASS" if self.passed else "FAIL"
        return f"{self.text.rstrip()}\n{summary}\n"


def _limit(n: int, hi: int, verb: str, lo: int = 1) -> None:
    try:
        check_qubits(n, lo=lo, hi=min(hi, N_MAX))
    except QubitRangeError as e:
        raise UsageError(f"{verb}: {e}") from None


def _fmt_table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _hyperplane_rows(n: int, fam: HyperplaneFamily) -> tuple[list[dict], bool]:
    sizes = fam.sizes()
    codes = fam.tags()
    rows, ok = [], True
    for c, tag in enumerate(("C", "H0", "H1")):
        sel = codes == c
        copies, pts = hyperplane_type_counts(n)[tag]
        got = int(sel.sum())
        got_pts = sorted(set(sizes[sel].tolist()))
        match = got == copies and got_pts == [pts]
        ok &= match
        rows.append({"n": n, "type": tag, "copies": got, "points": got_pts[0] if got_pts else None,
                     "formula_copies": copies, "formula_points": pts, "match": match})
    return rows, ok


def cmd_census(args) -> Report:
    n = args.qubits
    _limit(n, min(CENSUS_MAX_N, ENUM_MAX_N), "census")
    fam = HyperplaneFamily(n)
    t1, ok1 = _hyperplane_rows(n, fam)
    text = ["Hyperplanes",
            _fmt_table(["type", "copies", "points", "formula", "match"],
                       [[r["type"], r["copies"], r["points"],
                         f'{r["formula_copies"]} x {r["formula_points"]}', r["match"]] for r in t1])]
    results = {"hyperplanes": t1}
    ok = ok1
    csv_rows = []
    if n >= 2:
        res = census(n, family=fam)
        t2 = [r.to_json(n) for r in res.rows]
        results["veldkamp_lines"] = t2
        results["veldkamp_total"] = {"count": res.total_lines, "formula_value": res.expected_total,
                                     "pairs": res.total_pairs,
                                     "boxplus_mismatches": res.boxplus_mismatches,
                                     "bad_triples": res.bad_triples}
        ok &= res.passed
        text += ["", "Veldkamp lines",
                 _fmt_table(["type", "composition", "core", "count", "formula", "match"],
                            [[r["type"], "/".join(map(str, r["composition"])), r["core_size"],
                              r["count"], r["formula_value"], r["match"]] for r in t2]),
                 f"total {res.total_lines} (formula {res.expected_total}), pairs {res.total_pairs}"]
        csv_rows = [{"n": n, "type": r["type"], "composition": "/".join(map(str, r["composition"])),
                     "core_size": r["core_size"], "count": r["count"]} for r in t2]
    else:
        text += ["", "n = 1: no lines, every proper subset of P is a hyperplane"]
    return Report(args.argv, n, results, ok, text="\n".join(text), csv_rows=csv_rows,
                  csv_fields=CENSUS_CSV_FIELDS, formats=("text", "json", "csv"))


def _select(fam: HyperplaneFamily, kind: str | None) -> list[Hyperplane]:
    hs = list(fam)
    if kind:
        hs = [h for h in hs if h.kind.tag == kind]
    return hs


def cmd_hyperplanes(args) -> Report:
    n = args.qubits
    _limit(n, ENUM_MAX_N, "hyperplanes")
    fam = HyperplaneFamily(n)
    hs = _select(fam, args.kind)
    objs = [h.to_json() for h in hs]
    text = _fmt_table(["key", "arf", "size"], [[h.key, h.kind.arf if h.kind.arf is not None else "-",
                                                h.size] for h in hs])
    rows = [{"key": h.key, "kind": o["kind"], "p": o["p"], "arf": o["arf"], "size": o["size"],
             "points": " ".join(o["points"])} for h, o in zip(hs, objs)]
    return Report(args.argv, n, {"hyperplanes": objs, "degenerate": fam.degenerate}, True,
                  text=text, csv_rows=rows, formats=("text", "json", "csv"))


def _parse_key(text: str, n: int) -> Hyperplane:
    try:
        kind = HyperplaneKind.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if kind.n != n:
        raise UsageError(f"hyperplane {text!r} is not {n}-qubit")
    return Hyperplane(kind, kind_mask(kind))


def cmd_veldkamp(args) -> Report:
    n = args.qubits
    _limit(n, ENUM_MAX_N, "veldkamp", lo=2)
    if not args.a or not args.b:
        raise UsageError("veldkamp needs -a KEY and -b KEY, e.g. -a C:XI -b H:II")
    a, b = _parse_key(args.a, n), _parse_key(args.b, n)
    if a.kind == b.kind:
        raise UsageError("the two hyperplanes must differ")
    vl = veldkamp_line(a, b)
    t = classify_line(vl)
    obj = vl.to_json()
    text = (f"type    {t.tag}\nmembers {' '.join(obj['members'])}\n"
            f"core    {obj['core_size']} points: {' '.join(obj['core'])}")
    return Report(args.argv, n, {"veldkamp_line": obj}, True, text=text)


def cmd_orbits(args) -> Report:
    n = args.qubits
    _limit(n, ENUM_MAX_N, "orbits", lo=2)
    orbits = hyperplane_orbits(n)
    keys = [sorted(k.key for k in o) for o in orbits]
    ok = sorted(len(o) for o in orbits) == sorted(c for c, _ in hyperplane_type_counts(n).values())
    text = "\n".join(f"orbit {i}: {len(o)} hyperplanes ({orbits[i][0].tag}): {' '.join(o)}"
                     for i, o in enumerate(keys))
    return Report(args.argv, n, {"orbits": keys}, ok, text=text)


def cmd_swap(args) -> Report:
    n = args.qubits
    _limit(n, N_MAX, "swap", lo=3)
    if not (args.a and args.b and args.f):
        raise UsageError("swap needs -a LABEL -b LABEL -f LABEL")
    try:
        a, b, f = (encode_n(x, n).bits for x in (args.a, args.b, args.f))
        m = find_swap(a, b, f, n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    ok = verify_swap(m, a, b, f)
    text = (f"word (rightmost applied first): {' '.join('t_' + l for l in m.labels)}\n"
            f"fixes H_{args.f}, swaps H_{args.a} <-> H_{args.b}, involution: {ok}")
    return Report(args.argv, n, {"word": m.labels, "verified": ok}, ok, text=text)


def cmd_mermin(args) -> Report:
    n = args.qubits
    if n != 2:
        raise UsageError("mermin is defined for --qubits 2 only")
    fam = HyperplaneFamily(2)
    if args.all:
        hs = _select(fam, "H0")
    else:
        hs = [_parse_key(args.a or "H:II", 2)]
        if hs[0].kind.tag != "H0":
            raise UsageError("Mermin squares come from arf-0 quadrics (H:<label> with an even number of Y)")
    squares, blocks, ok = [], [], True
    for h in hs:
        sq = extract_grid(h)
        ok &= sq.negative_line_count % 2 == 1
        squares.append({"hyperplane": h.key, **sq.to_json()})
        blocks.append(f"{h.key}  (negative lines: {sq.negative_line_count})\n{sq.render()}")
    return Report(args.argv, n, {"squares": squares}, ok, text="\n\n".join(blocks))


def cmd_gq(args) -> Report:
    n = args.qubits
    _limit(n, 3, "gq", lo=2)
    fam = HyperplaneFamily(n)
    g = fam.geometry
    results, lines, ok = {}, [], True
    if n == 2:
        whole = check_gq(g.points, g.lines)
        grids = [check_gq(h.points, g.contained_lines(h.mask)) for h in _select(fam, "H0")]
        ovoids = [len(extract_ovoid(h)) for h in _select(fam, "H1")]
        ok = (whole.s, whole.t) == (2, 2) and all((p.s, p.t) == (2, 1) for p in grids)
        ok &= ovoids == [5] * 6
        results = {"geometry": [whole.s, whole.t], "grids": [[p.s, p.t] for p in grids],
                   "ovoid_sizes": ovoids}
        lines = [f"G_2: GQ({whole.s},{whole.t})",
                 f"arf-0 quadrics: {len(grids)} grids, parameters {sorted({(p.s, p.t) for p in grids})}",
                 f"arf-1 quadrics: {len(ovoids)} ovoids of sizes {sorted(set(ovoids))}"]
    else:
        per = []
        for h in _select(fam, "H1"):
            try:
                p = check_gq(h.points, g.contained_lines(h.mask))
                params = [p.s, p.t]
            except NotAGQError:
                params = None
            hist = gq24_sections(h, fam)
            sections = {f"{size}:{'GQ(%d,%d)' % key if key else 'perp'}": c
                        for (size, key, _), c in sorted(hist.items(), key=str)}
            good = (params == [2, 4] and all(h1 for (_, _, h1) in hist)
                    and set((s, k) for s, k, _ in hist) <= {(15, (2, 2)), (11, None)})
            ok &= good
            per.append({"hyperplane": h.key, "parameters": params, "sections": sections})
            lines.append(f"{h.key}: GQ{tuple(params) if params else '?'} sections {sections}")
        results = {"quadrics": per}
    return Report(args.argv, n, results, ok, text="\n".join(lines))


def cmd_wootters(args) -> Report:
    n = args.qubits
    _limit(n, 8, "wootters")
    h = wootters_selfdual(n)
    g = Geometry(n)
    labels = [g.label(x) for x in h.points]
    ok = set(labels) == even_weight_labels(n)
    res = {"hyperplane": h.to_json(), "even_weight_match": ok}
    text = f"{h.key}: {h.size} points, arf {h.kind.arf}, even-weight match {ok}"
    if n == 3:
        p = check_gq(h.points, g.contained_lines(h.mask))
        res["gq"] = [p.s, p.t]
        ok &= (p.s, p.t) == (2, 4)
        text += f", GQ({p.s},{p.t})"
    text += "\n" + " ".join(labels)
    return Report(args.argv, n, res, ok, text=text)


def cmd_verify(args) -> Report:
    n = args.qubits
    _limit(n, ENUM_MAX_N, "verify")
    if args.exhaustive and n > 2:
        raise UsageError("--exhaustive subset search is only available for n <= 2")
    opts = Options(exhaustive=args.exhaustive, seed=args.seed, limit=args.limit)
    claims = run_claims(n, opts)
    ok = all(c.passed for c in claims)
    text = _fmt_table(["result", "claim", "statement"],
                      [["pass" if c.passed else "FAIL", c.id, c.statement] for c in claims])
    return Report(args.argv, n, {"claims": [c.to_json() for c in claims]}, ok, seed=args.seed, text=text)


def _dot_graph(g: Geometry) -> str:
    out = ["graph collinearity {"]
    for v in g.points:
        out.append(f'  {v} [label="{g.label(v)}"];')
    graph = g.collinearity_graph()
    for a, b in sorted(tuple(sorted(e)) for e in graph.edges):
        out.append(f"  {a} -- {b};")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_export(args) -> Report:
    n = args.qubits
    what = args.what
    if what == "graph":
        _limit(n, 5, "export graph")
        g = Geometry(n)
        graph = g.collinearity_graph()
        res = {"vertices": [g.label(v) for v in g.points],
               "edges": [[g.label(a), g.label(b)] for a, b in sorted(tuple(sorted(e)) for e in graph.edges)]}
        return Report(args.argv, n, res, True, text=f"{len(res['vertices'])} vertices, {len(res['edges'])} edges",
                      dot=_dot_graph(g), formats=("text", "json", "dot"))
    if what == "lines":
        _limit(n, 5, "export lines")
        g = Geometry(n)
        triples = [[g.label(x) for x in l] for l in g.lines_array.tolist()]
        rows = [{"a": t[0], "b": t[1], "c": t[2]} for t in triples]
        return Report(args.argv, n, {"lines": triples}, True, text="\n".join(" ".join(t) for t in triples),
                      csv_rows=rows, csv_fields=["a", "b", "c"], formats=("text", "json", "csv"))
    if what == "hyperplanes":
        return cmd_hyperplanes(args)
    if what == "census":
        return cmd_census(args)
    raise UsageError(f"unknown export target {what!r}")


COMMANDS = {
    "census": cmd_census, "hyperplanes": cmd_hyperplanes, "veldkamp": cmd_veldkamp,
    "orbits": cmd_orbits, "swap": cmd_swap, "mermin": cmd_mermin, "gq": cmd_gq,
    "wootters": cmd_wootters, "verify": cmd_verify, "export": cmd_export,
}


def _uint64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {v}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-n", "--qubits", type=int, required=True, help="number of qubits")
    common.add_argument("--format", default="text", choices=["text", "json", "csv", "dot"])
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--seed", type=_uint64, default=0, help="seed for sampled checks")
    common.add_argument("--exhaustive", action="store_true",
                        help="enable brute-force subset search (n <= 2)")
    common.add_argument("--limit", type=_positive, default=10_000, help="cap on sampled checks")
    common.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="pauligeom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    sub.add_parser("census", parents=[common], help="hyperplane and Veldkamp line counts")
    p = sub.add_parser("hyperplanes", parents=[common], help="list hyperplanes")
    p.add_argument("--kind", choices=["C", "H0", "H1"])
    p = sub.add_parser("veldkamp", parents=[common], help="one Veldkamp line")
    p.add_argument("-a", help="hyperplane key, e.g. C:XI")
    p.add_argument("-b", help="hyperplane key, e.g. H:II")
    sub.add_parser("orbits", parents=[common], help="orbits of the symplectic group on hyperplanes")
    p = sub.add_parser("swap", parents=[common], help="involution fixing H_f and swapping H_a, H_b")
    p.add_argument("-a")
    p.add_argument("-b")
    p.add_argument("-f")
    p = sub.add_parser("mermin", parents=[common], help="Mermin squares from two-qubit grids")
    p.add_argument("--all", action="store_true")
    p.add_argument("-a", help="arf-0 quadric key (default H:II)")
    sub.add_parser("gq", parents=[common], help="generalized quadrangle checks")
    sub.add_parser("wootters", parents=[common], help="the self-dual hyperplane H_{Y...Y}")
    sub.add_parser("verify", parents=[common], help="run every claim check for n")
    p = sub.add_parser("export", parents=[common], help="export structures")
    p.add_argument("--what", required=True, choices=["graph", "lines", "hyperplanes", "census"])
    p.add_argument("--kind", choices=["C", "H0", "H1"])
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.argv = argv
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        log.info("kernel backend: %s", _kernels.BACKEND_NAME)
        start = time.perf_counter()
        report = COMMANDS[args.verb](args)
        report.timing = time.perf_counter() - start
        text = report.render(args.format)
    except UsageError as e:
        print(f"pauligeom: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.timing:
        print(f"elapsed {report.timing:.3f} s (kernels: {_kernels.BACKEND_NAME})", file=sys.stderr)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())
