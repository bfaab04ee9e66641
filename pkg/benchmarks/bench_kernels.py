"""Compare the compiled and pure-Python bitset kernels on the census workloads.

    python benchmarks/bench_kernels.py --qubits 4 --repeat 3
"""
import argparse
import json
import time

from pauligeom import _kernels
from pauligeom.hyperplanes import HyperplaneFamily
from pauligeom.veldkamp import all_pairs, third_members


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(n):
    fam = HyperplaneFamily(n)
    ii, jj = all_pairs(len(fam))
    kk = third_members(fam, ii, jj)
    lines = fam.geometry.lines_array
    return {
        "popcounts": lambda be: be.popcounts(fam.masks),
        "line_hits": lambda be: be.line_hits(fam.masks, lines),
        "pair_scan": lambda be: be.pair_scan(fam.masks, fam.full, ii, jj, kk),
        "superset_counts": lambda be: be.superset_counts(fam.masks, fam.masks),
        # the all-pairs superset count is quadratic in pairs; keep it to n <= 3
        **({"pair_superset_counts": lambda be: be.pair_superset_counts(fam.masks, ii, jj)} if n <= 3 else {}),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", "--qubits", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = _kernels.available_backends()
    rows = []
    for name, fn in workloads(args.qubits).items():
        row = {"kernel": name}
        for b in backends:
            row[b] = best_of(lambda: fn(_kernels.get_backend(b)), args.repeat)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"] if row["cython"] else float("inf")
        rows.append(row)

    if args.json:
        print(json.dumps({"n": args.qubits, "backends": backends, "rows": rows}, indent=2))
        return
    print(f"n = {args.qubits}, best of {args.repeat}, backends: {', '.join(backends)}")
    print(f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if "cython" in backends else ""))
    for row in rows:
        line = f"{row['kernel']:<22}" + "".join(f"{row[b]:>11.4f}s" for b in backends)
        if "speedup" in row:
            line += f"{row['speedup']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
