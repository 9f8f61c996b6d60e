"""Benchmark command line.

Subcommands: generate, cut, compare, blocked, report, estimate-memory.
Machine-readable output (JSON / CSV / numbers) goes to stdout or --out;
diagnostics go to stderr. Exit codes: 0 success, 1 verification mismatch,
2 invalid arguments or input, 3 infeasible constraints, 4 width cap.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .blocking import (
    InfeasibleBlockingError,
    chunked_simulate,
    estimate_memory_gb,
    table_memory_gb,
)
from .circuit import ParseError, parse_circuit, serialize_circuit
from .cutting import InfeasibleCutError, find_cuts, plan_to_json
from .evaluator import attribute_results, enumerate_variants, evaluate_all, spill_results
from .generators import GenSpec, generate
from .reconstruct import reconstruct, total_variation_distance
from .statevector import WidthLimitError, probabilities, simulate

CSV_COLUMNS = [
    "family",
    "n",
    "K",
    "frag_widths",
    "effective",
    "variants",
    "t_cut_ms",
    "t_eval_ms",
    "t_attr_ms",
    "t_recon_ms",
    "t_full_ms",
    "tvd",
    "mem_gb",
]

# Widths of the published memory table; report reproduces its arithmetic.
MEMORY_TABLE_WIDTHS = [10, 12, 14, 15, 16, 18, 20, 22, 24, 25, 26, 28, 30, 32, 34]


@dataclass
class BenchRecord:
    family: str
    n: int
    K: int
    frag_widths: list
    effective: list
    variants: int
    t_cut_ms: float
    t_eval_ms: float
    t_attr_ms: float
    t_recon_ms: float
    t_full_ms: float
    tvd: float
    mem_gb: float

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in CSV_COLUMNS}

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        row = []
        for k in CSV_COLUMNS:
            v = d[k]
            if k in ("frag_widths", "effective"):
                row.append("+".join(str(x) for x in v))
            elif k == "tvd":
                row.append(f"{v:.3e}")
            elif k.startswith("t_"):
                row.append(f"{v:.3f}")
            elif k == "mem_gb":
                row.append(f"{v:.6g}")
            else:
                row.append(str(v))
        return row


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_generate(args) -> int:
    spec = GenSpec(
        family=args.family,
        n=args.n,
        seed=args.seed,
        degree=args.degree,
        layers=args.layers,
        hidden=args.hidden,
        a_value=args.a_value,
        b_value=args.b_value,
        rows=args.rows,
        cols=args.cols,
        depth=args.depth,
    )
    _emit(serialize_circuit(generate(spec)), args.out)
    return 0


def cmd_cut(args) -> int:
    c = parse_circuit(Path(args.circuit).read_text())
    plan = find_cuts(
        c,
        max_width=args.max_width,
        max_subcircuits=args.max_subcircuits,
        max_cuts=args.max_cuts,
        num_cuts=args.num_cuts,
    )
    _emit(plan_to_json(plan), args.out)
    return 0


def cmd_compare(args) -> int:
    c = parse_circuit(Path(args.circuit).read_text())

    t0 = time.perf_counter()
    plan = find_cuts(
        c,
        max_width=args.max_width,
        max_subcircuits=args.max_subcircuits,
        max_cuts=args.max_cuts,
        num_cuts=args.num_cuts,
    )
    t_cut = time.perf_counter() - t0

    variants = sum(len(enumerate_variants(s)) for s in plan.subcircuits)
    t0 = time.perf_counter()
    results = evaluate_all(plan.subcircuits, workers=args.workers)
    t_eval = time.perf_counter() - t0
    if args.spill:
        spill_results(args.spill, results)

    t0 = time.perf_counter()
    attributed = attribute_results(plan.subcircuits, results)
    t_attr = time.perf_counter() - t0

    t0 = time.perf_counter()
    p_cut = reconstruct(plan, attributed)
    t_recon = time.perf_counter() - t0

    t0 = time.perf_counter()
    p_full = probabilities(simulate(c))
    t_full = time.perf_counter() - t0

    tvd = total_variation_distance(p_cut, p_full)
    record = BenchRecord(
        family=args.family,
        n=c.width,
        K=plan.num_cuts,
        frag_widths=[s.fragment.width for s in plan.subcircuits],
        effective=[len(s.effective_qubits) for s in plan.subcircuits],
        variants=variants,
        t_cut_ms=t_cut * 1e3,
        t_eval_ms=t_eval * 1e3,
        t_attr_ms=t_attr * 1e3,
        t_recon_ms=t_recon * 1e3,
        t_full_ms=t_full * 1e3,
        tvd=tvd,
        mem_gb=estimate_memory_gb(c.width),
    )
    _emit(json.dumps(record.to_dict(), indent=2), args.out)
    if tvd > args.tvd_tol:
        print(f"TVD {tvd:.3e} exceeds tolerance {args.tvd_tol:.3e}", file=sys.stderr)
        return 1
    return 0


def cmd_blocked(args) -> int:
    c = parse_circuit(Path(args.circuit).read_text())
    p_blocked, log = chunked_simulate(c, args.nc, args.num_spaces)
    p_full = probabilities(simulate(c))
    max_abs = float(np.max(np.abs(p_blocked - p_full)))
    doc = {
        "nc": log.nc,
        "num_spaces": log.num_spaces,
        "chunk_transfers": log.chunk_transfers,
        "bytes_moved": log.bytes_moved,
        "swaps_inserted": log.swaps_inserted,
        "max_abs_diff": max_abs,
        "tvd": total_variation_distance(p_blocked, p_full),
    }
    _emit(json.dumps(doc, indent=2), args.out)
    if max_abs > args.amp_tol:
        print(f"max |dp| {max_abs:.3e} exceeds tolerance {args.amp_tol:.3e}", file=sys.stderr)
        return 1
    return 0


def cmd_report(args) -> int:
    paths = sorted(Path(args.records).glob("*.json"))
    rows = []
    for p in paths:
        d = json.loads(p.read_text())
        if set(CSV_COLUMNS) - set(d):
            print(f"skipping {p.name}: not a benchmark record", file=sys.stderr)
            continue
        rows.append(BenchRecord(**{k: d[k] for k in CSV_COLUMNS}).csv_row())
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        w.writerows(rows)
    if args.memory_csv:
        with open(args.memory_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "mem_gb", "mem_gb_exact"])
            for n in MEMORY_TABLE_WIDTHS:
                w.writerow([n, f"{table_memory_gb(n):.6g}", f"{estimate_memory_gb(n):.17g}"])
    return 0


def cmd_estimate_memory(args) -> int:
    print(estimate_memory_gb(args.n))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cutbench", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a benchmark circuit")
    g.add_argument("--family", required=True, choices=["adder", "aqft", "bv", "hwea", "supremacy"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--degree", type=int, default=None, help="aqft approximation degree")
    g.add_argument("--layers", type=int, default=1, help="hwea layers")
    g.add_argument("--hidden", default=None, help="bv hidden string")
    g.add_argument("--a-value", type=int, default=None, help="adder register a")
    g.add_argument("--b-value", type=int, default=None, help="adder register b")
    g.add_argument("--rows", type=int, default=0, help="supremacy grid rows")
    g.add_argument("--cols", type=int, default=0, help="supremacy grid cols")
    g.add_argument("--depth", type=int, default=8, help="supremacy CZ layers")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    def add_cut_args(p):
        p.add_argument("--circuit", required=True)
        p.add_argument("--max-width", type=int, required=True)
        p.add_argument("--max-subcircuits", type=int, default=5)
        p.add_argument("--max-cuts", type=int, default=10)
        p.add_argument("--num-cuts", type=int, default=None, help="pin the cut count exactly")

    cu = sub.add_parser("cut", help="find and print a cut plan")
    add_cut_args(cu)
    cu.add_argument("--out", default=None)
    cu.set_defaults(func=cmd_cut)

    cp = sub.add_parser("compare", help="run cut path and full path, compare distributions")
    add_cut_args(cp)
    cp.add_argument("--family", default="custom", help="label recorded in the output")
    cp.add_argument("--workers", type=int, default=1)
    cp.add_argument("--tvd-tol", type=float, default=1e-6)
    cp.add_argument("--spill", default=None, help="directory for per-variant spill files")
    cp.add_argument("--out", default=None)
    cp.set_defaults(func=cmd_compare)

    b = sub.add_parser("blocked", help="chunked simulation with exchange accounting")
    b.add_argument("--circuit", required=True)
    b.add_argument("--nc", type=int, required=True, help="chunk qubits")
    b.add_argument("--num-spaces", type=int, default=1)
    b.add_argument("--amp-tol", type=float, default=1e-12)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_blocked)

    r = sub.add_parser("report", help="collect compare records into CSV")
    r.add_argument("--records", required=True, help="directory of BenchRecord JSON files")
    r.add_argument("--out", required=True)
    r.add_argument("--memory-csv", default=None, help="also write the memory table CSV")
    r.set_defaults(func=cmd_report)

    m = sub.add_parser("estimate-memory", help="statevector bytes for width n, in GB")
    m.add_argument("--n", type=int, required=True)
    m.set_defaults(func=cmd_estimate_memory)
    return ap


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InfeasibleCutError, InfeasibleBlockingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except WidthLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
