"""Command-line front end.

    interlacing select MATRIX --k K [--mode with|without] [--epsilon E] [--exact] [--output REPORT]
    interlacing bounds --d D --m M --k K [--input MATRIX] [--output REPORT]
    interlacing verify [--level quick|full]
    interlacing gen --d D --m M --seed S [--exact] [--output MATRIX]

Exit codes: 0 success, 1 error or violated check, 2 when k exceeds the stable
rank and no bound is guaranteed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from pathlib import Path
from typing import Sequence

from . import __version__
from .bounds import RANK_SLACK, bounds_report
from .charpoly import is_exact_matrix, stable_rank
from .instances import isotropic_instance, rational_isotropic_instance
from .matrix_io import MatrixFormatError, format_matrix, read_matrix
from .poly import DEFAULT_EPS
from .select import GuaranteeWarning, select_with_replacement, select_without_replacement

EXIT_OK, EXIT_ERROR, EXIT_INAPPLICABLE = 0, 1, 2


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _table(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    cells = [list(map(_fmt, header))] + [list(map(_fmt, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _bounds_block(rep, eps: float) -> dict:
    checks = rep.checks(eps)
    out = {}
    for name, value in rep.values().items():
        entry = {"value": value, "guaranteed": name in rep.guaranteed, "vacuous": name in rep.vacuous}
        if rep.achieved_sigma_min_sq is not None:
            entry["satisfied"] = rep.achieved_sigma_min_sq >= value - eps
        if name in checks:
            entry["pass"] = checks[name]
        out[name] = entry
    return out


def cmd_select(input_path: str, k: int, mode: str, epsilon: float = DEFAULT_EPS,
               output: str | None = None, exact: bool = False) -> int:
    try:
        B = read_matrix(input_path, exact=exact)
    except (OSError, MatrixFormatError) as exc:
        return _err(f"cannot read {input_path}: {exc}")
    d, m = B.shape
    if not 1 <= k <= min(d, m):
        return _err(f"k={k} must satisfy 1 <= k <= min(d, m) = {min(d, m)}")
    srank = stable_rank(B)
    applicable = k <= srank * (1 + RANK_SLACK)
    runner = select_with_replacement if mode == "with" else select_without_replacement
    started = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GuaranteeWarning)
            result = runner(B, k, epsilon)
    except ValueError as exc:
        return _err(str(exc))
    elapsed = time.perf_counter() - started

    rep = bounds_report(d, m, k, B=B, mode=mode, achieved=result.sigma_min_sq)
    if not applicable:
        rep.guaranteed = []
    bounds = _bounds_block(rep, epsilon)
    failed = [n for n, b in bounds.items() if b.get("pass") is False]
    doc = {
        "inputs": {"path": str(input_path), "d": d, "m": m, "k": k, "exact": is_exact_matrix(B),
                   "srank": rep.srank, "kappa": rep.kappa, "isotropic": rep.isotropic},
        "mode": result.mode,
        "epsilon": epsilon,
        "indices": list(result.indices),
        "sigma_min_sq": result.sigma_min_sq,
        "initial_root": result.initial_root,
        "bounds": bounds,
        "guarantees_applicable": applicable,
        "all_guarantees_pass": applicable and not failed,
        "trace": [{"step": i + 1, "index": s.index, "lambda_k": s.lambda_k}
                  for i, s in enumerate(result.root_trace)],
        "elapsed_seconds": elapsed,
    }

    print(f"selected columns {list(result.indices)} ({result.mode}, k={k}, d={d}, m={m})")
    print(f"sigma_min^2 = {result.sigma_min_sq:.12g}   lambda_k(root) = {result.initial_root:.12g}")
    print(_table([(s["step"], s["index"], s["lambda_k"]) for s in doc["trace"]], ("step", "index", "lambda_k")))
    print()
    print(_table([(n, b["value"], "yes" if b["guaranteed"] else "no",
                   {True: "pass", False: "FAIL"}.get(b.get("pass"), "-")) for n, b in bounds.items()],
                 ("bound", "value", "guaranteed", "check")))
    if output is not None:
        _emit(doc, output)
        print(f"report written to {output}")
    else:
        print()
        _emit(doc, None)

    if not applicable:
        print(f"warning: k={k} exceeds srank={srank:.6g}; no bound is guaranteed", file=sys.stderr)
        return EXIT_INAPPLICABLE
    if failed:
        return _err(f"guaranteed bound violated: {', '.join(failed)}")
    return EXIT_OK


def cmd_bounds(d: int | None, m: int | None, k: int, input_path: str | None = None,
               output: str | None = None, exact: bool = False) -> int:
    B = None
    if input_path is not None:
        try:
            B = read_matrix(input_path, exact=exact)
        except (OSError, MatrixFormatError) as exc:
            return _err(f"cannot read {input_path}: {exc}")
        if (d is not None and d != B.shape[0]) or (m is not None and m != B.shape[1]):
            return _err(f"matrix is {B.shape[0]}x{B.shape[1]}, not {d}x{m}")
        d, m = B.shape
    if d is None or m is None:
        return _err("--d and --m are required without --input")
    if not (1 <= d and 0 <= k <= d and m >= 1):
        return _err(f"need 0 <= k <= d and d, m >= 1, got d={d}, m={m}, k={k}")
    if B is None and m < d:
        return _err(f"an isotropic d x m matrix needs m >= d, got d={d}, m={m}")
    try:
        rep = bounds_report(d, m, k, B=B)
    except ValueError as exc:
        return _err(str(exc))
    doc = {"inputs": {"d": d, "m": m, "k": k, "path": input_path, "srank": rep.srank,
                      "kappa": rep.kappa, "isotropic": rep.isotropic},
           "bounds": {n: {"value": v, "vacuous": n in rep.vacuous} for n, v in rep.values().items()}}
    rows = [(n, v, "vacuous" if n in rep.vacuous else "") for n, v in rep.values().items()]
    print(_table(rows, ("bound", "value", "note")))
    print()
    _emit(doc, output)
    return EXIT_OK


def cmd_verify(level: str = "quick") -> int:
    from .verify import run

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GuaranteeWarning)
        checks = run(level)
    failures = [c for c in checks if not c.ok]
    suites: dict[str, list[int]] = {}
    for c in checks:
        tally = suites.setdefault(c.suite, [0, 0])
        tally[0 if c.ok else 1] += 1
    print(_table([(s, ok, bad) for s, (ok, bad) in suites.items()], ("suite", "passed", "failed")))
    for c in failures:
        print(c.line())
        print(c.detail())
    print(f"{len(checks) - len(failures)}/{len(checks)} checks passed at level {level}")
    return EXIT_ERROR if failures else EXIT_OK


def cmd_gen(d: int, m: int, seed: int, output: str | None = None, exact: bool = False) -> int:
    if not 1 <= d <= m:
        return _err(f"need 1 <= d <= m, got d={d}, m={m}")
    B = rational_isotropic_instance(d, m, seed) if exact else isotropic_instance(d, m, seed)
    fmt = "json" if output is not None and output.lower().endswith(".json") else "csv"
    text = format_matrix(B, fmt)
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)
    return EXIT_OK


def _positive_float(s: str) -> float:
    v = float(s)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with every other error; 2 is reserved
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="interlacing", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("select", help="pick k columns with a certified least singular value")
    s.add_argument("input", help="matrix file (.csv or .json)")
    s.add_argument("--k", type=int, required=True, help="number of columns to pick")
    s.add_argument("--mode", choices=("with", "without"), default="with", help="sampling model behind the guarantee")
    s.add_argument("--epsilon", type=_positive_float, default=DEFAULT_EPS, help="root bracket width")
    s.add_argument("--exact", action="store_true", help="read entries as exact rationals")
    s.add_argument("--output", help="write the JSON report here instead of standard output")

    b = sub.add_parser("bounds", help="evaluate every lower bound for (d, m, k)")
    b.add_argument("--d", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--input", help="matrix file; without it B is taken to be isotropic")
    b.add_argument("--exact", action="store_true")
    b.add_argument("--output", help="write the JSON report here")

    v = sub.add_parser("verify", help="run the invariant suites on built-in instances")
    v.add_argument("--level", choices=("quick", "full"), default="quick")

    g = sub.add_parser("gen", help="write a seeded isotropic instance")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--exact", action="store_true", help="rational entries from Householder reflections")
    g.add_argument("--output", help="target file; .json selects JSON, else CSV")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "select":
        return cmd_select(args.input, args.k, args.mode, args.epsilon, args.output, args.exact)
    if args.command == "bounds":
        return cmd_bounds(args.d, args.m, args.k, args.input, args.output, args.exact)
    if args.command == "verify":
        return cmd_verify(args.level)
    return cmd_gen(args.d, args.m, args.seed, args.output, args.exact)


if __name__ == "__main__":
    sys.exit(main())
