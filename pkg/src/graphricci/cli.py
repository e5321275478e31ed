"""Command-line front end.

Exit codes: 0 success, 1 a mandatory verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

from .curvature import graph_curvature
from .graph import (
    GraphError,
    dump_edge_list,
    gen_bridge_cliques,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_product,
    load_edge_list,
)
from .spectra import EigenSolverError, harmonic_eigenpairs
from .verify import full_report

FAMILIES = ("complete", "cycle", "hypercube", "bridge", "product")
CSV_FIELDS = ("name", "passed", "worst_slack", "worst_vertex", "m", "kappa", "lambda", "alpha", "index", "source")


class UsageError(Exception):
    pass


def parse_m(token: str) -> float:
    t = token.strip()
    if t.lower() in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        m = float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed m value {token!r}") from None
    if not (m > 1.0) or math.isnan(m):
        raise argparse.ArgumentTypeError(f"m must be > 1 or inf, got {token!r}")
    return m


def m_list(text: str) -> list[float]:
    return [parse_m(t) for t in text.split(",") if t.strip()]


def float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number list {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphricci", description="Bakry-Emery curvature and Harnack-inequality checks for weighted graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a generated graph as an edge list")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--n", type=positive_int, required=True, help="size (hypercube: dimension)")
    gen.add_argument("--n2", type=positive_int, help="second cycle length for 'product' (default: --n)")
    gen.add_argument("--out", help="output path (default: stdout)")

    spec = sub.add_parser("spectrum", help="normalized Laplacian eigenvalues")
    spec.add_argument("--graph", required=True)
    spec.add_argument("--json", action="store_true")
    spec.add_argument("--output")

    curv = sub.add_parser("curvature", help="Bakry-Emery curvature kappa(G, m)")
    curv.add_argument("--graph", required=True)
    curv.add_argument("--m", type=m_list, required=True)
    curv.add_argument("--per-vertex", action="store_true")
    curv.add_argument("--json", action="store_true")
    curv.add_argument("--threads", type=positive_int)
    curv.add_argument("--output")

    ver = sub.add_parser("verify", help="run every inequality check")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--m", type=m_list, default=[math.inf])
    ver.add_argument("--alpha", type=float_list, default=[])
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=500, help="random test functions per dimension for the pointwise Gamma_2 check")
    fmt = ver.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    ver.add_argument("--threads", type=positive_int)
    ver.add_argument("--output")
    return p


def _read_graph(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_edge_list(fh)
    except OSError as exc:
        raise UsageError(f"cannot read graph file {path!r}: {exc.strerror}") from None


def _m_json(m: float):
    return "inf" if math.isinf(m) else m


def _m_text(m: float) -> str:
    return "inf" if math.isinf(m) else repr(m)


def _detail_text(detail) -> str:
    if not isinstance(detail, dict):
        return "" if detail is None else str(detail)
    parts = []
    for k, v in detail.items():
        if isinstance(v, float):
            v = _m_text(v) if k == "m" else f"{v:.6g}"
        parts.append(f"{k}={v}")
    return "(" + ", ".join(parts) + ")"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _generate(args) -> str:
    if args.family == "complete":
        g = gen_complete(args.n)
    elif args.family == "cycle":
        g = gen_cycle(args.n)
    elif args.family == "hypercube":
        g = gen_hypercube(args.n)
    elif args.family == "bridge":
        g = gen_bridge_cliques(args.n)
    else:
        g = gen_product(gen_cycle(args.n), gen_cycle(args.n2 or args.n))
    return dump_edge_list(g)


def _spectrum(args) -> str:
    g = _read_graph(args.graph)
    vals = [float(v) for v in harmonic_eigenpairs(g).eigenvalues]
    if args.json:
        return _dumps({"n": g.n, "eigenvalues": vals})
    return "".join(f"{v!r}\n" for v in vals)


def _curvature(args) -> str:
    g = _read_graph(args.graph)
    workers = args.threads or os.cpu_count() or 1
    results = [graph_curvature(g, m, workers=workers) for m in args.m]
    if args.json:
        blocks = []
        for r in results:
            b = {"m": _m_json(r.m), "kappa": r.kappa, "argmin": r.argmin}
            if args.per_vertex:
                b["per_vertex"] = [float(v) for v in r.per_vertex]
            blocks.append(b)
        return _dumps({"curvature": blocks})
    lines = []
    for r in results:
        lines.append(f"m={_m_text(r.m)} kappa={r.kappa!r} argmin={g.labels[r.argmin]}")
        if args.per_vertex:
            lines += [f"  {g.labels[x]} {float(v)!r}" for x, v in enumerate(r.per_vertex)]
    return "\n".join(lines) + "\n"


def _verify(args) -> tuple[str, int]:
    g = _read_graph(args.graph)
    workers = args.threads or os.cpu_count() or 1
    report = full_report(g, args.m, args.alpha, seed=args.seed, samples=args.samples, workers=workers)
    code = 0 if report.passed else 1
    data = report.to_dict()
    if args.json:
        return _dumps(data), code
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for c in data["checks"]:
            row = {**c["params"], **{k: c[k] for k in ("name", "passed", "worst_slack", "worst_vertex")}}
            w.writerow(["" if row.get(k) is None else row.get(k) for k in CSV_FIELDS])
        return buf.getvalue(), code
    out = [
        f"graph: n={report.n} edges={report.num_edges} d_max={report.d_max!r} diameter={report.diam}",
        f"lambda_1={report.spectrum.lambda1!r}",
    ]
    for c in report.curvature:
        out.append(f"kappa(m={_m_text(c.m)})={c.kappa!r} at {g.labels[c.argmin]}")
    names = sorted({c.name for c in report.checks})
    for name in names:
        group = [c for c in report.checks if c.name == name]
        worst = min(group, key=lambda c: c.worst_slack)
        status = "PASS" if all(c.passed for c in group) else "FAIL"
        out.append(f"{status} {name} ({len(group)} checks, worst slack {worst.worst_slack:.3e})")
    for i in report.info:
        out.append(f"info {i.name}: {i.status} {_detail_text(i.detail)}".rstrip())
    out.append("all mandatory checks passed" if report.passed else f"{len(report.failures)} mandatory checks FAILED")
    return "\n".join(out) + "\n", code


def _emit(text: str, path: str | None) -> None:
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code = 0
        if args.command == "gen":
            _emit(_generate(args), args.out)
        elif args.command == "spectrum":
            _emit(_spectrum(args), args.output)
        elif args.command == "curvature":
            _emit(_curvature(args), args.output)
        else:
            text, code = _verify(args)
            _emit(text, args.output)
        return code
    except (UsageError, GraphError) as exc:
        print(exc, file=sys.stderr)
        return 2
    except EigenSolverError as exc:
        print(f"eigensolver failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
