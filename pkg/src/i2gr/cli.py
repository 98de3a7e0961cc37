"""Command-line front end: ``i2gr <command> --n N [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import classical
from .chevalley import UnsupportedK, chevalley_table, table_to_csv, table_to_json
from .classes import ClassTable, compute_class_table, lefschetz_crosscheck, report_to_json, verify_gkm
from .gkm import build_graph
from .subsets import (
    MAX_N,
    Geometry,
    GrassmannianSpec,
    betti_direct,
    codim,
    enumerate_admissible,
    subset_key,
)

COMMANDS = (
    "fixed-points",
    "betti",
    "gkm",
    "chevalley",
    "classes",
    "verify",
    "degrees",
    "pairing",
    "ring-check",
    "lefschetz",
)
FORMATS = ("json", "csv", "dot", "text")
NEEDS_K2 = {"chevalley", "classes", "verify", "degrees", "pairing", "lefschetz"}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="i2gr", description="Equivariant Schubert calculus on I2Gr(k, 2n) and IGr(k, 2n).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--geometry", choices=[g.value for g in Geometry], default=Geometry.BISYMPLECTIC.value)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--output", default="-")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--from-file", dest="from_file")
    p.add_argument("--codim", type=int, help="codimension for the pairing command")
    p.add_argument("--amended", action="store_true", help="ring-check with the corrected degree 4 relation")
    return p


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _spec(args) -> GrassmannianSpec:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n > MAX_N:
        raise UsageError(f"--n {args.n} exceeds the maximum {MAX_N}")
    if not 2 <= args.k <= args.n:
        raise UsageError(f"--k {args.k} must satisfy 2 <= k <= n")
    spec = GrassmannianSpec(args.n, args.k, Geometry(args.geometry))
    if spec.bisymplectic and spec.k != 2 and args.command in NEEDS_K2:
        raise UsageError(f"--k {args.k}: {args.command} on the bisymplectic Grassmannian needs k=2")
    return spec


def _format(args, default: str, allowed) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not available for {args.command} (choose from {', '.join(allowed)})")
    return fmt


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load_table(path: str) -> ClassTable:
    try:
        with open(path) as fh:
            return ClassTable.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"--from-file {path}: {exc}") from exc


def _run(args, err) -> tuple:
    """``(exit status, payload)``."""
    cmd = args.command
    if cmd == "ring-check":
        fmt = _format(args, "json", ("json", "text"))
        report = classical.ring_check_i2gr26(amended=args.amended)
        if fmt == "json":
            payload = _dumps(report.to_json())
        else:
            lines = [("ok    " if r.ok else "FAIL  ") + r.relation for r in report.substitutions + report.ideal]
            lines.append("generated: " + " ".join(subset_key(I) for I in report.generated))
            payload = "\n".join(lines) + "\n"
        return (0 if report.ok else 1), payload

    if cmd == "verify" and args.from_file:
        table = _load_table(args.from_file)
        spec = table.spec
    else:
        spec = _spec(args)
        table = None

    if cmd == "fixed-points":
        fmt = _format(args, "text", ("json", "csv", "text"))
        vertices = enumerate_admissible(spec)
        if fmt == "json":
            return 0, _dumps([{"subset": list(I), "codim": codim(I, spec)} for I in vertices])
        if fmt == "csv":
            return 0, _rows_csv(["subset", "codim"], [(subset_key(I), codim(I, spec)) for I in vertices])
        return 0, "\n".join(f"{subset_key(I)} {codim(I, spec)}" for I in vertices) + "\n"

    if cmd == "betti":
        fmt = _format(args, "text", ("json", "text"))
        betti = betti_direct(spec)
        if fmt == "json":
            return 0, _dumps({"spec": spec.to_json(), "betti": list(betti)})
        return 0, ",".join(str(b) for b in betti) + "\n"

    if cmd == "gkm":
        fmt = _format(args, "json", ("json", "dot"))
        graph = build_graph(spec)
        return 0, graph.to_dot() if fmt == "dot" else _dumps(graph.to_json())

    if cmd == "chevalley":
        fmt = _format(args, "json", ("json", "csv"))
        table = chevalley_table(spec)
        return 0, table_to_csv(table) if fmt == "csv" else _dumps(table_to_json(table))

    if cmd == "classes":
        _format(args, "json", ("json",))
        return 0, _dumps(compute_class_table(spec).to_json())

    if cmd == "verify":
        fmt = _format(args, "json", ("json", "text"))
        table = table or compute_class_table(spec)
        violations = verify_gkm(table, threads=max(1, args.threads))
        for v in violations:
            print(f"{v.kind}: class {v.label} at {v.points} {v.detail}", file=err)
        if fmt == "json":
            payload = _dumps({"spec": spec.to_json(), "violations": report_to_json(violations)})
        else:
            payload = f"{len(violations)} violations\n"
        return (1 if violations else 0), payload

    if cmd == "degrees":
        fmt = _format(args, "csv", ("json", "csv"))
        rows = classical.degree_table(spec)
        if fmt == "csv":
            return 0, classical.degree_table_csv(rows)
        return 0, _dumps([{"subset": list(I), "codim": c, "degree": str(d)} for I, c, d in rows])

    if cmd == "pairing":
        fmt = _format(args, "json", ("json",))
        ring = classical.ClassicalRing.of(spec)
        levels = [args.codim] if args.codim is not None else range(spec.dimension + 1)
        if args.codim is not None and not 0 <= args.codim <= spec.dimension:
            raise UsageError(f"--codim {args.codim} outside 0..{spec.dimension}")
        return 0, _dumps([classical.pairing_matrix(spec, c, ring).to_json() for c in levels])

    if cmd == "lefschetz":
        fmt = _format(args, "json", ("json",))
        if spec.k != 2:
            raise UsageError("lefschetz needs k=2")
        report = lefschetz_crosscheck(spec.n)
        return (0 if report.ok else 1), _dumps(report.to_json())

    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        status, payload = _run(args, err)
    except (UsageError, UnsupportedK, ValueError) as exc:
        print(f"i2gr: error: {exc}", file=err)
        return 2
    if args.output == "-":
        out.write(payload)
    else:
        with open(args.output, "w") as fh:
            fh.write(payload)
    return status


if __name__ == "__main__":
    sys.exit(main())
