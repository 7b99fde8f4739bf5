"""Command line front end: dim, table, basis, check, reduce, selftest.

Exit codes: 0 success, 1 divergence from the reference table or a failed
check, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .cochains import CochainError, enumerate_basis, parse_cochain, serialize_cochain
from .cohomology import NotClosedError, cohomology, coboundary_membership, reduce_mod_coboundaries
from .coboundary import delta_symbolic
from .exact import injected_binomial_fault
from .selftest import selftest

TABLE_FIELDS = (
    "lambda",
    "dim_cochains",
    "dim_cocycles",
    "dim_coboundaries",
    "dim_cohomology",
    "reference_dim",
    "divergent_from_reference",
)


class UsageError(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _row(report) -> dict:
    d = report.to_dict()
    d["reference_dim"] = report.reference_dim
    return {k: d[k] for k in TABLE_FIELDS}


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(TABLE_FIELDS), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if v is None else v for k, v in r.items()})
    return buf.getvalue()


def _certificate_text(report) -> str:
    lines = [
        f"certificates for lambda={report.lam} relative={report.relative}: "
        f"computed {report.dim_cohomology}, reference {report.reference_dim}"
    ]
    for cert in report.certificates:
        lines.append(f"  representative {cert.representative}")
        lines.append(f"    dual witness {list(cert.witness)} pairing {cert.pairing}")
    for dec in report.decompositions:
        coeffs = ", ".join(str(c) for c in dec.coeffs) or "-"
        lines.append(f"  cocycle {dec.cocycle}")
        lines.append(f"    = delta({dec.primitive}) + [{coeffs}] . representatives")
    lines.append(f"  verified: {report.verify()}")
    return "\n".join(lines)


def _report_text(report, certificates: bool) -> str:
    lines = [
        f"arity {report.arity}  lambda {report.lam}  relative {report.relative}",
        f"cochains {report.dim_cochains}  cocycles {report.dim_cocycles}  "
        f"coboundaries {report.dim_coboundaries}  cohomology {report.dim_cohomology}",
    ]
    if report.reference_dim is not None:
        lines.append(
            f"reference {report.reference_dim}  divergent {report.divergent_from_reference}"
        )
    for rep in report.representatives:
        lines.append(f"  {rep}")
    if certificates:
        lines.append(_certificate_text(report))
    return "\n".join(lines)


def cmd_dim(args) -> int:
    report = cohomology(args.arity, args.lam, args.relative)
    full = report.divergent_from_reference
    if args.format == "json":
        _emit(json.dumps(report.to_dict(certificates=full)))
    elif args.format == "csv":
        _emit(_csv([_row(report)]))
    else:
        _emit(_report_text(report, full))
    return 1 if full else 0


def cmd_table(args) -> int:
    if args.lambda_min > args.lambda_max:
        raise UsageError(f"empty range: --lambda-min {args.lambda_min} > --lambda-max {args.lambda_max}")
    reports = [cohomology(args.arity, lam, args.relative) for lam in range(args.lambda_min, args.lambda_max + 1)]
    divergent = [r for r in reports if r.divergent_from_reference]
    if args.format == "json":
        rows = []
        for r in reports:
            row = _row(r)
            row["representatives"] = r.to_dict()["representatives"]
            if r.divergent_from_reference:
                full = r.to_dict(certificates=True)
                row["certificates"] = full["certificates"]
                row["decompositions"] = full["decompositions"]
                row["verified"] = r.verify()
            rows.append(row)
        _emit(json.dumps({"arity": args.arity, "relative": args.relative, "rows": rows}))
    elif args.format == "csv":
        _emit(_csv([_row(r) for r in reports]))
        for r in divergent:
            sys.stderr.write(_certificate_text(r) + "\n")
    else:
        header = f"{'lambda':>6} {'C':>4} {'Z':>4} {'B':>4} {'H':>3} {'ref':>4}  note"
        lines = [header]
        for r in reports:
            ref = "-" if r.reference_dim is None else str(r.reference_dim)
            note = "DIVERGENT" if r.divergent_from_reference else ""
            lines.append(
                f"{r.lam:>6} {r.dim_cochains:>4} {r.dim_cocycles:>4} {r.dim_coboundaries:>4} "
                f"{r.dim_cohomology:>3} {ref:>4}  {note}".rstrip()
            )
        for r in divergent:
            lines.append("")
            lines.append(_certificate_text(r))
        _emit("\n".join(lines))
    return 1 if divergent else 0


def cmd_basis(args) -> int:
    basis = enumerate_basis(args.arity, args.lam, args.relative)
    report = cohomology(args.arity, args.lam, args.relative)
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "arity": args.arity,
                    "lambda": args.lam,
                    "relative": args.relative,
                    "basis": [list(t) for t in basis],
                    "representatives": report.to_dict()["representatives"],
                }
            )
        )
    elif args.format == "csv":
        _emit("index,orders\n" + "".join(f"{i},{' '.join(map(str, t))}\n" for i, t in enumerate(basis)))
    else:
        lines = [f"{len(basis)} basis tuples"]
        lines += [f"  {i}: {t}" for i, t in enumerate(basis)]
        lines.append(f"{len(report.representatives)} representatives")
        lines += [f"  {r}" for r in report.representatives]
        _emit("\n".join(lines))
    return 0


def _read_cochain(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_cochain(text)


def cmd_check(args) -> int:
    c = _read_cochain(args.input)
    if c.arity > 3:
        raise CochainError(f"check supports arity <= 3, got {c.arity}")
    d = delta_symbolic(c)
    out = {"is_cocycle": d.is_zero()}
    if not d.is_zero():
        out["delta"] = json.loads(serialize_cochain(d))
    if args.coboundary_certificate:
        out.update(coboundary_membership(c).to_dict())
    if args.format == "json":
        _emit(json.dumps(out))
    else:
        lines = [f"is_cocycle: {out['is_cocycle']}"]
        if "delta" in out:
            lines.append(f"delta: {d}")
        if args.coboundary_certificate:
            lines.append(f"is_coboundary: {out['is_coboundary']}")
            if "certificate" in out:
                lines.append(f"primitive: {parse_cochain(json.dumps(out['certificate']))}")
            if "witness" in out:
                lines.append(f"witness: {out['witness']} pairing {out['pairing']}")
            lines.append(f"verified: {out['verified']}")
        _emit("\n".join(lines))
    return 0 if out["is_cocycle"] else 1


def cmd_reduce(args) -> int:
    c = _read_cochain(args.input)
    try:
        red = reduce_mod_coboundaries(c)
    except NotClosedError as exc:
        _emit(json.dumps({"is_cocycle": False, "delta": json.loads(serialize_cochain(exc.delta))}))
        return 1
    _emit(json.dumps(red.to_dict()))
    return 0


def cmd_selftest(args) -> int:
    report = selftest(args.max_lambda)
    if args.format == "json":
        _emit(json.dumps(report.to_dict()))
    else:
        lines = [f"{name}: {n} passed" for name, n in report.counts.items()]
        if report.failure is not None:
            lines.append(f"FAILED {json.dumps(report.failure)}")
        else:
            lines.append("all checks passed")
        _emit("\n".join(lines))
    return 0 if report.passed else 1


def _fault(text: str) -> tuple[int, int]:
    try:
        n, k = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected N,K") from exc
    return n, k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    # debug hook: perturb one binomial coefficient for the whole run
    common.add_argument("--inject-fault", type=_fault, default=None, help=argparse.SUPPRESS)

    graded = argparse.ArgumentParser(add_help=False)
    graded.add_argument("--arity", type=int, choices=(1, 2, 3), default=3)
    graded.add_argument("--relative", action="store_true", help="orders >= 2 only")

    p = argparse.ArgumentParser(
        prog="vectcohom",
        description="Exact cohomology of vector fields on the line with coefficients in densities.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common, graded], help="one graded piece")
    s.add_argument("--lambda", dest="lam", metavar="INT", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("table", parents=[common, graded], help="sweep over lambda")
    s.add_argument("--lambda-min", type=int, default=0)
    s.add_argument("--lambda-max", type=int, default=30)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("basis", parents=[common, graded], help="basis tuples and representatives")
    s.add_argument("--lambda", dest="lam", metavar="INT", type=int, required=True)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("check", parents=[common], help="is a cochain closed (and exact)")
    s.add_argument("--input", required=True, help="cochain JSON file, or - for stdin")
    s.add_argument("--coboundary-certificate", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", parents=[common], help="reduce a cocycle modulo coboundaries")
    s.add_argument("--input", required=True, help="cochain JSON file, or - for stdin")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant battery")
    s.add_argument("--max-lambda", type=int, default=15)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fault = contextlib.nullcontext()
    if args.inject_fault is not None:
        fault = injected_binomial_fault(*args.inject_fault)
    try:
        with fault:
            return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"vectcohom: error: {exc}\n")
        return 2
    except (CochainError, ValueError, OSError) as exc:
        sys.stderr.write(f"vectcohom: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
