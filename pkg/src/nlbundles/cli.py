"""Command-line front end.

    nlbundles cohom --k 4 --a 2 --b 3
    nlbundles classify --rank 3 --nu 1 --c1 0 --a 2 --b 1
    nlbundles moduli --rank 2 --k 2 --b 2 --format csv
    nlbundles sweep classify --rank 3 --k 2:6 --a 0:8 --b 0:8
    nlbundles verify

Exit status: 0 on success, 1 when an internal inconsistency is detected,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from typing import Optional, Sequence

from . import bundles as bd
from . import cohomology as co
from . import lattice as lt
from . import moduli as md
from . import verify as vf
from .errors import ArithmeticFault, PreconditionError

SCHEMA_VERSION = 1
MAX_ABS = 10_000  # keeps every intermediate far inside 64-bit range
MAX_POINTS = 1_000_000

BASE_COLUMNS = [
    "k", "nu", "c1", "a", "b", "l", "status", "c2", "c3", "dim_Y", "ed",
    "h1_end_lo", "h1_end_hi", "h2_end_lo", "h2_end_hi", "codim_bound",
]
EXTRA_COLUMNS = {
    "cohom": ["error"],
    "classify": ["reason", "reason_text"],
    "chern": ["reason", "curve_degree", "curve_self_intersection", "curve_genus"],
    "thresholds": [
        "reason", "h3_vanishes_from", "h2_vanishes_above", "h1_vanishes_above",
        "h1_clauses", "globally_generated_from", "jump_size",
    ],
    "moduli": ["reason", "dim_M_lo", "dim_M_hi", "smooth_at_E", "delta_assumption", "notes"],
}
COHOM_COLUMNS = ["k", "a", "b", "j", "h0", "h1", "h2", "chi"]
AXES = ["k", "nu", "c1", "a", "b", "l", "j"]


class UsageError(Exception):
    pass


class IntRange:
    """An inclusive integer range parsed from ``n`` or ``lo:hi``."""

    def __init__(self, lo: int, hi: int):
        self.lo, self.hi = lo, hi

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def single(self) -> bool:
        return self.lo == self.hi

    def __repr__(self) -> str:
        return str(self.lo) if self.single else f"{self.lo}:{self.hi}"


def _int_or_range(text: str) -> IntRange:
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or lo:hi, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    if max(abs(lo), abs(hi)) > MAX_ABS:
        raise argparse.ArgumentTypeError(f"values must satisfy |x| <= {MAX_ABS}")
    return IntRange(lo, hi)


# one record per parameter point


def _spec_from(rank: int, p: dict) -> bd.BundleSpec:
    if rank not in (2, 3):
        raise UsageError("--rank must be 2 or 3")
    if p.get("nu") is not None:
        if p.get("c1") is None:
            raise UsageError("--nu needs --c1")
        nu, c1 = p["nu"], p["c1"]
        if p.get("k") is not None and p["k"] != rank * nu + c1:
            raise PreconditionError(f"k={p['k']} does not match {rank} nu + c1 = {rank * nu + c1}")
    elif p.get("k") is not None:
        nu, c1 = bd.nu_c1_for_degree(p["k"], rank)
    else:
        raise UsageError("give --k or --nu/--c1")
    if p.get("l") is not None:
        if rank != 3:
            raise UsageError("--l selects the rank-3 hyperplane-power family")
        return bd.BundleSpec.hyperplane(nu, c1, p["l"])
    if rank == 2 and p.get("a") is None:
        p = {**p, "a": 0}  # every stable rank-2 spec has a = 0
    if p.get("a") is None or p.get("b") is None:
        raise UsageError("give --a and --b (or --l for the hyperplane-power family)")
    if rank == 2:
        return bd.BundleSpec.rank2(nu, c1, p["a"], p["b"])
    return bd.BundleSpec.rank3(nu, c1, p["a"], p["b"])


def _base(p: dict, spec: Optional[bd.BundleSpec] = None) -> dict:
    rec = {c: None for c in BASE_COLUMNS}
    if spec is not None:
        rec.update(k=spec.k, nu=spec.nu, c1=spec.c1, a=spec.a, b=spec.b, l=spec.l)
    else:
        rec.update({c: p.get(c) for c in ("k", "nu", "c1", "a", "b", "l")})
    return rec


def _invalid(p: dict, exc: Exception) -> dict:
    rec = _base(p)
    rec.update(status="Invalid", reason=type(exc).__name__, reason_text=str(exc))
    return rec


def _verdict_fields(rec: dict, v: bd.StabilityVerdict) -> None:
    rec.update(status=v.status.value, reason=v.code, reason_text=v.text)


def _put(rec: dict, key: str, value) -> None:
    if isinstance(value, md.Interval):
        rec[f"{key}_lo"], rec[f"{key}_hi"] = value.lo, value.hi
        return
    rec[f"{key}_lo"] = rec[f"{key}_hi"] = value


def record_cohom(p: dict) -> dict:
    for name in ("k", "a", "b"):
        if p.get(name) is None:
            raise UsageError(f"cohom needs --{name}")
    j = p.get("j") or 0
    rec = {"k": p["k"], "a": p["a"], "b": p["b"], "j": j}
    try:
        s = lt.SurfaceClass(p["k"])
        h = co.cohomology(lt.DivisorClass.of(p["a"], p["b"], j), s)
    except PreconditionError as exc:
        rec.update(h0=None, h1=None, h2=None, chi=None, error=str(exc))
        return rec
    rec.update(h0=h.h0, h1=h.h1, h2=h.h2, chi=h.chi)
    return rec


def record_classify(rank: int, p: dict) -> dict:
    try:
        spec = _spec_from(rank, p)
    except PreconditionError as exc:
        return _invalid(p, exc)
    rec = _base(p, spec)
    v = bd.classify(spec)
    _verdict_fields(rec, v)
    if v.status is bd.Status.STABLE or (v.admissible and spec.rank == 3):
        c = bd.chern(spec)
        rec.update(c2=c.c2, c3=c.c3)
    return rec


def record_chern(rank: int, p: dict) -> dict:
    rec = record_classify(rank, p)
    rec.pop("reason_text", None)
    if rec["c2"] is not None and rank == 3:
        spec = _spec_from(rank, p)
        curve = bd.degeneracy_curve(spec)
        rec.update(
            curve_degree=curve.degree,
            curve_self_intersection=curve.self_intersection,
            curve_genus=str(curve.genus),
        )
    return rec


def record_thresholds(rank: int, p: dict) -> dict:
    rec = record_classify(rank, p)
    rec.pop("reason_text", None)
    if rec["status"] != bd.Status.STABLE.value:
        return rec
    spec = _spec_from(rank, p)
    if spec.family is bd.Family.RANK3_HYPERPLANE or (rank == 3 and spec.k < 3):
        rec["reason"] = "thresholds_not_covered"
        return rec
    t = bd.thresholds(spec)
    if rank == 2:
        rec.update(
            h3_vanishes_from=t.h3_vanishes_from,
            h2_vanishes_above=t.h2_vanishes_above,
            h1_vanishes_above=t.h1_vanishes_above,
            globally_generated_from=t.globally_generated_from,
            jump_size=t.jump_size,
        )
    else:
        clauses = [
            c.text + (" [ambiguous]" if c.ambiguous else "")
            for c in t.h1_clauses
            if c.applies
        ]
        rec.update(
            h3_vanishes_from=t.h3_vanishes_from,
            h2_vanishes_above=t.h2_vanishes_above,
            h1_clauses=" | ".join(clauses),
            globally_generated_from=t.globally_generated_from,
        )
    return rec


def _moduli_report(spec: bd.BundleSpec) -> Optional[md.ModuliReport]:
    k = spec.k
    if spec.family is bd.Family.RANK2:
        if k in (2, 3):
            return md.rank2_exact_dim(k, max(spec.a, spec.b))
        if spec.b >= k - 4:
            return md.rank2_dim_bounds(k, spec.b)
        return None
    if spec.family is bd.Family.RANK3_HYPERPLANE:
        return md.rank3I_report(k, spec.nu, spec.c1, spec.l)
    if k == 2:
        return md.rank3II_report_k2(spec.a, spec.b)
    if k == 3:
        return md.rank3II_report_k3(spec.a, spec.b)
    if md.klarge_hypothesis(k, spec.a, spec.b):
        return md.rank3II_h1_klarge(k, spec.nu, spec.c1, spec.a, spec.b)
    return None


def record_moduli(rank: int, p: dict) -> dict:
    rec = record_classify(rank, p)
    rec.pop("reason_text", None)
    status = rec["status"]
    if status not in (bd.Status.STABLE.value, bd.Status.UNKNOWN.value):
        return rec
    spec = _spec_from(rank, p).normalized()
    if status == bd.Status.UNKNOWN.value:
        rec["dim_Y"] = md.rank3II_dimY(spec.k, spec.a, spec.b)
        rec["reason"] = "dim_Y_only_stability_unknown"
        return rec
    report = _moduli_report(spec)
    if report is None:
        if spec.family is bd.Family.RANK2:
            c = bd.rank2_chern(spec)
            rec.update(dim_Y=md.rank2_dimY(spec.k, spec.b), ed=md.rank2_ed(c.c1, c.c2))
        else:
            c = bd.rank3_chern(spec)
            rec.update(dim_Y=md.rank3II_dimY(spec.k, spec.a, spec.b), ed=md.rank3_ed(c.c1, c.c2))
        rec["reason"] = "h1_end_not_covered"
        return rec
    rec.update(dim_Y=report.dim_Y, ed=report.ed, codim_bound=report.codim_bound)
    _put(rec, "h1_end", report.h1_end)
    _put(rec, "h2_end", report.h2_end)
    _put(rec, "dim_M", report.dim_M)
    rec.update(
        smooth_at_E=report.smooth_at_E,
        delta_assumption=report.delta_assumption,
        notes="; ".join(report.notes) or None,
    )
    return rec


def _point_record(command: str, rank: Optional[int], p: dict) -> dict:
    if command == "cohom":
        return record_cohom(p)
    if rank is None:
        raise UsageError(f"{command} needs --rank")
    return {
        "classify": record_classify,
        "chern": record_chern,
        "thresholds": record_thresholds,
        "moduli": record_moduli,
    }[command](rank, p)


# output


def _columns(command: str) -> list[str]:
    if command == "cohom":
        return COHOM_COLUMNS + EXTRA_COLUMNS["cohom"]
    return BASE_COLUMNS + EXTRA_COLUMNS[command]


def _json_record(command: str, rec: dict) -> dict:
    out = {}
    for col in _columns(command):
        if col.endswith("_lo") and col[:-3] + "_hi" in _columns(command):
            name = col[:-3]
            lo, hi = rec.get(col), rec.get(name + "_hi")
            out[name] = lo if lo == hi else [lo, hi]
        elif col.endswith("_hi") and col[:-3] + "_lo" in _columns(command):
            continue
        else:
            out[col] = rec.get(col)
    return out


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(command: str, query: dict, records: list[dict], fmt: str) -> str:
    if fmt == "json":
        body = {
            "schema_version": SCHEMA_VERSION,
            "query": query,
            "records": [_json_record(command, r) for r in records],
        }
        return json.dumps(body, indent=2) + "\n"
    buf = io.StringIO()
    cols = _columns(command)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        w.writerow([_csv_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def emit_verify(report: vf.VerifyReport, per_suite: list[tuple[str, int, int]], query: dict, fmt: str) -> str:
    if fmt == "json":
        body = {"schema_version": SCHEMA_VERSION, "query": query, "records": [report.as_dict()]}
        return json.dumps(body, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "checks_passed", "checks_failed"])
    for row in per_suite:
        w.writerow(row)
    return buf.getvalue()


# argument handling


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank", type=int, choices=(2, 3))
    for name in AXES:
        p.add_argument(f"--{name}", type=_int_or_range, metavar="N|LO:HI")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlbundles", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "cohom": "h0, h1, h2, chi of O_S(aL + bC)(j)",
        "classify": "stability verdict for a bundle spec",
        "chern": "Chern classes (and degeneracy-curve data for rank 3)",
        "thresholds": "cohomology-vanishing and global-generation thresholds",
        "moduli": "family dimension, expected dimension and h1/h2 of End E",
    }
    for name, text in helps.items():
        _add_params(sub.add_parser(name, help=text))
    sw = sub.add_parser("sweep", help="evaluate a command over a grid of parameters (lo:hi ranges)")
    sw.add_argument("target", choices=sorted(helps))
    _add_params(sw)
    ver = sub.add_parser("verify", help="run the invariant suites")
    ver.add_argument("--suite", action="append", choices=list(vf.SUITES))
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _query(args: argparse.Namespace) -> dict:
    q = {"command": args.command}
    if getattr(args, "target", None):
        q["target"] = args.target
    if getattr(args, "rank", None) is not None:
        q["rank"] = args.rank
    for name in AXES:
        v = getattr(args, name, None)
        if v is not None:
            q[name] = repr(v)
    if getattr(args, "suite", None):
        q["suite"] = list(args.suite)
    q["format"] = args.format
    return q


def _grid(args: argparse.Namespace, allow_ranges: bool) -> list[dict]:
    axes = [(n, getattr(args, n)) for n in AXES if getattr(args, n) is not None]
    if not allow_ranges:
        for n, r in axes:
            if not r.single:
                raise UsageError(f"--{n} takes a single integer here; use sweep for ranges")
    total = 1
    for _, r in axes:
        total *= r.hi - r.lo + 1
    if total > MAX_POINTS:
        raise UsageError(f"grid has {total} points, limit is {MAX_POINTS}")
    names = [n for n, _ in axes]
    return [dict(zip(names, vals)) for vals in itertools.product(*(r.values() for _, r in axes))]


def run(args: argparse.Namespace) -> tuple[str, int]:
    query = _query(args)
    if args.command == "verify":
        names = args.suite or list(vf.SUITES)
        report = vf.VerifyReport()
        per_suite = []
        for name in names:
            part = vf.run_suites([name])
            report.suites_run.append(name)
            report.checks_passed += part.checks_passed
            report.failures.extend(part.failures)
            per_suite.append((name, part.checks_passed, part.checks_failed))
        return emit_verify(report, per_suite, query, args.format), 0 if report.ok else 1
    sweep = args.command == "sweep"
    command = args.target if sweep else args.command
    points = _grid(args, allow_ranges=sweep)
    records = [_point_record(command, args.rank, p) for p in points]
    return emit(command, query, records, args.format), 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"nlbundles: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticFault as exc:
        diag = {
            "schema_version": SCHEMA_VERSION,
            "query": _query(args),
            "records": [{"status": "ArithmeticFault", "error": str(exc)}],
        }
        sys.stdout.write(json.dumps(diag, indent=2) + "\n")
        print(f"nlbundles: internal inconsistency: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
