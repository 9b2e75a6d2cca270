"""
Command-line frontend.

Subcommands: ``info`` (group order and longest length), ``kl`` / ``invkl``
(polynomial tables), ``parabolic`` (the four parabolic families),
``rouquier`` (graded multiplicity table of one standard object), ``scan``
(one named monotonicity scan) and ``suite`` (every identity check plus
every scan).

Output is deterministic byte-for-byte for a fixed configuration, at any
``--threads`` value, in all three formats (text, csv, json).  Exit codes:
0 success, 1 computation failure or an expected-pass scan with
violations, 2 usage errors.  The environment variable KLLAB_MAX_ELEMENTS
bounds enumeration (default 2,000,000).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .coxeter import (
    CapExceededError, CoxeterSpecError, GroupTable, ResourceLimitError,
    parse_word, render_word,
)
from .hecke import InvariantError, KLTable
from .laurent import LaurentPoly
from .parabolic import (
    ANTISPHERICAL, SPHERICAL, FlavorMismatchError, ParabolicContext,
    ParabolicKLTable,
)
from . import verify
from .verify import CapRequiredError, CheckResult, build_group


def poly_csv(p: LaurentPoly) -> str:
    """CSV cell rendering: 'c*v^k' terms joined by '+', ascending exponent."""
    if p.is_zero():
        return "0"
    return "+".join(f"{c}*v^{e}" for e, c in p.items())


def _subset_parse(text: str, rank: int) -> frozenset[int]:
    text = text.strip()
    if text in ("", "none", "-"):
        return frozenset()
    try:
        subset = frozenset(int(part) - 1 for part in text.split(","))
    except ValueError:
        raise CoxeterSpecError(f"malformed generator subset {text!r}")
    for t in subset:
        if not 0 <= t < rank:
            raise CoxeterSpecError(f"generator index {t + 1} out of range")
    return subset


def _subset_text(subset) -> str:
    return ",".join(str(t + 1) for t in sorted(subset)) if subset else "-"


class _Output:
    def __init__(self, fmt: str, out_path: str | None):
        self.fmt = fmt
        self.out_path = out_path

    def emit(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------
# subcommand bodies
# ----------------------------------------------------------------------

def _cmd_info(args, out: _Output) -> int:
    group = build_group(args.group, args.cap)
    order = len(group)
    longest = group.longest_length()
    complete = group.is_complete()
    if out.fmt == "json":
        out.emit(_json_dump({
            "command": "info", "group": args.group, "cap": args.cap,
            "order": order, "longest_length": longest, "complete": complete,
        }))
    elif out.fmt == "csv":
        out.emit(_csv_text(["group", "cap", "order", "longest_length",
                            "complete"],
                           [[args.group, "" if args.cap is None else args.cap,
                             order, longest, str(complete).lower()]]))
    else:
        if complete:
            out.emit(f"order {order}, longest length {longest}")
        else:
            out.emit(f"order {order} (within length cap {args.cap}), "
                     f"longest length {longest}")
    return 0


def _table_entries(group, pairs_with_polys):
    """Shared rendering for all polynomial-table commands."""
    rows = []
    entries = {}
    for y, x, p in pairs_with_polys:
        rows.append([render_word(y.word), render_word(x.word),
                     str(y.length), str(x.length), poly_csv(p)])
        entries[f"{render_word(y.word)}|{render_word(x.word)}"] = p.to_json_dict()
    return rows, entries


def _emit_table(args, out: _Output, command: str, rows, entries,
                extra_cols: list[str] | None = None,
                extra_vals: list[str] | None = None,
                meta: dict | None = None) -> int:
    header = ["y", "x", "len_y", "len_x", "poly"] + (extra_cols or [])
    if extra_vals:
        rows = [row + extra_vals for row in rows]
    if out.fmt == "json":
        obj = {"command": command, "group": args.group, "cap": args.cap,
               "entries": entries}
        obj.update(meta or {})
        out.emit(_json_dump(obj))
    elif out.fmt == "csv":
        out.emit(_csv_text(header, rows))
    else:
        lines = [f"{command}: group {args.group}, "
                 f"cap {'full' if args.cap is None else args.cap}"]
        if meta:
            lines[0] += "".join(f", {k} {v}" for k, v in sorted(meta.items()))
        width = max((len(r[0]) + len(r[1]) for r in rows), default=0) + 4
        for row in rows:
            pair = f"({row[0]}, {row[1]})"
            lines.append(f"  {pair:<{width}} {row[4]}")
        out.emit("\n".join(lines))
    return 0


def _cmd_kl(args, out: _Output, inverse: bool) -> int:
    group = build_group(args.group, args.cap)
    table = KLTable(group)
    table.build_all()
    if not inverse and getattr(args, "mu", False):
        return _cmd_mu(args, out, table)
    pairs = []
    for x in group:
        if inverse:
            col = table.inverse_column(x)
            pairs.extend((y, x, col.get(y, LaurentPoly.zero()))
                         for y in group.downset(x))
        else:
            bx = table.kl_basis_element(x)
            pairs.extend((y, x, bx.coefficient(y)) for y in group.downset(x))
    rows, entries = _table_entries(group, pairs)
    return _emit_table(args, out, "invkl" if inverse else "kl", rows, entries)


def _cmd_mu(args, out: _Output, table: KLTable) -> int:
    group = table.group
    rows = []
    entries = {}
    for x in group:
        for y in group.downset(x):
            m = table.mu(y, x)
            rows.append([render_word(y.word), render_word(x.word),
                         str(y.length), str(x.length), str(m)])
            entries[f"{render_word(y.word)}|{render_word(x.word)}"] = m
    if out.fmt == "json":
        out.emit(_json_dump({"command": "mu", "group": args.group,
                             "cap": args.cap, "entries": entries}))
    elif out.fmt == "csv":
        out.emit(_csv_text(["y", "x", "len_y", "len_x", "mu"], rows))
    else:
        lines = [f"mu: group {args.group}, "
                 f"cap {'full' if args.cap is None else args.cap}"]
        lines.extend(f"  ({r[0]}, {r[1]})  {r[4]}" for r in rows if r[4] != "0")
        out.emit("\n".join(lines))
    return 0


def _cmd_parabolic(args, out: _Output) -> int:
    group = build_group(args.group, args.cap)
    subset = _subset_parse(args.parabolic, group.matrix.rank)
    ctx = ParabolicContext(group, subset, args.flavor)
    table = ParabolicKLTable(ctx)
    table.build_all()
    pairs = []
    for x in ctx.reps:
        if args.family == "invkl":
            col = table.inverse_column(x)
        else:
            col = table.canonical_basis_element(x).terms
        for y in group.downset(x):
            if ctx.is_rep(y) and y in col:
                pairs.append((y, x, col[y]))
    rows, entries = _table_entries(group, pairs)
    subset_text = _subset_text(subset)
    return _emit_table(
        args, out, f"parabolic-{args.family}", rows, entries,
        extra_cols=["flavor", "I"], extra_vals=[args.flavor, subset_text],
        meta={"flavor": args.flavor, "I": sorted(t + 1 for t in subset),
              "family": args.family})


def _cmd_rouquier(args, out: _Output) -> int:
    group = build_group(args.group, args.cap)
    table = KLTable(group)
    x = group.element(parse_word(args.element, group.matrix.rank))
    rt = verify.rouquier_multiplicities(table, x)
    rows = [[render_word(y.word), str(i), str(m)] for y, i, m in rt.rows()]
    if out.fmt == "json":
        out.emit(_json_dump({
            "command": "rouquier", "group": args.group, "cap": args.cap,
            "x": render_word(x.word),
            "entries": {f"{render_word(y.word)}|{i}": m
                        for y, i, m in rt.rows()},
        }))
    elif out.fmt == "csv":
        out.emit(_csv_text(["y", "i", "mult"], rows))
    else:
        lines = [f"rouquier: group {args.group}, x {render_word(x.word)}"]
        lines.extend(f"  y={r[0]} i={r[1]} mult={r[2]}" for r in rows)
        out.emit("\n".join(lines))
    return 0


_SCANS = {
    "classical": (verify.scan_monotonicity_classical, None),
    "inverse": (verify.scan_monotonicity_inverse, None),
    "antispherical": (verify.scan_monotonicity_antispherical, ANTISPHERICAL),
    "spherical": (verify.scan_monotonicity_spherical, SPHERICAL),
}


def _cmd_scan(args, out: _Output) -> int:
    group = build_group(args.group, args.cap)
    scanner, flavor = _SCANS[args.name]
    subset = _subset_parse(args.parabolic, group.matrix.rank)
    expect = args.expect_violations
    if expect is None:
        expect = args.name == "spherical"
    if flavor is None:
        if args.parabolic not in ("", "none", "-") and subset:
            raise CoxeterSpecError(
                f"scan {args.name!r} does not take a parabolic subset")
        table = KLTable(group)
        count, violations = scanner(table, threads=args.threads)
        ctx = None
    else:
        ctx = ParabolicContext(group, subset, flavor)
        ptable = ParabolicKLTable(ctx)
        count, violations = scanner(ptable, threads=args.threads)
    res = CheckResult(f"scan-{args.name}", args.group,
                      sorted(t + 1 for t in subset), flavor, args.cap,
                      pairs_checked=count, expected_violations=expect,
                      violations=violations)
    if violations and not expect:
        res.passed = False
    if args.name == "spherical" and expect and ctx is not None:
        verify.evaluate_spherical_mandate(res, ctx)
    if out.fmt == "json":
        out.emit(_json_dump(res.to_json_obj()))
    elif out.fmt == "csv":
        rows = [[render_word(v.z.word), render_word(v.y.word),
                 render_word(v.x.word), poly_csv(v.lhs), poly_csv(v.rhs),
                 str(v.witness_exponent)] for v in violations]
        out.emit(_csv_text(["z", "y", "x", "lhs", "rhs", "witness_exponent"],
                           rows))
    else:
        out.emit("\n".join(res.text_lines()))
    return 0 if res.passed else 1


def _cmd_suite(args, out: _Output) -> int:
    probe = build_group(args.group, args.cap)
    rank = probe.matrix.rank
    if args.parabolic:
        subsets = [_subset_parse(p, rank) for p in args.parabolic]
        if frozenset() not in subsets:
            subsets.insert(0, frozenset())
    else:
        subsets = [frozenset()] + [frozenset({t}) for t in range(rank)]
    report = verify.run_identity_suite(args.group, subsets, args.cap,
                                       threads=args.threads)
    if out.fmt == "json":
        out.emit(_json_dump(report.to_json_obj()))
    elif out.fmt == "csv":
        rows = [[c.check, _subset_text([t - 1 for t in c.subset]),
                 c.flavor or "-", str(c.pairs_checked),
                 str(len(c.violations)), "pass" if c.passed else "fail"]
                for c in report.checks]
        out.emit(_csv_text(
            ["check", "I", "flavor", "checked", "violations", "status"],
            rows))
    else:
        out.emit("\n".join(report.text_lines()))
    return 0 if report.passed else 1


# ----------------------------------------------------------------------
# argument parsing and dispatch
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kllab",
        description="Kazhdan-Lusztig, inverse and parabolic polynomial "
                    "tables and theorem scans for Coxeter systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, parabolic=False, flavor=False, threads=False):
        p.add_argument("--group", required=True,
                       help="type string (A3, B2, I2(7), I2(inf), Aff-A1, "
                            "...) or file:PATH")
        p.add_argument("--cap", type=int, default=None,
                       help="length cap; required for infinite groups")
        p.add_argument("--format", choices=["text", "csv", "json"],
                       default="text")
        p.add_argument("--out", default=None, help="write output to a file")
        if parabolic:
            p.add_argument("--parabolic", default="",
                           help="comma-separated 1-based generator indices "
                                "(empty or 'none' for no subset)")
        if flavor:
            p.add_argument("--flavor", required=True,
                           choices=[SPHERICAL, ANTISPHERICAL])
        if threads:
            p.add_argument("--threads", type=int, default=1)

    common(sub.add_parser("info", help="group order and longest length"))
    p = sub.add_parser("kl", help="table of the polynomials h_{y,x}")
    common(p)
    p.add_argument("--mu", action="store_true",
                   help="emit the integer mu table instead of h_{y,x}")
    common(sub.add_parser("invkl", help="table of the inverse polynomials"))

    p = sub.add_parser("parabolic", help="parabolic polynomial tables")
    common(p, parabolic=True, flavor=True)
    p.add_argument("--family", choices=["kl", "invkl"], default="kl")

    p = sub.add_parser("rouquier",
                       help="graded multiplicities of one standard object")
    common(p)
    p.add_argument("--element", required=True,
                   help="comma-separated word, e.g. '1,2,1' ('e' = identity)")

    p = sub.add_parser("scan", help="run one monotonicity scan")
    common(p, parabolic=True, threads=True)
    p.add_argument("--name", required=True, choices=sorted(_SCANS))
    p.add_argument("--expect-violations", dest="expect_violations",
                   action="store_true", default=None,
                   help="violations do not fail the scan "
                        "(default for the spherical scan)")
    p.add_argument("--no-expect-violations", dest="expect_violations",
                   action="store_false")

    p = sub.add_parser("suite", help="all identity checks plus all scans")
    common(p, threads=True)
    p.add_argument("--parabolic", action="append", default=None,
                   help="generator subset to include (repeatable); default "
                        "is the empty subset plus every singleton")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Output(args.format, args.out)
    try:
        if args.command == "info":
            return _cmd_info(args, out)
        if args.command == "kl":
            return _cmd_kl(args, out, inverse=False)
        if args.command == "invkl":
            return _cmd_kl(args, out, inverse=True)
        if args.command == "parabolic":
            return _cmd_parabolic(args, out)
        if args.command == "rouquier":
            return _cmd_rouquier(args, out)
        if args.command == "scan":
            return _cmd_scan(args, out)
        if args.command == "suite":
            return _cmd_suite(args, out)
        raise AssertionError(f"unhandled command {args.command}")
    except (CoxeterSpecError, CapRequiredError) as exc:
        _emit_error(exc)
        return 2
    except (CapExceededError, ResourceLimitError, InvariantError,
            FlavorMismatchError) as exc:
        _emit_error(exc)
        return 1


def _emit_error(exc: Exception) -> None:
    sys.stderr.write(_json_dump({
        "error": type(exc).__name__, "message": str(exc)}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
