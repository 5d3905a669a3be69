"""Command-line interface and report emitters.

Subcommands: chi, dims, phi, sl2-mult, gsp4-central, verify, groups.
All values are emitted as exact rationals ("p/q"); --decimal adds a clearly
labeled approximate column.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import arthurphi, arithvol, groupdef, kottwitz
from .exactnum import Rat
from .groupdef import GroupDefError, emit_groupdef, load_group, parse_groupdef
from .kottwitz import TermReport
from .reps import Gsp4Parameter, Sl2Parameter, weyl_dim
from .rootdata import builtin

FORMATS = ("markdown", "csv", "json")


def parse_range(text: str) -> list[int]:
    """Inclusive integer range 'lo..hi', or a single integer."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty range {text!r}")
        return list(range(start, stop + 1))
    return [int(text)]


def decimal_str(value: Rat, digits: int) -> str:
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}" if digits else f"{sign}{whole}"


# -- table and report rendering ------------------------------------------


class Table:
    def __init__(self, columns: list[str], rows: list[list]):
        self.columns = columns
        self.rows = rows

    def with_decimals(self, digits: int) -> "Table":
        cols = list(self.columns)
        rat_cols = [
            i for i in range(len(cols)) if any(isinstance(r[i], Fraction) for r in self.rows)
        ]
        for i in rat_cols:
            cols.append(f"~{self.columns[i]} ({digits} digits, approximate)")
        rows = []
        for r in self.rows:
            extra = [
                decimal_str(r[i], digits) if isinstance(r[i], Fraction) else ""
                for i in rat_cols
            ]
            rows.append(list(r) + extra)
        return Table(cols, rows)


def _cell(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def render_table(table: Table, fmt: str) -> str:
    if fmt == "markdown":
        widths = [
            max(len(c), *(len(_cell(r[i])) for r in table.rows)) if table.rows else len(c)
            for i, c in enumerate(table.columns)
        ]
        head = "| " + " | ".join(c.ljust(w) for c, w in zip(table.columns, widths)) + " |"
        rule = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        lines = [head, rule]
        for r in table.rows:
            lines.append(
                "| " + " | ".join(_cell(v).ljust(w) for v, w in zip(r, widths)) + " |"
            )
        return "\n".join(lines)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for r in table.rows:
            writer.writerow([_cell(v) for v in r])
        return buf.getvalue().rstrip("\n")
    if fmt == "json":
        return json.dumps(
            {"columns": table.columns, "rows": [[_cell(v) for v in r] for r in table.rows]},
            indent=2,
        )
    raise ValueError(f"unknown format {fmt!r}")


def report_to_dict(rep: TermReport) -> dict:
    return {
        "group": rep.group,
        "labeled_terms": [
            {"label": t.label, "value": str(t.value), "citation": t.citation}
            for t in rep.labeled_terms
        ],
        "total": str(rep.total),
        "flags": {k: v for k, v in rep.flags.items()},
    }


def report_from_dict(data: dict) -> TermReport:
    terms = tuple(
        kottwitz.TermEntry(t["label"], Fraction(t["value"]), t["citation"])
        for t in data["labeled_terms"]
    )
    return TermReport(data["group"], terms, Fraction(data["total"]), dict(data.get("flags", {})))


def render_report(rep: TermReport, fmt: str, digits: int | None) -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(rep), indent=2)
    table = Table(
        ["term", "value", "citation"],
        [[t.label, t.value, t.citation] for t in rep.labeled_terms]
        + [["total", rep.total, ""]],
    )
    if digits is not None:
        table = table.with_decimals(digits)
    body = render_table(table, fmt)
    if fmt == "markdown":
        flags = ", ".join(f"{k}={v}" for k, v in rep.flags.items())
        return f"### group {rep.group}" + (f" ({flags})" if flags else "") + "\n\n" + body
    return body


# -- subcommands -----------------------------------------------------------


def _emit(args, table: Table) -> None:
    if args.decimal is not None:
        table = table.with_decimals(args.decimal)
    print(render_table(table, args.format))


def cmd_chi(args) -> int:
    prof = arithvol.profile(args.group)
    value = arithvol.chi_K(prof)
    if args.format == "markdown":
        print(value)
    elif args.format == "csv":
        _emit(args, Table(["group", "chi"], [[args.group, value]]))
    else:
        print(json.dumps({"group": args.group, "chi_k": str(value)}, indent=2))
    return 0


def _gsp4_pairs(args) -> list[tuple[int, int]]:
    pairs = []
    for a in parse_range(args.a):
        if a % 2 == 0:
            continue
        for b in parse_range(args.b):
            if b % 2 == 0 or not a > b > 0:
                continue
            pairs.append((a, b))
    if not pairs:
        raise ValueError("no valid odd pairs a > b > 0 in the requested ranges")
    return pairs


def cmd_dims(args) -> int:
    datum = builtin(args.group)
    from .reps import highest_weight

    if args.group == "sl2":
        rows = []
        for n in parse_range(args.n):
            lam, _ = highest_weight(datum, "sl2", Sl2Parameter(n))
            rows.append([n, weyl_dim(datum, lam)])
        _emit(args, Table(["n", "dim"], rows))
        return 0
    rows = []
    for a, b in _gsp4_pairs(args):
        if args.group == "gsp4":
            lam, _ = highest_weight(datum, "gsp4", Gsp4Parameter(a, b, args.t))
        else:
            lam, _ = highest_weight(datum, "h", Gsp4Parameter(a, b, args.t))
        rows.append([a, b, args.t, weyl_dim(datum, lam)])
    _emit(args, Table(["a", "b", "t", "dim"], rows))
    return 0


def cmd_phi(args) -> int:
    if args.group == "sl2":
        p = Sl2Parameter(parse_range(args.n)[0])
    else:
        pairs = _gsp4_pairs(args)
        p = Gsp4Parameter(*pairs[0], args.t)
    table = arthurphi.phi_levi_table(args.group, p, args.z)
    _emit(args, Table(["levi", "phi"], [[name, v] for name, v in table.items()]))
    return 0


def cmd_sl2_mult(args) -> int:
    rows = []
    for n in parse_range(args.n):
        rep = kottwitz.sl2_st_total(n)
        rows.append([n, rep.total])
    _emit(args, Table(["n", "value"], rows))
    return 0


def cmd_gsp4_central(args) -> int:
    pairs = _gsp4_pairs(args)
    if len(pairs) == 1 and args.format != "csv":
        a, b = pairs[0]
        stable = kottwitz.gsp4_central_stable(a, b, args.t)
        endo = kottwitz.gsp4_central_endoscopic(a, b, args.t)
        if args.format == "json":
            print(
                json.dumps(
                    {
                        "stable": report_to_dict(stable),
                        "endoscopic": report_to_dict(endo),
                        "holomorphic": str(stable.total + endo.total),
                        "large": str(stable.total - endo.total),
                    },
                    indent=2,
                )
            )
            return 0
        print(render_report(stable, args.format, args.decimal))
        print()
        print(render_report(endo, args.format, args.decimal))
        print()
        print(f"holomorphic member: {stable.total + endo.total}")
        print(f"large member:       {stable.total - endo.total}")
        return 0
    rows = []
    for a, b in pairs:
        s = kottwitz.gsp4_central_stable(a, b, args.t).total
        e = kottwitz.gsp4_central_endoscopic(a, b, args.t).total
        rows.append([a, b, s, e, s + e, s - e])
    _emit(
        args,
        Table(["a", "b", "stable", "endoscopic", "holomorphic", "large"], rows),
    )
    return 0


def cmd_verify(args) -> int:
    if args.target != "theorem1":
        print(f"unknown verification target {args.target!r}", file=sys.stderr)
        return 2
    result = kottwitz.verify_theorem1(args.a_max)
    if result.ok:
        print(f"OK: 0 counterexamples (odd pairs up to a={args.a_max}; "
              f"polynomial identity {'confirmed' if result.polynomial_ok else 'FAILED'})")
        return 0
    print(f"FAILED: {len(result.counterexamples)} counterexamples; "
          f"polynomial identity {'confirmed' if result.polynomial_ok else 'FAILED'}")
    for entry in result.counterexamples[:20]:
        a, b, kind, got, want = entry
        print(f"  (a={a}, b={b}, {kind}): got {got}, expected {want}")
    return 1


def cmd_groups(args) -> int:
    if args.emit:
        print(emit_groupdef(load_group(args.emit)), end="")
        return 0
    for name in groupdef.list_groups():
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabletrace",
        description="Exact central and elliptic terms of stable trace sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="markdown")
        p.add_argument("--decimal", type=int, default=None, metavar="DIGITS",
                       help="add an approximate decimal column")

    p = sub.add_parser("chi", help="Euler characteristic of a built-in group")
    p.add_argument("--group", required=True)
    common(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("dims", help="dimensions of the parametrized representations")
    p.add_argument("--group", choices=("sl2", "gsp4", "h"), required=True)
    p.add_argument("--n", default="1..12", help="range lo..hi (sl2)")
    p.add_argument("--a", default="3..9", help="range lo..hi, odd filtered")
    p.add_argument("--b", default="1..7", help="range lo..hi, odd filtered")
    p.add_argument("--t", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("phi", help="table of the extended character values at a central element")
    p.add_argument("--group", choices=("sl2", "gsp4", "h"), required=True)
    p.add_argument("--n", default="11")
    p.add_argument("--a", default="5")
    p.add_argument("--b", default="3")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--z", type=int, choices=(1, -1), default=1)
    common(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("sl2-mult", help="rank-1 multiplicity values")
    p.add_argument("--n", required=True, help="range lo..hi")
    common(p)
    p.set_defaults(func=cmd_sl2_mult)

    p = sub.add_parser("gsp4-central", help="central terms for the rank-2 similitude group")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--t", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_gsp4_central)

    p = sub.add_parser("verify", help="run a verification scan")
    p.add_argument("target", help="theorem1")
    p.add_argument("--a-max", type=int, default=99)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("groups", help="list built-in groups or emit one canonically")
    p.add_argument("--emit", default=None, metavar="NAME")
    common(p)
    p.set_defaults(func=cmd_groups)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GroupDefError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
