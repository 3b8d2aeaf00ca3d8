"""wittknot command line."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import commands
from .records import IngestError, bundled_path, import_knotinfo, ingest

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3

DEFAULT_INPUT = {
    "compute": ["worked_knots.json"],
    "obstruct-u1": ["worked_knots.json"],
    "obstruct-u2": ["worked_forms.json"],
    "report": ["worked_knots.json", "seifert_samples.json"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for invalid data here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _d_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    # knot determinants are odd
    return [d for d in range(max(lo, 1), hi + 1) if d % 2]


def _grid(text: str) -> tuple[int, int]:
    try:
        k, ell = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected KxL, got {text!r}") from None
    if k < 1 or ell < 1:
        raise argparse.ArgumentTypeError("grid sides must be positive")
    return k, ell


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="PATH",
                        help="knot records (repeatable); defaults to the bundled fixtures")
    common.add_argument("--format", choices=["json", "csv", "knotinfo"],
                        help="input format (default: from the file suffix); "
                             "'knotinfo' reads a CSV export of that database")
    common.add_argument("--symmetric", action="store_true",
                        help="matrices are already symmetrized (V + V^T)")
    common.add_argument("--strict-seifert", action="store_true",
                        help="reject Seifert matrices with det(V - V^T) != 1")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")

    parser = _Parser(prog="wittknot",
                     description="Rational Witt classes of knots and unknotting obstructions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("compute", parents=[common], help="phi, signature, determinant")
    sub.add_parser("obstruct-u1", parents=[common], help="can one crossing change unknot K?")
    p = sub.add_parser("obstruct-u2", parents=[common],
                       help="determinants (and table knots) L left after one of two changes")
    p.add_argument("--d-range", type=_d_range, metavar="LO..HI")
    p.add_argument("--candidates", metavar="PATH",
                   help="knot table CSV/JSON; 'bundled' for the knots up to 9 crossings")
    p.add_argument("--name", help="only this record of the input")
    p = sub.add_parser("pretzel", parents=[common], help="closed-form pretzel invariants")
    p.add_argument("--three", type=int, nargs=3, metavar="P")
    p.add_argument("--four", type=int, nargs=4, metavar="P")
    p.add_argument("--four-family", type=int, metavar="Q",
                   help="P(p,p,p,-3p-1) with p = 2 + (2k+1) Q^(l+1)")
    p.add_argument("--grid", type=_grid, default=(3, 3), metavar="KxL",
                   help="k in [0,K), l in [0,L) for --four-family")
    p = sub.add_parser("lickorish", parents=[common], help="q = +-2t^2 mod det for L(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("det", type=int)
    p.add_argument("--name", help="attach this record from --input to the report")
    sub.add_parser("report", parents=[common], help="u = 1 verdicts plus lens checks")
    return parser


def _load(args) -> list:
    paths = args.input or [str(bundled_path(n)) for n in DEFAULT_INPUT.get(args.command, [])]
    mode = "symmetric" if args.symmetric else None
    out = []
    for path in paths:
        if args.format == "knotinfo":
            out.extend(import_knotinfo(path, args.strict_seifert))
        else:
            out.extend(ingest(path, args.format, mode, args.strict_seifert))
    return out


def format_table(rows: list[dict], columns: list[str]) -> str:
    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, list):
            return "[" + ", ".join(map(str, v)) + "]"
        return str(v)

    body = [[cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(b[i]) for b in body]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(b, widths)).rstrip() for b in body]
    return "\n".join(lines)


def _emit(rows: list[dict], columns: list[str], as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(rows, indent=1) + "\n")
    else:
        out.write(format_table(rows, columns) + "\n")


def _status(rows) -> int:
    if any(r.verdict == "invalid" for r in rows):
        return EXIT_INVALID
    if any("fixture_mismatch" in r.detail for r in rows):
        return EXIT_MISMATCH
    return EXIT_OK


def _notices(records) -> None:
    for rec in records:
        for msg in rec.notices + rec.issues:
            print(f"note: {msg}", file=sys.stderr)


def run(args) -> int:
    cmd = args.command
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")

    if cmd == "pretzel":
        if args.three is None and args.four is None and args.four_family is None:
            raise UsageError("give --three, --four or --four-family")
        rows = commands.cmd_pretzel(args.three, args.four, args.four_family, args.grid, args.jobs)
        cols = ["name", "phi", "sigma", "det", "verdict", "witness"]
        if args.four_family is not None:
            cols += ["k", "l", f"boundary_{args.four_family}"]
        elif any("family_check" in r.detail for r in rows):
            cols += ["family_check", "family_witness"]
        _emit([r.as_dict() for r in rows], cols, args.json)
        return EXIT_OK

    if cmd == "lickorish":
        rec = None
        if args.name:
            recs = [r for r in _load(args) if r.name == args.name]
            if not recs:
                raise UsageError(f"no record named {args.name!r}")
            rec = recs[0]
        row = commands.cmd_lickorish(args.p, args.q, args.det, rec)
        _emit([row.as_dict()], ["name", "det", "lens", "verdict", "solutions", "note"], args.json)
        return EXIT_OK

    records = _load(args)
    _notices(records)

    if cmd == "compute":
        rows = commands.cmd_compute(records, args.jobs)
        _emit([r.as_dict() for r in rows], ["name", "phi", "sigma", "det", "verdict"], args.json)
        return _status(rows)

    if cmd in ("obstruct-u1", "report"):
        fn = commands.cmd_obstruct_u1 if cmd == "obstruct-u1" else commands.cmd_report
        rows = fn(records, args.jobs)
        for r in rows:
            if r.verdict == "skipped":
                print(f"note: {r.name}: {r.detail['notice']}", file=sys.stderr)
        cols = ["name", "sigma", "det", "verdict", "witness", "witness_classes"]
        if cmd == "report":
            cols = ["name", "phi", "sigma", "det", "verdict", "witness", "lickorish", "note"]
        _emit([r.as_dict() for r in rows], cols, args.json)
        return _status(rows)

    if cmd == "obstruct-u2":
        if args.d_range is None and args.candidates is None:
            raise UsageError("give --d-range and/or --candidates")
        if args.name:
            records = [r for r in records if r.name == args.name]
            if not records:
                raise UsageError(f"no record named {args.name!r}")
        cands = None
        if args.candidates is not None:
            path = bundled_path("knots_le9.csv") if args.candidates == "bundled" else args.candidates
            cands = ingest(path, None, None, args.strict_seifert)
        results = []
        for rec in records:
            if rec.phi() is None:
                print(f"note: {rec.name}: no matrix or form, skipped", file=sys.stderr)
                continue
            results.append(commands.cmd_obstruct_u2(rec, args.d_range, cands))
        if args.json:
            sys.stdout.write(json.dumps([r.as_dict() for r in results], indent=1) + "\n")
        else:
            for res in results:
                print(f"{res.name}: det {res.det}, sigma {res.sigma}")
                print("surviving det L: " + ", ".join(map(str, res.survivors)))
                if res.candidates is not None:
                    table = [{"name": n, "det": d, "sigma": s} for n, d, s in res.candidates]
                    print(format_table(table, ["name", "det", "sigma"]))
                for msg in res.notices:
                    print(f"note: {msg}", file=sys.stderr)
        return EXIT_OK

    raise UsageError(f"unknown command {cmd}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except UsageError as e:
        print(f"wittknot: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IngestError as e:
        print(f"wittknot: invalid data: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as e:
        print(f"wittknot: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"wittknot: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
