"""Command-line front end.

Subcommands: ``term``, ``qterm``, ``table``, ``verify`` and ``bench``.
``--format`` and ``--output`` may be given before or after the subcommand.
Exit codes: 0 success, 1 identity failure or evaluator mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
import time
from typing import Iterator, TextIO

from .algebra import format_rational
from .errors import HoradamError, UnknownIdentity
from .identities import GridSpec, all_ids, check_grid, get
from .qsequences import W
from .sequences import HoradamParams, SequenceKind, params_for, term_fast, term_naive

FORMATS = ("json", "csv", "human")
GRID_VARS = ("p", "q", "w0", "w1", "z0", "z1", "n", "m", "r", "s", "k")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers


@contextlib.contextmanager
def _open_output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _csv_writer(out: TextIO):
    return csv.writer(out, lineterminator="\n")


def _json_line(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, sort_keys=False, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# argument parsing


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None


def parse_range(spec: str) -> tuple[int, ...]:
    """``"a..b"`` (inclusive), ``"a,b,c"`` or a single integer; pieces may be mixed."""
    values: list[int] = []
    for piece in spec.split(","):
        piece = piece.strip()
        if not piece:
            raise UsageError(f"empty item in range {spec!r}")
        if ".." in piece:
            lo_s, _, hi_s = piece.partition("..")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise UsageError(f"bad range {piece!r}") from None
            if lo > hi:
                raise UsageError(f"empty range {piece!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(piece))
            except ValueError:
                raise UsageError(f"bad integer {piece!r}") from None
    return tuple(sorted(set(values)))


def _add_output_flags(parser: argparse.ArgumentParser, *, top: bool) -> None:
    default = None if top else argparse.SUPPRESS
    parser.add_argument("--format", choices=FORMATS, default=default, help="output format")
    parser.add_argument("--output", metavar="PATH", default=default, help="write to PATH instead of standard output")


def _add_params(parser: argparse.ArgumentParser, *, default_kind: str = "general") -> None:
    parser.add_argument("--kind", choices=[k.value for k in SequenceKind], default=default_kind,
                        help="general Horadam, (p,q)-Fibonacci or (p,q)-Lucas")
    parser.add_argument("--w0", type=_parse_int, help="initial value w_0 (general kind)")
    parser.add_argument("--w1", type=_parse_int, help="initial value w_1 (general kind)")
    parser.add_argument("-p", "--p", dest="p", type=_parse_int, default=1, help="coefficient p (default 1)")
    parser.add_argument("-q", "--q", dest="q", type=_parse_int, default=1, help="coefficient q (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horadam", description="Horadam numbers, Horadam quaternions and identity checks.")
    _add_output_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p_term = sub.add_parser("term", help="print the Horadam number w_n")
    _add_params(p_term)
    p_term.add_argument("-n", "--n", dest="n", type=_parse_int, required=True, help="index (may be negative if q != 0)")
    _add_output_flags(p_term, top=False)

    p_q = sub.add_parser("qterm", help="print the Horadam quaternion W_n")
    _add_params(p_q)
    p_q.add_argument("-n", "--n", dest="n", type=_parse_int, required=True, help="index (may be negative if q != 0)")
    _add_output_flags(p_q, top=False)

    p_table = sub.add_parser("table", help="tabulate w_n and W_n over an index range")
    _add_params(p_table)
    p_table.add_argument("--from", dest="start", type=_parse_int, required=True, help="first index")
    p_table.add_argument("--to", dest="stop", type=_parse_int, required=True, help="last index (inclusive)")
    _add_output_flags(p_table, top=False)

    p_verify = sub.add_parser("verify", help="check identities over a parameter grid")
    p_verify.add_argument("--ids", default="all", help="comma-separated identity ids, or 'all' (default)")
    p_verify.add_argument("--default-grid", action="store_true",
                          help="start from the default grid (also the base when omitted)")
    p_verify.add_argument("--grid", action="append", default=[], metavar="VAR=SPEC",
                          help="override one grid variable, e.g. q=0 or n=0..50 (repeatable)")
    for var in GRID_VARS:
        p_verify.add_argument(f"--{var}", dest=f"grid_{var}", metavar="SPEC", help=f"values of {var}")
    p_verify.add_argument("--list", action="store_true", help="list identity ids and formulas, then exit")
    _add_output_flags(p_verify, top=False)

    p_bench = sub.add_parser("bench", help="time naive against matrix-power evaluation")
    _add_params(p_bench, default_kind="pq-fib")
    p_bench.add_argument("--ns", "--n-list", dest="ns", default="10,100,1000,10000",
                         help="comma-separated indices (default 10,100,1000,10000)")
    p_bench.add_argument("--reps", type=_parse_int, default=3, help="repetitions per timing, best kept (default 3)")
    _add_output_flags(p_bench, top=False)
    return parser


def _params(args) -> HoradamParams:
    kind = SequenceKind(args.kind)
    if kind is SequenceKind.GENERAL and (args.w0 is None or args.w1 is None):
        raise UsageError("--w0 and --w1 are required for --kind general")
    return params_for(kind, args.p, args.q, args.w0, args.w1)


# ---------------------------------------------------------------------------
# commands


def cmd_term(args, out: TextIO, fmt: str) -> int:
    value = format_rational(term_fast(_params(args), args.n))
    if fmt == "json":
        _json_line(out, {"n": args.n, "w": value})
    elif fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["n", "w"])
        w.writerow([args.n, value])
    else:
        out.write(value + "\n")
    return 0


def cmd_qterm(args, out: TextIO, fmt: str) -> int:
    quat = W(_params(args), args.n)
    if fmt == "json":
        _json_line(out, quat.to_json())
    elif fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["n", "a0", "a1", "a2", "a3"])
        w.writerow([args.n, *(format_rational(c) for c in quat.components)])
    else:
        out.write(quat.format_human() + "\n")
    return 0


def cmd_table(args, out: TextIO, fmt: str) -> int:
    if args.start > args.stop:
        raise UsageError("--from must not exceed --to")
    params = _params(args)
    rows = []
    for n in range(args.start, args.stop + 1):
        quat = W(params, n)
        rows.append((n, format_rational(quat.a0), [format_rational(c) for c in quat.components]))
    if fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["n", "w", "W_a0", "W_a1", "W_a2", "W_a3"])
        for n, wn, comps in rows:
            w.writerow([n, wn, *comps])
    elif fmt == "json":
        for n, wn, comps in rows:
            _json_line(out, {"n": n, "w": wn, "W": {f"a{i}": c for i, c in enumerate(comps)}})
    else:
        for n, wn, comps in rows:
            out.write(f"{n:>6}  {wn:>20}  ({', '.join(comps)})\n")
    return 0


def _grid_from_args(args) -> GridSpec:
    values = {}
    for item in args.grid:
        var, sep, spec = item.partition("=")
        var = var.strip()
        if not sep or var not in GRID_VARS:
            raise UsageError(f"--grid expects VAR=SPEC with VAR in {', '.join(GRID_VARS)}; got {item!r}")
        values[var] = parse_range(spec)
    for var in GRID_VARS:
        spec = getattr(args, f"grid_{var}")
        if spec is not None:
            values[var] = parse_range(spec)
    return GridSpec.default().with_values(**values)


def _selected_ids(text: str) -> list[str]:
    if text.strip() == "all":
        return all_ids()
    ids = [t.strip() for t in text.split(",") if t.strip()]
    if not ids:
        raise UsageError("--ids is empty")
    for i in ids:
        get(i)
    return ids


def cmd_verify(args, out: TextIO, fmt: str) -> int:
    if args.list:
        for i in all_ids():
            ident = get(i)
            tag = " [disputed]" if ident.disputed else ""
            out.write(f"{i}{tag}: {ident.formula}\n")
        return 0
    ids = _selected_ids(args.ids)
    grid = _grid_from_args(args)
    result = check_grid(ids, grid)
    summary = result.summary()
    reported = [f for f in result.failures if not get(f.id).disputed]
    if fmt == "json":
        for rep in reported:
            _json_line(out, rep.to_json())
        _json_line(out, summary)
    elif fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["id", "checked", "held", "failed", "skipped", "disputed"])
        for i in result.ids():
            st = result.stats[i]
            w.writerow([i, st.checked, st.held, st.failed, st.skipped, int(get(i).disputed)])
    else:
        for i in result.ids():
            st = result.stats[i]
            status = "ok" if st.failed == 0 else "FAILED"
            if get(i).disputed:
                status += " (disputed variant)"
            out.write(f"{i:24} checked={st.checked:<9} failed={st.failed:<7} skipped={st.skipped:<7} {status}\n")
        for group, verdict in summary.get("adjudication", {}).items():
            out.write(f"adjudication {group}: winner={verdict['winner']}\n")
        tot = result.totals()
        out.write(f"total checked={tot['checked']} held={tot['held']} failed={tot['failed']} skipped={tot['skipped']}\n")
        for rep in reported[:20]:
            out.write(f"FAIL {rep.id} at {json.dumps(rep.point.to_json())}: "
                      f"{rep.lhs.format_human()} != {rep.rhs.format_human()}\n")
    return 0 if result.ok else 1


def _best_time(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cmd_bench(args, out: TextIO, fmt: str) -> int:
    params = _params(args)
    ns = parse_range(args.ns)
    if any(n < 0 for n in ns):
        raise UsageError("bench needs non-negative indices")
    rows = []
    for n in ns:
        slow, fast = term_naive(params, n), term_fast(params, n)
        if slow != fast:
            print(f"horadam: evaluators disagree at n={n}", file=sys.stderr)
            return 1
        bits = abs(fast).bit_length() if isinstance(fast, int) else None
        t_naive = _best_time(lambda: term_naive(params, n), args.reps)
        t_fast = _best_time(lambda: term_fast(params, n), args.reps)
        rows.append({"n": n, "bits": bits, "naive_s": t_naive, "fast_s": t_fast})
    if fmt == "json":
        for row in rows:
            _json_line(out, row)
    elif fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["n", "bits", "naive_s", "fast_s", "speedup"])
        for row in rows:
            speed = row["naive_s"] / row["fast_s"] if row["fast_s"] > 0 else float("inf")
            w.writerow([row["n"], row["bits"], f"{row['naive_s']:.6e}", f"{row['fast_s']:.6e}", f"{speed:.2f}"])
    else:
        for row in rows:
            out.write(f"n={row['n']:<10} bits={row['bits']:<10} naive={row['naive_s']:.3e}s fast={row['fast_s']:.3e}s\n")
    return 0


COMMANDS = {
    "term": (cmd_term, "human"),
    "qterm": (cmd_qterm, "human"),
    "table": (cmd_table, "csv"),
    "verify": (cmd_verify, "json"),
    "bench": (cmd_bench, "csv"),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    fn, default_fmt = COMMANDS[args.command]
    fmt = args.format or default_fmt
    try:
        with _open_output(args.output) as out:
            return fn(args, out, fmt)
    except (UsageError, UnknownIdentity, HoradamError, ValueError, OSError) as exc:
        print(f"horadam: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
