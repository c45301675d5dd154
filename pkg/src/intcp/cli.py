"""Command-line front end: ``intcp factor|rank|squares|rank1|scan``.

Exit codes: 0 success, 1 validation error, 2 inconclusive oracle, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import click

from . import cp2
from .exact_matrix import Mat2, MatN, ValidationError, check_range, dnn_violation, is_rank1_dnn, verify
from .oracle import DEFAULT_BUDGET, OracleInconclusive, exact_cp_rank, upper_bound_report
from .rank1 import factor_rank1
from .scan import ScanConfig, run_scan
from .squares import decompose

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_IO = 0, 1, 2, 3


def parse_int(text: str, name: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ValidationError(f"{name}: malformed integer {text!r}") from None


def mat2_from_strings(a: str, b: str, c: str) -> Mat2:
    m = Mat2(parse_int(a, "a"), parse_int(b, "b"), parse_int(c, "c"))
    check_range(*m)
    msg = dnn_violation(m)
    if msg:
        raise ValidationError(msg)
    return m


def read_matrix_text(text: str) -> MatN:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValidationError("empty matrix")
    m = MatN.from_rows([[parse_int(x, f"entry ({i + 1},{j + 1})") for j, x in enumerate(r)] for i, r in enumerate(rows)])
    for row in m.entries:
        check_range(*row)
    if not m.is_symmetric():
        raise ValidationError("matrix is not symmetric")
    if not m.is_nonnegative():
        raise ValidationError("not nonnegative: matrix has a negative entry")
    return m


def read_matrix_file(path) -> MatN:
    return read_matrix_text(Path(path).read_text())


def parse_matrix_args(argv) -> Mat2 | MatN:
    """Parse ``--a/--b/--c`` or ``--matrix FILE`` into a validated instance."""
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--matrix")
    ns, _ = p.parse_known_args(list(argv))
    if ns.matrix is not None:
        return read_matrix_file(ns.matrix)
    missing = [k for k in "abc" if getattr(ns, k) is None]
    if missing:
        raise ValidationError("missing " + ", ".join(f"--{k}" for k in missing))
    return mat2_from_strings(ns.a, ns.b, ns.c)


def _emit(obj: dict, as_json: bool, human: str) -> None:
    click.echo(json.dumps(obj, separators=(",", ":")) if as_json else human)


def _cols_text(cols) -> str:
    return " ".join("(" + ",".join(map(str, c)) + ")" for c in cols) or "(none)"


@click.group()
def main():
    """Integer cp-factorizations of 2x2 doubly nonnegative matrices."""


@main.command()
@click.option("--a", "a", required=True)
@click.option("--b", "b", required=True)
@click.option("--c", "c", required=True)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--verify", "do_verify", is_flag=True, help="re-check reconstruction")
def factor(a, b, c, as_json, do_verify):
    """Factor [[a, b], [b, c]] with at most 11 columns."""
    m = mat2_from_strings(a, b, c)
    f = cp2.factor(m)
    out = {"a": m.a, "b": m.b, "c": m.c, **f.to_dict()}
    ok = None
    if do_verify:
        ok = verify(m, f)
        out["verified"] = ok
    human = f"{m}: {f.size} columns via {f.method}\n  {_cols_text(f.columns)}"
    if ok is not None:
        human += f"\n  verified: {ok}"
    _emit(out, as_json, human)
    if ok is False:
        sys.exit(EXIT_INVALID)


@main.command()
@click.option("--a", "a", required=True)
@click.option("--b", "b", required=True)
@click.option("--c", "c", required=True)
@click.option("--exact", is_flag=True, help="run the branch-and-bound oracle")
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True, help="oracle node limit")
@click.option("--max-entry", default=512, show_default=True, help="oracle cap on a and c")
@click.option("--json", "as_json", is_flag=True)
def rank(a, b, c, exact, budget, max_entry, as_json):
    """Integer cp-rank: template upper bound, or exact with --exact."""
    m = mat2_from_strings(a, b, c)
    rep = exact_cp_rank(m, budget, max_entry=max_entry) if exact else upper_bound_report(m)
    human = (
        f"{m}: rank {rep.rank} ({rep.method.value}, {rep.nodes_explored} nodes)\n"
        f"  {_cols_text(rep.certificate.columns)}"
    )
    _emit({"a": m.a, "b": m.b, "c": m.c, **rep.to_dict()}, as_json, human)


@main.command()
@click.argument("x")
@click.option("--json", "as_json", is_flag=True)
def squares(x, as_json):
    """Fewest squares summing to X and the canonical decomposition."""
    n = parse_int(x, "x")
    if n < 0:
        raise ValidationError(f"x must be nonnegative, got {n}")
    check_range(n)
    d = decompose(n)
    human = f"{n} = " + (" + ".join(f"{s}^2" for s in d.parts) or "0") + f"  ({d.count} squares)"
    _emit(d.to_dict(), as_json, human)


@main.command()
@click.option("--matrix", "matrix", required=True, type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def rank1(matrix, as_json):
    """Factor a rank-one DNN matrix read from a whitespace-separated file."""
    m = read_matrix_file(matrix)
    if not is_rank1_dnn(m):
        raise ValidationError("matrix is not rank-one doubly nonnegative")
    f = factor_rank1(m)
    _emit(f.to_dict(), as_json, f"{f.size} columns: {_cols_text(f.columns)}")


@main.command()
@click.option("--max-diag", "-N", type=int, required=True, help="scan a <= c <= N")
@click.option("--exact", is_flag=True, help="also compute exact ranks")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--workers", "-j", type=int, default=1, show_default=True)
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def scan(max_diag, exact, output, fmt, workers, budget, as_json):
    """Scan every DNN matrix with a <= c <= N."""
    try:
        cfg = ScanConfig(max_diag, exact, Path(output) if output else None, fmt, workers, budget)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    # without --output the rows go to stdout ahead of the summary
    stream = click.get_text_stream("stdout") if output is None and not as_json else None
    summary = run_scan(cfg, stream=stream)
    hist = ", ".join(f"{k}:{v}" for k, v in summary.histogram.items())
    human = (
        f"rows {summary.rows}  max {summary.ranked_by} rank {summary.max_rank}  "
        f"inconclusive {summary.inconclusive}\n  histogram {hist}\n"
        f"  witnesses {' '.join(f'({a},{b},{c})' for a, b, c in summary.witnesses)}"
    )
    if stream is not None:
        click.echo(human, err=True)
    else:
        _emit(summary.to_dict(), as_json, human)


def run(argv=None) -> int:
    try:
        main.main(args=argv, prog_name="intcp", standalone_mode=False)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INVALID
    except OracleInconclusive as exc:
        click.echo(
            json.dumps({"error": "inconclusive", "lower": exc.lower, "upper": exc.upper, "nodes": exc.nodes}),
            err=True,
        )
        return EXIT_INCONCLUSIVE
    except click.exceptions.Abort:
        return EXIT_INVALID
    except click.ClickException as exc:
        exc.show()
        return EXIT_INVALID
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return EXIT_IO
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    return EXIT_OK


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
