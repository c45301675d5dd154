"""Grid scans of template and exact cp-ranks, written as CSV or JSONL."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from math import isqrt
from pathlib import Path

from . import cp2
from .exact_matrix import Mat2
from .oracle import DEFAULT_BUDGET, OracleInconclusive, exact_cp_rank

FIELDS = ("a", "b", "c", "upper", "exact", "template", "nodes")
INCONCLUSIVE = "inconclusive"


class ScanAuditError(AssertionError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    max_diag: int
    exact: bool = False
    output_path: Path | None = None
    format: str = "csv"
    parallelism: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_diag < 1:
            raise ValueError("max_diag must be >= 1")
        if self.format not in ("csv", "jsonl"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


@dataclass(frozen=True)
class ScanRow:
    a: int
    b: int
    c: int
    upper: int
    exact: int | None = None
    template: str = ""
    nodes: int | None = None
    inconclusive: bool = False

    def audit(self) -> None:
        if self.upper > 11:
            raise ScanAuditError(f"upper bound {self.upper} > 11 at ({self.a},{self.b},{self.c})")
        if self.exact is not None and self.exact > self.upper:
            raise ScanAuditError(f"exact {self.exact} > upper {self.upper} at ({self.a},{self.b},{self.c})")

    def to_record(self) -> dict:
        exact = INCONCLUSIVE if self.inconclusive else self.exact
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "upper": self.upper,
            "exact": exact,
            "template": self.template,
            "nodes": self.nodes,
        }

    @classmethod
    def from_record(cls, rec: dict) -> ScanRow:
        def opt(v):
            return None if v in (None, "") else int(v)

        exact = rec["exact"]
        inconclusive = exact == INCONCLUSIVE
        return cls(
            a=int(rec["a"]),
            b=int(rec["b"]),
            c=int(rec["c"]),
            upper=int(rec["upper"]),
            exact=None if inconclusive else opt(exact),
            template=rec["template"],
            nodes=opt(rec["nodes"]),
            inconclusive=inconclusive,
        )


@dataclass
class ScanSummary:
    rows: int = 0
    max_rank: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    witnesses: list[tuple[int, int, int]] = field(default_factory=list)
    max_upper: int = 0
    inconclusive: int = 0
    ranked_by: str = "upper"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        d["witnesses"] = [list(w) for w in self.witnesses]
        return d


def grid(max_diag: int):
    """Yield (a, c) with a <= c, in scan order."""
    for a in range(max_diag + 1):
        for c in range(a, max_diag + 1):
            yield a, c


def _rows_for(args) -> list[ScanRow]:
    a, c, exact, budget = args
    out = []
    for b in range(isqrt(a * c) + 1):
        m = Mat2(a, b, c)
        f = cp2.factor(m)
        row = ScanRow(a, b, c, upper=f.size, template=f.method)
        if exact:
            try:
                rep = exact_cp_rank(m, budget, max_entry=max(a, c))
                row = ScanRow(a, b, c, f.size, rep.rank, f.method, rep.nodes_explored)
            except OracleInconclusive as exc:
                row = ScanRow(a, b, c, f.size, None, f.method, exc.nodes, inconclusive=True)
        out.append(row)
    return out


def iter_rows(cfg: ScanConfig):
    """Rows in canonical order (a, then c, then b) for any worker count."""
    work = [(a, c, cfg.exact, cfg.budget) for a, c in grid(cfg.max_diag)]
    if cfg.parallelism == 1:
        for item in work:
            yield from _rows_for(item)
        return
    with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
        # map() yields in submission order
        for rows in pool.map(_rows_for, work, chunksize=8):
            yield from rows


def format_rows(rows, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            row.audit()
            rec = row.to_record()
            w.writerow({k: "" if v is None else v for k, v in rec.items()})
    else:
        for row in rows:
            row.audit()
            buf.write(json.dumps(row.to_record(), separators=(",", ":")) + "\n")
    return buf.getvalue()


def parse_rows(text: str, fmt: str) -> list[ScanRow]:
    if fmt == "csv":
        return [ScanRow.from_record(r) for r in csv.DictReader(io.StringIO(text))]
    return [ScanRow.from_record(json.loads(line)) for line in text.splitlines() if line.strip()]


def summarize(rows, exact: bool) -> ScanSummary:
    s = ScanSummary(ranked_by="exact" if exact else "upper")
    hist = Counter()
    for row in rows:
        s.rows += 1
        s.max_upper = max(s.max_upper, row.upper)
        if row.inconclusive:
            s.inconclusive += 1
            continue
        r = row.exact if exact else row.upper
        hist[r] += 1
        if r > s.max_rank:
            s.max_rank, s.witnesses = r, []
        if r == s.max_rank:
            s.witnesses.append((row.a, row.b, row.c))
    s.histogram = dict(sorted(hist.items()))
    return s


def run_scan(cfg: ScanConfig, stream=None) -> ScanSummary:
    """Scan the grid, write the data file (if configured), and summarize.

    The data file holds rows only; run metadata goes to ``<output>.meta.json``
    so repeated runs stay byte-identical.
    """
    rows = list(iter_rows(cfg))
    text = format_rows(rows, cfg.format)
    summary = summarize(rows, cfg.exact)
    if stream is not None:
        stream.write(text)
    if cfg.output_path is not None:
        path = Path(cfg.output_path)
        path.write_text(text)
        meta = {
            "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "config": {
                "max_diag": cfg.max_diag,
                "exact": cfg.exact,
                "format": cfg.format,
                "parallelism": cfg.parallelism,
                "budget": cfg.budget,
            },
            "summary": summary.to_dict(),
            "note": "grid restricted to a <= c; each witness implies its transpose (c, b, a)",
        }
        path.with_name(path.name + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return summary
