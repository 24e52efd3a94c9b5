"""Census reports, record streams, and resumable sharded runs.

Counts stream as one record per line and land in a fixed-column CSV row so
runs can be diffed across machines and shard counts.  Long censuses can
checkpoint per shard into a work directory and resume after interruption.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .config import DEFAULT_CONFIG, RunConfig, as_fraction
from .polynomials import IntPoly, PalindromicPoly, format_coeff_list
from .salem import (
    SalemRecord,
    _record_from_certified_poly,
    run_salem_shard,
    salem_shard_descriptors,
)
from .sharding import run_sharded
from .squarerootable import (
    SqrtDecomposition,
    group_witness_rows,
    run_sq_shard,
    salem_value,
    sq_shard_descriptors,
)
from .theory import predict_salem_count, predict_square_rootable_count

CSV_COLUMNS = [
    "m",
    "Q",
    "count_all",
    "count_sq",
    "theory_all",
    "theory_sq_lower",
    "theory_sq_upper",
    "ratio_all",
    "ratio_sq",
    "wall_seconds",
    "shard_count",
]


def fmt12(x) -> str:
    """Numbers rendered with 12 significant digits, the report-wide convention."""
    if x is None:
        return ""
    return f"{float(x):.12g}"


def record_line(record: SalemRecord) -> str:
    lam = (record.lambda_bracket[0] + record.lambda_bracket[1]) / 2
    return f"{fmt12(lam)}, {record.m}, {format_coeff_list(record.min_poly.inner)}"


def parse_record_line(line: str) -> tuple[float, int, IntPoly]:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) < 3:
        raise ValueError(f"bad record line: {line!r}")
    lam = float(parts[0])
    m = int(parts[1])
    poly = IntPoly.of(*(int(c) for c in parts[2:]))
    return lam, m, poly


def witness_line(d: SqrtDecomposition) -> str:
    lam_sq = salem_value(d)
    return (
        f"{d.alpha}; {format_coeff_list(d.even_part)}; "
        f"{format_coeff_list(d.odd_part)}; {fmt12(lam_sq)}"
    )


@dataclasses.dataclass
class CensusRow:
    m: int
    Q: float
    count_all: int
    count_sq: Optional[int]
    theory_all: float
    theory_sq_lower: Optional[float]
    theory_sq_upper: Optional[float]
    wall_seconds: float
    shard_count: int

    @property
    def ratio_all(self) -> Optional[float]:
        return self.count_all / self.theory_all if self.theory_all else None

    @property
    def ratio_sq(self) -> Optional[float]:
        if self.count_sq is None or not self.theory_sq_upper:
            return None
        return self.count_sq / self.theory_sq_upper

    def to_csv_values(self) -> list[str]:
        return [
            str(self.m),
            fmt12(self.Q),
            str(self.count_all),
            "" if self.count_sq is None else str(self.count_sq),
            fmt12(self.theory_all),
            fmt12(self.theory_sq_lower),
            fmt12(self.theory_sq_upper),
            fmt12(self.ratio_all),
            fmt12(self.ratio_sq),
            fmt12(self.wall_seconds),
            str(self.shard_count),
        ]

    def to_dict(self) -> dict:
        out = {col: getattr(self, col) for col in CSV_COLUMNS if col not in ("ratio_all", "ratio_sq")}
        out["ratio_all"] = self.ratio_all
        out["ratio_sq"] = self.ratio_sq
        return out


def rows_to_csv(rows: Sequence[CensusRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(row.to_csv_values()))
    return "\n".join(lines) + "\n"


def rows_from_csv(text: str) -> list[CensusRow]:
    """Parse a report back; ratios are derived fields and get recomputed."""
    lines = [ln for ln in text.strip().splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    if header != CSV_COLUMNS:
        raise ValueError("unexpected census CSV header")
    rows = []
    for ln in lines[1:]:
        vals = ln.split(",")
        named = dict(zip(CSV_COLUMNS, vals))
        rows.append(
            CensusRow(
                m=int(named["m"]),
                Q=float(named["Q"]),
                count_all=int(named["count_all"]),
                count_sq=int(named["count_sq"]) if named["count_sq"] else None,
                theory_all=float(named["theory_all"]),
                theory_sq_lower=float(named["theory_sq_lower"]) if named["theory_sq_lower"] else None,
                theory_sq_upper=float(named["theory_sq_upper"]) if named["theory_sq_upper"] else None,
                wall_seconds=float(named["wall_seconds"]),
                shard_count=int(named["shard_count"]),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Checkpointing


class CheckpointStore:
    """Per-shard results under a work directory: manifest of completed ids plus one file per shard."""

    def __init__(self, root: Union[str, Path], fingerprint: dict):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.fingerprint = fingerprint
        self.manifest_path = self.root / "manifest.json"
        self.completed: set[int] = set()
        if self.manifest_path.exists():
            stored = json.loads(self.manifest_path.read_text())
            if stored.get("fingerprint") != fingerprint:
                raise ValueError(
                    f"work directory {self.root} holds a different run "
                    f"({stored.get('fingerprint')}); use a fresh directory"
                )
            self.completed = set(stored.get("completed", []))
        else:
            self._write_manifest()

    def _write_manifest(self) -> None:
        payload = {"fingerprint": self.fingerprint, "completed": sorted(self.completed)}
        tmp = self.manifest_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload))
        tmp.replace(self.manifest_path)

    def _shard_path(self, index: int) -> Path:
        return self.root / f"shard_{index:06d}.json"

    def get(self, index: int) -> Optional[list]:
        if index not in self.completed:
            return None
        raw = json.loads(self._shard_path(index).read_text())
        return [_untuple(row) for row in raw]

    def put(self, index: int, rows: list) -> None:
        tmp = self._shard_path(index).with_suffix(".tmp")
        tmp.write_text(json.dumps(rows))
        tmp.replace(self._shard_path(index))
        self.completed.add(index)
        self._write_manifest()


def _untuple(x):
    if isinstance(x, list):
        return tuple(_untuple(v) for v in x)
    return x


# ---------------------------------------------------------------------------
# Census runs


def run_all_census(
    m: int,
    Q: Fraction,
    config: RunConfig,
    workdir: Optional[Path] = None,
) -> list[SalemRecord]:
    descriptors = salem_shard_descriptors(m, Q, config.budget)
    store = None
    if workdir is not None:
        fingerprint = {"kind": "salem", "m": m, "Qn": Q.numerator, "Qd": Q.denominator, "shards": len(descriptors)}
        store = CheckpointStore(Path(workdir) / f"all_m{m}", fingerprint)
    rows = run_sharded(
        run_salem_shard,
        descriptors,
        config.effective_shards(),
        skip=store.get if store else None,
        on_done=store.put if store else None,
    )
    records = [_record_from_certified_poly(PalindromicPoly(IntPoly(c)), config.precision_bits) for c in rows]
    records.sort(key=SalemRecord.sort_key)
    return records


def run_sq_census(
    m: int,
    Q: Fraction,
    config: RunConfig,
    workdir: Optional[Path] = None,
) -> list[tuple[SalemRecord, list[SqrtDecomposition]]]:
    descriptors = sq_shard_descriptors(m, Q, config.budget)
    store = None
    if workdir is not None:
        fingerprint = {"kind": "sq", "m": m, "Qn": Q.numerator, "Qd": Q.denominator, "shards": len(descriptors)}
        store = CheckpointStore(Path(workdir) / f"sq_m{m}", fingerprint)
    rows = run_sharded(
        run_sq_shard,
        descriptors,
        config.effective_shards(),
        skip=store.get if store else None,
        on_done=store.put if store else None,
    )
    return group_witness_rows(rows, config)


@dataclasses.dataclass
class CountResult:
    row: CensusRow
    records: list[SalemRecord]
    groups: Optional[list[tuple[SalemRecord, list[SqrtDecomposition]]]]

    def stream_lines(self) -> list[str]:
        if self.groups is not None:
            lines = []
            for record, witnesses in self.groups:
                lines.append(record_line(record))
                for w in witnesses:
                    lines.append(witness_line(w))
            return lines
        return [record_line(r) for r in self.records]


def run_count(
    m: int,
    Q: Union[int, float, str, Fraction],
    include_sq: bool,
    config: RunConfig = DEFAULT_CONFIG,
    workdir: Optional[Path] = None,
) -> CountResult:
    """One census point: exact counts plus the matching theory columns."""
    Qf = as_fraction(Q)
    start = time.perf_counter()
    records = run_all_census(m, Qf, config, workdir)
    groups = None
    count_sq = None
    if include_sq:
        groups = run_sq_census(m, Qf, config, workdir)
        count_sq = len(groups)
    wall = time.perf_counter() - start
    theory_all = float(predict_salem_count(m, Qf).value)
    sq_pred = predict_square_rootable_count(m, Qf)
    row = CensusRow(
        m=m,
        Q=float(Qf),
        count_all=len(records),
        count_sq=count_sq,
        theory_all=theory_all,
        theory_sq_lower=float(sq_pred.lower) if include_sq else None,
        theory_sq_upper=float(sq_pred.upper) if include_sq else None,
        wall_seconds=wall,
        shard_count=config.effective_shards(),
    )
    return CountResult(row=row, records=records, groups=groups)


@dataclasses.dataclass
class SweepResult:
    rows: list[CensusRow]
    fitted_slope: Optional[float]
    expected_exponent: float
    slope_deviation: Optional[float]
    errors: list[str]


def run_sweep(
    m: int,
    q_values: Sequence[Union[int, float, str, Fraction]],
    include_sq: bool,
    config: RunConfig = DEFAULT_CONFIG,
    workdir: Optional[Path] = None,
) -> SweepResult:
    """Counts over several Q plus a log-log slope fit of the growth exponent.

    For the square-rootable census at half-degrees 3 and 4 the fit removes
    the log(Q) factor first, so the expected exponent is m/2 in every
    square-rootable regime above degree 4.
    """
    rows: list[CensusRow] = []
    errors: list[str] = []
    for q in sorted(q_values, key=lambda v: float(as_fraction(v))):
        try:
            rows.append(run_count(m, q, include_sq, config, workdir).row)
        except Exception as exc:  # per-point failures leave the rest of the sweep alive
            errors.append(f"Q={q}: {exc}")
    expected = _expected_exponent(m, include_sq)
    slope = _fit_slope(rows, m, include_sq)
    deviation = None if slope is None else slope - expected
    return SweepResult(rows=rows, fitted_slope=slope, expected_exponent=expected, slope_deviation=deviation, errors=errors)


def _expected_exponent(m: int, include_sq: bool) -> float:
    if not include_sq:
        return float(m)
    if m == 1:
        return 1.0
    if m == 2:
        return 1.5
    return m / 2


def _fit_slope(rows: Sequence[CensusRow], m: int, include_sq: bool) -> Optional[float]:
    import numpy as np

    pts = []
    for row in rows:
        count = row.count_sq if include_sq else row.count_all
        if count is None or count <= 0:
            continue
        y = float(count)
        if include_sq and m in (3, 4):
            y /= math.log(row.Q)
        pts.append((math.log(row.Q), math.log(y)))
    if len(pts) < 2:
        return None
    xs, ys = zip(*pts)
    return float(np.polyfit(xs, ys, 1)[0])
