"""Parameter sweeps over the ``(j0, xi')`` coefficient family, histograms and export."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .discrimination import TheoryReport, theory_report
from .montecarlo import CountsTable, EstimateReport, NoiseModel, estimate, percentage_errors, run_trials
from .qudit import DEFAULT_FLOOR, CoefficientProfile, _check_dim

DEFAULT_XI_PRIMES = tuple(k / 10 for k in range(1, 11))
DEFAULT_BINS = 20
# spans narrower than this are round-off, not spread
MIN_HIST_WIDTH = 1e-9

CSV_COLUMNS = (
    "d", "j0", "xi_prime", "xi",
    "p_perp_th", "p_me_inc_th", "p_ud_th", "p_cud_th", "r_th",
    "p_perp_est", "p_me_conc_est", "p_me_inc_est", "p_cud_est", "r_est",
    "dpp", "dpmc", "dpmi",
    "seed", "shots", "gamma",
)
_INT_COLUMNS = {"d", "j0", "seed", "shots"}


class SweepError(RuntimeError):
    """A grid point could not be evaluated."""


class EmptyResultError(ValueError):
    """No rows were left to summarize."""


@dataclass(frozen=True)
class SweepGrid:
    d: int
    j0_values: Optional[Tuple[int, ...]] = None
    xi_prime_values: Tuple[float, ...] = DEFAULT_XI_PRIMES
    floor: float = DEFAULT_FLOOR
    noise: NoiseModel = field(default_factory=NoiseModel)
    shots_per_input: int = 100_000
    seed: int = 0
    # infinite-statistics limit: expected counts instead of sampled ones
    expected_counts: bool = False

    def __post_init__(self):
        _check_dim(self.d)
        j0s = tuple(range(1, self.d)) if self.j0_values is None else tuple(int(j) for j in self.j0_values)
        object.__setattr__(self, "j0_values", j0s)
        object.__setattr__(self, "xi_prime_values", tuple(float(x) for x in self.xi_prime_values))
        if self.shots_per_input < 1:
            raise ValueError("shots_per_input must be at least 1")

    @property
    def size(self) -> int:
        return len(self.j0_values) * len(self.xi_prime_values)

    def points(self) -> List[Tuple[int, int, float]]:
        """``(j0, xi' index, xi')`` in grid order."""
        return [(j0, i, xp) for j0 in self.j0_values for i, xp in enumerate(self.xi_prime_values)]

    def metadata(self) -> dict:
        return dict(
            d=self.d,
            j0_values=list(self.j0_values),
            xi_prime_values=list(self.xi_prime_values),
            floor=self.floor,
            gamma=self.noise.gamma,
            shots_per_input=self.shots_per_input,
            seed=self.seed,
            expected_counts=self.expected_counts,
            xi_prime_grid_assumed=True,
        )


@dataclass(frozen=True)
class SweepRow:
    d: int
    j0: int
    xi_prime: float
    xi: float
    theory: TheoryReport
    estimate: EstimateReport
    errors: Dict[str, float]
    seed: int
    shots: int
    gamma: float

    def record(self) -> dict:
        """Flat export record with the CSV column names."""
        t, e, err = self.theory, self.estimate, self.errors
        return dict(
            d=self.d, j0=self.j0, xi_prime=self.xi_prime, xi=self.xi,
            p_perp_th=t.p_perp, p_me_inc_th=t.p_me_inconclusive, p_ud_th=t.p_ud,
            p_cud_th=t.p_cud, r_th=t.r_theory,
            p_perp_est=e.p_perp_est, p_me_conc_est=e.p_me_conclusive_est,
            p_me_inc_est=e.p_me_inconclusive_est, p_cud_est=e.p_cud_est, r_est=e.r_vs_theory_ud,
            dpp=err["p_perp"], dpmc=err["p_me_conclusive"], dpmi=err["p_me_inconclusive"],
            seed=self.seed, shots=self.shots, gamma=self.gamma,
        )


def _row_seed(seed: int, j0: int, xi_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(j0, xi_index))


def evaluate_point(grid: SweepGrid, j0: int, xi_index: int, xi_prime: float) -> SweepRow:
    try:
        profile = CoefficientProfile(grid.d, j0, xi_prime, grid.floor)
        c = profile.coefficients()
    except ValueError as exc:
        raise SweepError(f"grid point d={grid.d}, j0={j0}, xi'={xi_prime}: {exc}") from exc
    theory = theory_report(c)
    if grid.expected_counts:
        counts = CountsTable.expected(c, grid.noise, grid.shots_per_input)
    else:
        counts = run_trials(c, grid.noise, grid.shots_per_input, _row_seed(grid.seed, j0, xi_index))
    est = estimate(counts, theory)
    return SweepRow(
        d=grid.d, j0=j0, xi_prime=xi_prime, xi=profile.xi,
        theory=theory, estimate=est, errors=percentage_errors(est, theory),
        seed=grid.seed, shots=grid.shots_per_input, gamma=grid.noise.gamma,
    )


def run_sweep(grid: SweepGrid, workers: Optional[int] = None) -> List[SweepRow]:
    """Evaluate every grid point; rows come back in grid order.

    Each row draws from a stream keyed by ``(seed, j0, xi' index)``, so serial
    and threaded runs (``workers > 1``) give identical rows.
    """
    pts = grid.points()
    if workers is None or workers <= 1:
        return [evaluate_point(grid, *p) for p in pts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda p: evaluate_point(grid, *p), pts))


@dataclass(frozen=True, eq=False)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    min: float
    max: float

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _histogram(values: Sequence[float], lo: float, bins: int) -> Histogram:
    values = np.asarray(values, dtype=float)
    lo = min(lo, float(values.min()))
    hi = max(float(values.max()), lo + MIN_HIST_WIDTH)
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    return Histogram(edges, counts, float(values.min()), float(values.max()))


def r_histogram(rows: Sequence[SweepRow], bins: int = DEFAULT_BINS, source: str = "estimate") -> Histogram:
    """Distribution of the enhancement ratio over nonorthogonal sets (``xi != 0``).

    ``source="estimate"`` bins the simulated ratio against theoretical UD,
    ``source="theory"`` the ideal one.
    """
    if source not in ("estimate", "theory"):
        raise ValueError(f"source must be 'estimate' or 'theory', got {source!r}")
    kept = [r for r in rows if r.xi != 0]
    if not kept:
        raise EmptyResultError("no rows with xi != 0 to histogram")
    vals = [r.estimate.r_vs_theory_ud if source == "estimate" else r.theory.r_theory for r in kept]
    return _histogram(vals, 1.0, bins)


def error_histograms(rows: Sequence[SweepRow], bins: int = DEFAULT_BINS) -> Dict[str, Histogram]:
    if not rows:
        raise EmptyResultError("no rows to histogram")
    return {key: _histogram([r.errors[key] for r in rows], 0.0, bins)
            for key in ("p_perp", "p_me_conclusive", "p_me_inconclusive")}


def _fmt(name: str, value) -> str:
    if name in _INT_COLUMNS:
        return str(int(value))
    return format(float(value), ".17g")


def to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        rec = r.record()
        w.writerow([_fmt(k, rec[k]) for k in CSV_COLUMNS])
    return buf.getvalue()


def to_json(rows: Sequence[SweepRow], grid: Optional[SweepGrid] = None) -> str:
    doc = {"grid": grid.metadata() if grid is not None else None,
           "columns": list(CSV_COLUMNS),
           "rows": [r.record() for r in rows]}
    return json.dumps(doc, indent=2) + "\n"


def export(rows: Sequence[SweepRow], format: str, path, grid: Optional[SweepGrid] = None) -> Path:
    """Write rows as CSV or JSON (UTF-8, LF newlines)."""
    if format == "csv":
        text = to_csv(rows)
    elif format == "json":
        text = to_json(rows, grid)
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep export to {path}: {exc}") from exc
    return path


def load_json(path) -> Tuple[Optional[dict], List[dict]]:
    """Read a JSON export back as ``(grid metadata, row records)``."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return doc.get("grid"), doc["rows"]


def load_csv(path) -> List[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [{k: (int(v) if k in _INT_COLUMNS else float(v)) for k, v in rec.items()}
                for rec in csv.DictReader(fh)]


def summarize(rows: Sequence[SweepRow]) -> dict:
    """min/max/mean of R (estimated and theoretical) and of each percentage error."""
    def stats(vals):
        vals = np.asarray(vals, dtype=float)
        return {"min": float(vals.min()), "max": float(vals.max()), "mean": float(vals.mean())}

    kept = [r for r in rows if r.xi != 0]
    out = {"rows": len(rows), "nonorthogonal_rows": len(kept)}
    if kept:
        out["r_est"] = stats([r.estimate.r_vs_theory_ud for r in kept])
        out["r_th"] = stats([r.theory.r_theory for r in kept])
    if rows:
        for key, col in (("p_perp", "dpp"), ("p_me_conclusive", "dpmc"), ("p_me_inconclusive", "dpmi")):
            out[col] = stats([r.errors[key] for r in rows])
    return out
