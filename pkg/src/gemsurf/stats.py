"""Weighted statistics over sample batches.

Weight sums are accumulated as exact rationals (they span a ~n! dynamic
range, so floating point would silently drop mass); the final moments are
ordinary floats since genus values are small integers.  Aggregation is a
commutative fold: shuffling the record stream changes nothing, bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .gem import max_genus
from .perm import ensure_int_digits
from .sampler import WeightedSampleRecord


@dataclass(frozen=True)
class WeightedStats:
    n: int
    num_records: int
    total_weight: Fraction
    genus_histogram: dict[int, Fraction]
    mean_genus: float
    std_genus: float
    std_genus_normalised: float
    mean_nontrivial_symmetries: float
    mean_nontrivial_symmetries_unweighted: float
    disconnected_proportion: float
    max_single_weight_share: float


def aggregate(records: Iterable[WeightedSampleRecord]) -> WeightedStats:
    """Weighted histogram and moments of one batch (all records share one n)."""
    n = None
    count = 0
    total = Fraction(0)
    weighted_genus = Fraction(0)
    weighted_genus_sq = Fraction(0)
    weighted_nontrivial = Fraction(0)
    nontrivial_sum = 0
    rejected = 0
    max_weight = Fraction(0)
    histogram: dict[int, Fraction] = {}
    for record in records:
        if n is None:
            n = record.n
        elif record.n != n:
            raise ValueError(f"mixed n in record stream: {n} and {record.n}")
        w = record.weight.value
        g = record.genus
        count += 1
        total += w
        weighted_genus += w * g
        weighted_genus_sq += w * g * g
        sym = record.sym_colour_preserving * record.sym_colour_swap
        weighted_nontrivial += w * (sym - 1)
        nontrivial_sum += sym - 1
        rejected += record.rejected_attempts
        histogram[g] = histogram.get(g, Fraction(0)) + w
        if w > max_weight:
            max_weight = w
    if count == 0:
        raise ValueError("cannot aggregate an empty record stream")
    mean = float(weighted_genus / total)
    variance = float(weighted_genus_sq / total) - mean * mean
    std = math.sqrt(max(variance, 0.0))
    mg = max_genus(n)
    return WeightedStats(
        n=n,
        num_records=count,
        total_weight=total,
        genus_histogram=dict(sorted(histogram.items())),
        mean_genus=mean,
        std_genus=std,
        std_genus_normalised=std / mg if mg > 0 else 0.0,
        mean_nontrivial_symmetries=float(weighted_nontrivial / total),
        mean_nontrivial_symmetries_unweighted=nontrivial_sum / count,
        disconnected_proportion=rejected / (rejected + count),
        max_single_weight_share=float(max_weight / total),
    )


@dataclass(frozen=True)
class MeanGenusFit:
    slope: float
    intercept: float
    exponent: float
    residuals: tuple[float, ...]

    @property
    def residual_norm(self) -> float:
        return math.sqrt(sum(r * r for r in self.residuals))


def fit_mean_genus(
    series: Sequence[tuple[float, float]], exponent: float = 4.0
) -> MeanGenusFit:
    """Least squares of ``((n-1)/2 - mean_genus)**exponent`` against ``n``.

    The reference is the exact maximum genus ``(n-1)/2``, not its floor.
    Needs at least two points with distinct n.
    """
    if len(series) < 2:
        raise ValueError("need at least two (n, mean_genus) points")
    xs = [float(n) for n, _ in series]
    ys = [((n - 1) / 2.0 - mean) ** exponent for n, mean in series]
    if len(set(xs)) < 2:
        raise ValueError("degenerate series: all n equal")
    slope, intercept = statistics.linear_regression(xs, ys)
    residuals = tuple(y - (slope * x + intercept) for x, y in zip(xs, ys))
    return MeanGenusFit(
        slope=slope, intercept=intercept, exponent=exponent, residuals=residuals
    )


def predicted_mean_genus(n: float, fit: MeanGenusFit) -> float:
    """Invert a fit back to a mean-genus estimate at ``n``."""
    level = fit.slope * n + fit.intercept
    if level < 0:
        raise ValueError(f"fit predicts a negative power level at n={n}")
    return (n - 1) / 2.0 - level ** (1.0 / fit.exponent)


@dataclass(frozen=True)
class StabilityReport:
    n: int
    num_records: int
    max_single_weight_share: float
    max_genus_weight_bound: Fraction
    exact_max_genus_weight: Fraction | None
    distorted: bool


def stability_report(
    records: Iterable[WeightedSampleRecord],
    *,
    distortion_threshold: float = 0.4,
    exact_max_genus_weight: Fraction | None = None,
) -> StabilityReport:
    """Largest single-sample weight share, with the ``1/(12n)`` weight of a
    symmetry-free maximal-genus gem as reference.

    For small n the caller can pass the oracle-exact maximal-genus class
    weight (it is 1 for n=3, where the torus is highly symmetric).
    """
    n = None
    count = 0
    total = Fraction(0)
    max_weight = Fraction(0)
    for record in records:
        if n is None:
            n = record.n
        elif record.n != n:
            raise ValueError(f"mixed n in record stream: {n} and {record.n}")
        count += 1
        total += record.weight.value
        if record.weight.value > max_weight:
            max_weight = record.weight.value
    if count == 0:
        raise ValueError("cannot analyse an empty record stream")
    share = float(max_weight / total)
    return StabilityReport(
        n=n,
        num_records=count,
        max_single_weight_share=share,
        max_genus_weight_bound=Fraction(1, 12 * n),
        exact_max_genus_weight=exact_max_genus_weight,
        distorted=share >= distortion_threshold,
    )


STATS_HEADER = (
    "n,num_records,total_weight,total_weight_float,mean_genus,std_genus,"
    "std_genus_normalised,mean_nontrivial_symmetries,"
    "mean_nontrivial_symmetries_unweighted,disconnected_proportion,"
    "max_single_weight_share,genus_histogram,wall_time_seconds"
)


def _format_fraction(f: Fraction) -> str:
    # exact sums over a batch can have thousands-of-digit terms
    ensure_int_digits((f.numerator.bit_length() + f.denominator.bit_length()) // 3)
    return f"{f.numerator}/{f.denominator}"


def _format_histogram(hist: dict[int, Fraction]) -> str:
    return ";".join(f"{g}={_format_fraction(m)}" for g, m in sorted(hist.items()))


def write_stats_csv(
    rows: Iterable[WeightedStats],
    path,
    *,
    wall_times: dict[int, float] | None = None,
) -> int:
    """One CSV row per n; this file is the contract consumed by the plots
    package.  Rationals are written as ``num/den`` strings alongside float
    renditions; the histogram cell is ``genus=num/den`` pairs joined by ';'.
    ``wall_times`` (n -> seconds) fills an optional column for the runtime
    figure and is left empty otherwise.  ``path`` may be an open file."""
    if hasattr(path, "write"):
        return _write_stats(path, rows, wall_times)
    with open(Path(path), "w", newline="") as fh:
        return _write_stats(fh, rows, wall_times)


def _write_stats(fh, rows, wall_times) -> int:
    writer = csv.writer(fh)
    writer.writerow(STATS_HEADER.split(","))
    count = 0
    for s in rows:
        wall = (wall_times or {}).get(s.n)
        writer.writerow(
            [
                s.n,
                s.num_records,
                _format_fraction(s.total_weight),
                repr(float(s.total_weight)),
                repr(s.mean_genus),
                repr(s.std_genus),
                repr(s.std_genus_normalised),
                repr(s.mean_nontrivial_symmetries),
                repr(s.mean_nontrivial_symmetries_unweighted),
                repr(s.disconnected_proportion),
                repr(s.max_single_weight_share),
                _format_histogram(s.genus_histogram),
                "" if wall is None else repr(wall),
            ]
        )
        count += 1
    return count


def read_stats_csv(path: str | Path) -> list[dict]:
    """Rows of a stats CSV with numeric fields parsed (rationals exact)."""
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            hist = {}
            if row["genus_histogram"]:
                for chunk in row["genus_histogram"].split(";"):
                    g, _, frac = chunk.partition("=")
                    num, _, den = frac.partition("/")
                    ensure_int_digits(max(len(num), len(den)))
                    hist[int(g)] = Fraction(int(num), int(den))
            num, _, den = row["total_weight"].partition("/")
            ensure_int_digits(max(len(num), len(den)))
            out.append(
                {
                    "n": int(row["n"]),
                    "num_records": int(row["num_records"]),
                    "total_weight": Fraction(int(num), int(den)),
                    "total_weight_float": float(row["total_weight_float"]),
                    "mean_genus": float(row["mean_genus"]),
                    "std_genus": float(row["std_genus"]),
                    "std_genus_normalised": float(row["std_genus_normalised"]),
                    "mean_nontrivial_symmetries": float(
                        row["mean_nontrivial_symmetries"]
                    ),
                    "mean_nontrivial_symmetries_unweighted": float(
                        row["mean_nontrivial_symmetries_unweighted"]
                    ),
                    "disconnected_proportion": float(row["disconnected_proportion"]),
                    "max_single_weight_share": float(row["max_single_weight_share"]),
                    "genus_histogram": hist,
                    "wall_time_seconds": (
                        float(row["wall_time_seconds"])
                        if row.get("wall_time_seconds")
                        else None
                    ),
                }
            )
    return out


def write_fit_json(fit: MeanGenusFit, path: str | Path) -> None:
    with open(path, "w") as fh:
        fh.write(fit_to_json(fit))


def fit_to_json(fit: MeanGenusFit) -> str:
    return json.dumps(
        {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "exponent": fit.exponent,
            "residual_norm": fit.residual_norm,
        },
        indent=2,
    )
