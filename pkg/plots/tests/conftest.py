"""Builders for synthetic stats CSV files in the documented format."""

from __future__ import annotations

import csv
from fractions import Fraction

from gemsurf_plots.statsfile import EXPECTED_COLUMNS


def write_stats_file(path, rows):
    """Write rows (dicts keyed like EXPECTED_COLUMNS, already as strings or
    numbers) into a stats CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXPECTED_COLUMNS)
        for row in rows:
            writer.writerow([row.get(col, "") for col in EXPECTED_COLUMNS])


def plain_row(n, mean_genus, std_genus, sym=0.0, disconnected=0.1,
              wall="", histogram="0=1/1", total=Fraction(1)):
    max_genus = (n - 1) // 2
    return {
        "n": n,
        "num_records": 1000,
        "total_weight": f"{total.numerator}/{total.denominator}",
        "total_weight_float": repr(float(total)),
        "mean_genus": repr(mean_genus),
        "std_genus": repr(std_genus),
        "std_genus_normalised": repr(std_genus / max_genus if max_genus else 0.0),
        "mean_nontrivial_symmetries": repr(sym),
        "mean_nontrivial_symmetries_unweighted": repr(sym),
        "disconnected_proportion": repr(disconnected),
        "max_single_weight_share": repr(0.01),
        "genus_histogram": histogram,
        "wall_time_seconds": wall,
    }


def synthetic_rows(count=10, with_wall=True):
    """Ten plausible rows spanning n = 5..50."""
    rows = []
    for i in range(count):
        n = 5 + 5 * i
        mean = (n - 1) / 2 - 1.5 * n**0.25
        std = 1.0 + 0.05 * n**0.5
        mode = max(int(mean), 0)
        histogram = f"{mode}=3/5;{mode + 1}=2/5"
        rows.append(
            plain_row(
                n,
                mean,
                std,
                sym=2.7 ** (-0.9 * n) + 1e-12,
                disconnected=0.5 / n,
                wall=repr(0.01 * n) if with_wall else "",
                histogram=histogram,
                total=Fraction(n, 3),
            )
        )
    return rows


def oracle_n3_row():
    """The exact n=3 census aggregated: three unit-mass classes with genera
    0, 0, 1; symmetry totals 12, 4, 36."""
    mean = 1 / 3
    std = (2 / 9) ** 0.5
    return plain_row(
        3,
        mean,
        std,
        sym=49 / 3,
        disconnected=1 / 3,
        histogram="0=2/1;1=1/1",
        total=Fraction(3),
    )
