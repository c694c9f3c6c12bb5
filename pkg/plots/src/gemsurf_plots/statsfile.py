"""Reader for the sampler's stats CSV contract.

One row per n.  Rationals arrive as ``num/den`` strings, the genus
histogram as ``genus=num/den`` pairs joined by semicolons, and
``wall_time_seconds`` may be empty.  This module is the only place the
file format is known; figures work on the parsed rows.
"""

from __future__ import annotations

import csv
import sys
from fractions import Fraction
from pathlib import Path

EXPECTED_COLUMNS = [
    "n",
    "num_records",
    "total_weight",
    "total_weight_float",
    "mean_genus",
    "std_genus",
    "std_genus_normalised",
    "mean_nontrivial_symmetries",
    "mean_nontrivial_symmetries_unweighted",
    "disconnected_proportion",
    "max_single_weight_share",
    "genus_histogram",
    "wall_time_seconds",
]


class SchemaError(ValueError):
    """The input file does not match the stats CSV contract."""


def _ensure_int_digits(digits: int) -> None:
    # exact rationals in the stats contract can run to thousands of digits,
    # beyond the interpreter's default int/str conversion guard
    if digits <= 4000 or not hasattr(sys, "get_int_max_str_digits"):
        return
    current = sys.get_int_max_str_digits()
    if current != 0 and current < digits + 100:
        sys.set_int_max_str_digits(digits + 100)


def _parse_fraction(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise SchemaError(f"expected 'num/den' rational, got {text!r}")
    _ensure_int_digits(max(len(num), len(den)))
    return Fraction(int(num), int(den))


def _parse_histogram(text: str) -> dict[int, Fraction]:
    hist: dict[int, Fraction] = {}
    if not text:
        return hist
    for chunk in text.split(";"):
        genus, sep, mass = chunk.partition("=")
        if not sep:
            raise SchemaError(f"bad histogram entry {chunk!r}")
        hist[int(genus)] = _parse_fraction(mass)
    return hist


def read_stats(path: str | Path) -> list[dict]:
    """Parse a stats CSV; raises SchemaError on missing columns or no rows."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path} is empty")
        missing = [c for c in EXPECTED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(
                f"{path} is missing required columns: {', '.join(missing)}"
            )
        rows = []
        for raw in reader:
            rows.append(
                {
                    "n": int(raw["n"]),
                    "num_records": int(raw["num_records"]),
                    "total_weight": _parse_fraction(raw["total_weight"]),
                    "total_weight_float": float(raw["total_weight_float"]),
                    "mean_genus": float(raw["mean_genus"]),
                    "std_genus": float(raw["std_genus"]),
                    "std_genus_normalised": float(raw["std_genus_normalised"]),
                    "mean_nontrivial_symmetries": float(
                        raw["mean_nontrivial_symmetries"]
                    ),
                    "mean_nontrivial_symmetries_unweighted": float(
                        raw["mean_nontrivial_symmetries_unweighted"]
                    ),
                    "disconnected_proportion": float(raw["disconnected_proportion"]),
                    "max_single_weight_share": float(raw["max_single_weight_share"]),
                    "genus_histogram": _parse_histogram(raw["genus_histogram"]),
                    "wall_time_seconds": (
                        float(raw["wall_time_seconds"])
                        if raw.get("wall_time_seconds")
                        else None
                    ),
                }
            )
    if not rows:
        raise SchemaError(f"{path} contains a header but no data rows")
    rows.sort(key=lambda r: r["n"])
    return rows
