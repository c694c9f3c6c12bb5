"""The nine figures, each split into a pure data-prep step and a matplotlib
rendering step.

Prep functions take parsed stats rows and return plain dictionaries of
series; tests assert on those.  No statistic is computed here beyond axis
transforms of the stats columns; the one exception is the straight-line
overlay of the symmetry-decay figure, which is part of the figure's
definition rather than a reusable statistic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "gemsurf-plots"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .statsfile import read_stats  # noqa: E402

FIGURE_IDS = (
    "disconnected",
    "stability",
    "genus_bubble",
    "runtime",
    "diff_powers",
    "mean_estimate",
    "std_dev",
    "std_hypotheses",
    "symmetry_decay",
)


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    input: str
    output: str
    fit_input: str | None = None
    asymptote: float = 1.5
    decay_fit_max_n: int = 23
    bubble_scale: float = 900.0


class FigureError(ValueError):
    pass


def prep_disconnected(rows, spec):
    return {
        "n": [r["n"] for r in rows],
        "proportion": [r["disconnected_proportion"] for r in rows],
    }


def prep_stability(rows, spec):
    return {
        "n": [r["n"] for r in rows],
        "total_weight": [r["total_weight_float"] for r in rows],
        "reference": [1.0 / (12.0 * r["n"]) for r in rows],
    }


def prep_genus_bubble(rows, spec):
    points = []
    for r in rows:
        total = r["total_weight"]
        if total == 0:
            raise FigureError(f"row n={r['n']} has zero total weight")
        for genus, mass in sorted(r["genus_histogram"].items()):
            points.append((r["n"], genus, float(mass / total)))
    if not points:
        raise FigureError("no genus histogram data in input")
    return {"points": points}


def prep_runtime(rows, spec):
    missing = [r["n"] for r in rows if r["wall_time_seconds"] is None]
    if missing:
        raise FigureError(
            "wall_time_seconds is empty for n = "
            + ", ".join(map(str, missing))
            + "; regenerate the stats CSV with runtime sidecars"
        )
    return {
        "n": [r["n"] for r in rows],
        "seconds": [r["wall_time_seconds"] for r in rows],
    }


def prep_diff_powers(rows, spec):
    ns = [r["n"] for r in rows]
    panels = {}
    for exponent in range(1, 7):
        panels[exponent] = [
            ((r["n"] - 1) / 2.0 - r["mean_genus"]) ** exponent for r in rows
        ]
    return {"n": ns, "panels": panels}


def _load_fit(spec):
    if not spec.fit_input:
        raise FigureError("mean_estimate needs --fit with a fit JSON file")
    with open(spec.fit_input) as fh:
        fit = json.load(fh)
    for key in ("slope", "intercept", "exponent"):
        if key not in fit:
            raise FigureError(f"fit JSON is missing {key!r}")
    return fit


def prep_mean_estimate(rows, spec):
    fit = _load_fit(spec)
    ns = [r["n"] for r in rows]
    estimate = []
    for n in ns:
        level = fit["slope"] * n + fit["intercept"]
        if level < 0:
            estimate.append(math.nan)
        else:
            estimate.append((n - 1) / 2.0 - level ** (1.0 / fit["exponent"]))
    return {
        "n": ns,
        "mean_genus": [r["mean_genus"] for r in rows],
        "estimate": estimate,
    }


def prep_std_dev(rows, spec):
    return {
        "n": [r["n"] for r in rows],
        "absolute": [r["std_genus"] for r in rows],
        "normalised": [r["std_genus_normalised"] for r in rows],
    }


def prep_std_hypotheses(rows, spec):
    ns = [r["n"] for r in rows]
    stds = [r["std_genus"] for r in rows]
    below = [(n, s) for n, s in zip(ns, stds) if s < spec.asymptote]
    return {
        "n": ns,
        "exp": [math.exp(s) for s in stds],
        "exp_exp": [math.exp(math.exp(s)) for s in stds],
        "asymptote_n": [n for n, _ in below],
        "log_gap": [math.log(spec.asymptote - s) for _, s in below],
        "asymptote": spec.asymptote,
    }


def prep_symmetry_decay(rows, spec):
    positive = [
        (r["n"], r["mean_nontrivial_symmetries"])
        for r in rows
        if r["mean_nontrivial_symmetries"] > 0
    ]
    if not positive:
        raise FigureError("no rows with a positive mean symmetry count")
    ns = [n for n, _ in positive]
    logs = [math.log(v) for _, v in positive]
    fit_points = [(n, y) for (n, _), y in zip(positive, logs)
                  if n <= spec.decay_fit_max_n]
    if len(fit_points) < 2:
        fit_points = list(zip(ns, logs))
    slope, intercept = np.polyfit(
        [n for n, _ in fit_points], [y for _, y in fit_points], 1
    )
    return {
        "n": ns,
        "log_mean": logs,
        "fit_slope": float(slope),
        "fit_intercept": float(intercept),
        "fit_line": [slope * n + intercept for n in ns],
    }


_PREP = {
    "disconnected": prep_disconnected,
    "stability": prep_stability,
    "genus_bubble": prep_genus_bubble,
    "runtime": prep_runtime,
    "diff_powers": prep_diff_powers,
    "mean_estimate": prep_mean_estimate,
    "std_dev": prep_std_dev,
    "std_hypotheses": prep_std_hypotheses,
    "symmetry_decay": prep_symmetry_decay,
}


def prepare(spec: FigureSpec):
    if spec.figure_id not in _PREP:
        raise FigureError(
            f"unknown figure {spec.figure_id!r}; choose from {', '.join(FIGURE_IDS)}"
        )
    rows = read_stats(spec.input)
    return _PREP[spec.figure_id](rows, spec)


def _save(fig, spec):
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    metadata = {"Date": None} if out.suffix == ".svg" else None
    fig.savefig(out, metadata=metadata)
    plt.close(fig)


def render(spec: FigureSpec) -> Path:
    """Prepare and draw one figure; returns the output path."""
    data = prepare(spec)
    fig_id = spec.figure_id

    if fig_id == "disconnected":
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(data["n"], data["proportion"], marker="o", ms=3, lw=1)
        ax.set_xlabel("n")
        ax.set_ylabel("proportion discarded")
        ax.set_title("Disconnected draws")
    elif fig_id == "stability":
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(data["n"], data["total_weight"], marker="o", ms=3, lw=1,
                label="total sample weight")
        ax.plot(data["n"], data["reference"], lw=1, ls="--",
                label="single max-genus gem (1/12n)")
        ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.legend()
        ax.set_title("Weight mass vs a single heavy sample")
    elif fig_id == "genus_bubble":
        fig, ax = plt.subplots(figsize=(7, 4.5))
        xs = [p[0] for p in data["points"]]
        ys = [p[1] for p in data["points"]]
        areas = [spec.bubble_scale * p[2] for p in data["points"]]
        ax.scatter(xs, ys, s=areas, alpha=0.6, edgecolors="none")
        ax.set_xlabel("n")
        ax.set_ylabel("genus")
        ax.set_title("Genus distribution (area = probability mass)")
    elif fig_id == "runtime":
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(data["n"], data["seconds"], marker="o", ms=3, lw=1)
        ax.set_xlabel("n")
        ax.set_ylabel("wall time (s)")
        ax.set_title("Sampling time")
    elif fig_id == "diff_powers":
        fig, axes = plt.subplots(2, 3, figsize=(10, 6), sharex=True)
        for exponent, ax in zip(range(1, 7), axes.flat):
            ax.plot(data["n"], data["panels"][exponent], marker="o", ms=2, lw=1)
            ax.set_title(f"power {exponent}")
        for ax in axes[-1]:
            ax.set_xlabel("n")
        fig.suptitle("Max genus minus mean genus, raised to powers 1..6")
    elif fig_id == "mean_estimate":
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(data["n"], data["mean_genus"], marker="o", ms=3, lw=0,
                label="empirical mean genus")
        ax.plot(data["n"], data["estimate"], lw=1, label="fitted estimate")
        ax.set_xlabel("n")
        ax.set_ylabel("mean genus")
        ax.legend()
    elif fig_id == "std_dev":
        fig, axes = plt.subplots(1, 2, figsize=(9, 4))
        axes[0].plot(data["n"], data["absolute"], marker="o", ms=3, lw=1)
        axes[0].set_title("standard deviation")
        axes[1].plot(data["n"], data["normalised"], marker="o", ms=3, lw=1)
        axes[1].set_title("normalised to max genus")
        for ax in axes:
            ax.set_xlabel("n")
    elif fig_id == "std_hypotheses":
        fig, axes = plt.subplots(1, 3, figsize=(12, 4))
        axes[0].plot(data["n"], data["exp"], marker="o", ms=2, lw=1)
        axes[0].set_title("exp(std): logarithmic growth?")
        axes[1].plot(data["n"], data["exp_exp"], marker="o", ms=2, lw=1)
        axes[1].set_title("exp(exp(std)): doubly logarithmic?")
        axes[2].plot(data["asymptote_n"], data["log_gap"], marker="o", ms=2, lw=1)
        axes[2].set_title(f"log({data['asymptote']} - std): finite limit?")
        for ax in axes:
            ax.set_xlabel("n")
    elif fig_id == "symmetry_decay":
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(data["n"], data["log_mean"], marker="o", ms=3, lw=0,
                label="log mean non-trivial symmetries")
        ax.plot(data["n"], data["fit_line"], lw=1,
                label=f"fit slope {data['fit_slope']:.3f}")
        ax.set_xlabel("n")
        ax.legend()
        ax.set_title("Symmetry decay")
    else:  # pragma: no cover - prepare() already rejected it
        raise FigureError(f"unknown figure {fig_id!r}")

    fig.tight_layout()
    _save(fig, spec)
    return Path(spec.output)
