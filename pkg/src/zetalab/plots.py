"""Figure rendering for the CLI report paths.

Renders residue trajectories (sweeps) and pole tables to image files next to
the delimited output.  Imports matplotlib lazily with the Agg backend so the
data paths stay usable on headless machines without a display.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_sweep_plot(rows: list[dict], param: str, path: str) -> str:
    """One line per (function, sigma) trajectory of residue vs parameter."""
    plt = _pyplot()
    series = defaultdict(list)
    for row in rows:
        key = (row["function"], row["sigma"])
        series[key].append((float(Fraction(row[param])), float(row["residue_float"])))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (function, sigma), pts in sorted(series.items()):
        pts.sort()
        ax.plot(
            [p[0] for p in pts],
            [p[1] for p in pts],
            marker="o",
            markersize=3,
            label=f"{function} at s={sigma}",
        )
    ax.set_xlabel(param)
    ax.set_ylabel("residue")
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    ax.legend(fontsize=8)
    ax.set_title(f"residue trajectories vs {param}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_pole_plot(rows: list[dict], path: str, title: str = "") -> str:
    """Stem chart of residues over the admissible grid, one color per function."""
    plt = _pyplot()
    series = defaultdict(list)
    for row in rows:
        val = float(row["residue_float"].strip("()").split(" ")[0]) if row[
            "residue_float"
        ].startswith("(") else float(row["residue_float"])
        series[row["function"]].append((float(Fraction(row["sigma"])), val))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    offsets = {name: i * 0.03 for i, name in enumerate(sorted(series))}
    for name, pts in sorted(series.items()):
        pts.sort()
        xs = [p[0] + offsets[name] for p in pts]
        ys = [p[1] for p in pts]
        markerline, stemlines, _ = ax.stem(xs, ys, label=name)
        plt.setp(markerline, markersize=4)
        plt.setp(stemlines, linewidth=1)
    ax.set_xlabel("s")
    ax.set_ylabel("residue")
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
