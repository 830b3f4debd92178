"""SVG scatter plots of detected equilibria in strategy or payoff space."""
from __future__ import annotations

import itertools

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .game import UnsupportedGameError  # noqa: E402

MARKERS = {"oracle": dict(marker="x", color="tab:red", s=40),
           "evolved": dict(marker="o", facecolors="none", edgecolors="tab:blue", s=28)}


def build_figure(report, space: str) -> Figure:
    """One panel for two players, three pairwise projections for three."""
    n = report.game.n
    if n not in (2, 3):
        raise UnsupportedGameError(
            f"plots cover 2 or 3 players, got {n}; read report.csv for larger games")
    if space not in ("strategy", "payoff"):
        raise ValueError(f"space must be 'strategy' or 'payoff', got {space!r}")
    sym = "c" if space == "strategy" else "u"
    pairs = list(itertools.combinations(range(n), 2))
    fig, axes = plt.subplots(1, len(pairs), figsize=(4.2 * len(pairs), 4), squeeze=False)
    for ax, (i, j) in zip(axes[0], pairs):
        for source, style in MARKERS.items():
            rows = [r for r in report.rows if r.source == source]
            if not rows:
                continue
            vals = [r.profile if space == "strategy" else r.payoffs for r in rows]
            ax.scatter([v[i] for v in vals], [v[j] for v in vals], label=source, **style)
        ax.set_xlabel(f"${sym}_{i + 1}$")
        ax.set_ylabel(f"${sym}_{j + 1}$")
        ax.grid(alpha=0.3)
    scen = report.scenario
    g = scen["game"]
    fig.suptitle(f"{scen.get('name', '')}: {scen['rationality']} "
                 f"({g['kind']}, W={g['w']:g}, K={g['k']:g})")
    if any(ax.get_legend_handles_labels()[0] for ax in axes[0]):
        axes[0][0].legend(loc="best")
    fig.tight_layout()
    return fig


def emit_plot(report, space: str, out_path) -> None:
    fig = build_figure(report, space)
    # fixed hash salt and no date keep the SVG byte-identical across runs
    with matplotlib.rc_context({"svg.hashsalt": "spectrum-eq", "svg.fonttype": "path"}):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
