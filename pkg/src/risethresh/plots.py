"""Figure rendering for the report paths; headless, deterministic bytes.

Figures are written next to their data files: the sweep curve beside the
CSV, the margin chart beside the verify JSON. PNG metadata is stripped
so identical inputs produce identical files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .curves import RATIO

_SAVE_KWARGS = {"dpi": 130, "metadata": {"Software": None}}


def render_sweep(rows, path):
    """Ratio-versus-n curve for duel sweeps, one line per algorithm."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    by_alg = {}
    for row in rows:
        by_alg.setdefault(row["alg"], []).append((row["n"], row["ratio"]))
    for alg in sorted(by_alg):
        pts = sorted(by_alg[alg])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                marker="o", label=alg)
    ax.axhline(RATIO, color="crimson", linestyle="--", linewidth=1,
               label="guarantee %.6f" % RATIO)
    ax.set_xscale("log")
    ax.set_xlabel("bins n")
    ax.set_ylabel("gain / optimum")
    ax.set_title("measured ratio against the phased adversary")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def render_margins(reports, path):
    """Worst margin per verified property; everything must sit above -tol."""
    names = [r.property_id for r in reports]
    margins = [r.min_margin for r in reports]
    colors = ["tab:blue" if r.passed else "tab:red" for r in reports]
    fig, ax = plt.subplots(figsize=(7.0, 0.32 * len(names) + 1.6))
    ypos = range(len(names))
    # symlog keeps zero-margin identities visible next to inequality slack
    ax.barh(ypos, margins, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("symlog", linthresh=1e-12)
    ax.axvline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("worst margin over the sweep grid")
    ax.set_title("numeric verification margins")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
