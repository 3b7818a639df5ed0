"""Matplotlib rendering of Morse persistence diagrams."""

from __future__ import annotations

from pathlib import Path

from .persistence import PersistenceDiagram


def plot_diagram(d: PersistenceDiagram, path: str | Path, title: str | None = None) -> Path:
    """Scatter of (death, birth) with the diagonal; essential points hollow."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    values = [x for p in d.points for x in (p.birth, p.death)] or [0.0, 1.0]
    lo, hi = min(values), max(values)
    pad = 0.05 * (hi - lo or 1.0)
    ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], color="0.6", lw=0.8)

    colors = {(1, 0): "C0", (0, 1): "C1", (0, 0): "0.4"}
    for p in d.points:
        c = colors.get(tuple(p.index_at_birth), "C2")
        face = "none" if p.essential else c
        ax.scatter(p.death, p.birth, s=36, facecolors=face, edgecolors=c, zorder=3)

    handles = [ax.scatter([], [], color="C0", s=36, label=r"$\beta_0>0$"),
               ax.scatter([], [], color="C1", s=36, label=r"$\beta_1>0$"),
               ax.scatter([], [], facecolors="none", edgecolors="k", s=36, label="essential")]
    ax.legend(handles=handles, loc="lower right", fontsize=8, frameon=False)
    ax.set_xlim(lo - pad, hi + pad)
    ax.set_ylim(lo - pad, hi + pad)
    ax.set_xlabel(r"death $\lambda_d$")
    ax.set_ylabel(r"birth $\lambda_b$")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
