"""Static SVG figure rendering for the report commands.

Figures are written next to the delimited output so a study run leaves a
self-contained directory: data first, pictures alongside.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_workspace_figure(points: np.ndarray, path: str) -> None:
    """XZ silhouette of sampled tip positions (columns phi,theta,x,y,z)."""
    points = np.asarray(points)
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.scatter(points[:, 2], points[:, 4], s=6, c=points[:, 0], cmap="viridis")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("z [m]")
    ax.set_title("workspace silhouette (colour = bend angle)")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def save_grip_study_figure(rows, path: str) -> None:
    """Failure force vs stiffness, one panel per object, one line per bend."""
    by_object: dict[str, list] = {}
    for r in rows:
        by_object.setdefault(r.object_name, []).append(r)
    names = list(by_object)
    fig, axes = plt.subplots(
        1, max(len(names), 1), figsize=(3.4 * max(len(names), 1), 3.4), sharey=True
    )
    if len(names) <= 1:
        axes = [axes]
    for ax, name in zip(axes, names):
        group = by_object[name]
        phis = sorted({r.phi for r in group})
        for phi in phis:
            pts = [(r.stiffness, r.failure_force) for r in group
                   if r.phi == phi and r.failure_force is not None]
            if not pts:
                continue
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker="o", label=f"phi={phi:g}")
        ax.set_title(name)
        ax.set_xlabel("stiffness [Nm/rad]")
        ax.grid(True, alpha=0.3)
    axes[0].set_ylabel("failure force [N]")
    axes[-1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
