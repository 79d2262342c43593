#!/usr/bin/env python3
"""
SVG export provider: chord diagram of a decorated permutation

Points 1..n sit clockwise on a circle starting at the top. Each arc i -> w(i)
is a straight chord with an arrowhead at w(i); fixed points get a small loop
labelled cw or ccw.
"""

import io
import logging
import math
from typing import Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from libs.decorated_lib import DecoratedPermutation  # noqa: E402

logger = logging.getLogger(__name__)

RADIUS = 1.0
LOOP_RADIUS = 0.09


def point(i: int, n: int, radius: float = RADIUS) -> Tuple[float, float]:
    angle = math.pi / 2 - 2 * math.pi * (i - 1) / n
    return radius * math.cos(angle), radius * math.sin(angle)


class Provider:
    """Chord diagrams rendered with matplotlib"""

    def __init__(self):
        plt.rcParams["svg.hashsalt"] = "positroid-chord-diagram"
        plt.rcParams["svg.fonttype"] = "none"

    def render(self, dp: DecoratedPermutation, **options) -> str:
        n = dp.n
        fig, ax = plt.subplots(figsize=(4, 4))
        try:
            ax.add_patch(Circle((0, 0), RADIUS, fill=False, color="0.8", linewidth=0.8))
            for arc in dp.arcs():
                x, y = point(arc.tail, n)
                if arc.is_loop:
                    cx, cy = point(arc.tail, n, RADIUS + LOOP_RADIUS)
                    ax.add_patch(Circle((cx, cy), LOOP_RADIUS, fill=False, linewidth=1.0))
                    lx, ly = point(arc.tail, n, RADIUS + 3.2 * LOOP_RADIUS)
                    ax.text(lx, ly, arc.loop_orientation, ha="center", va="center", fontsize=7)
                    continue
                hx, hy = point(arc.head, n)
                ax.annotate(
                    "",
                    xy=(hx, hy),
                    xytext=(x, y),
                    arrowprops={"arrowstyle": "-|>", "linewidth": 1.0, "shrinkA": 2, "shrinkB": 4},
                )
            for i in range(1, n + 1):
                x, y = point(i, n)
                ax.plot([x], [y], "o", color="black", markersize=3)
                tx, ty = point(i, n, RADIUS + 0.5 if i in dp.perm.fixed_points() else RADIUS + 0.15)
                ax.text(tx, ty, str(i), ha="center", va="center", fontsize=9)
            ax.set_xlim(-1.7, 1.7)
            ax.set_ylim(-1.7, 1.7)
            ax.set_aspect("equal")
            ax.axis("off")

            buffer = io.StringIO()
            fig.savefig(buffer, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
        return buffer.getvalue()
