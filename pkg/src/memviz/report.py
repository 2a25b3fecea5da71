"""Static figure rendering for scenes.

Renders a scene to PNG bytes with matplotlib's 3D scatter, using the same
dark-to-bright heat ramp as the interactive viewer: darker points are older
accesses, brighter points more recent ones.
"""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import LinearSegmentedColormap

from .scenes import Scene

# Heat ramp stops (position, RGB 0-255). Every channel is non-decreasing
# along the ramp, which keeps perceived luminance strictly increasing; the
# browser viewer interpolates the same stops.
HEAT_STOPS = (
    (0.0, (0, 0, 0)),
    (0.35, (170, 20, 0)),
    (0.7, (255, 150, 0)),
    (1.0, (255, 255, 220)),
)


def heat_colormap() -> LinearSegmentedColormap:
    stops = [(pos, (r / 255.0, g / 255.0, b / 255.0)) for pos, (r, g, b) in HEAT_STOPS]
    return LinearSegmentedColormap.from_list("memviz_heat", stops)


def render_scene_png(scene: Scene, dpi: int = 110) -> bytes:
    """Render a scene to PNG bytes. Output is deterministic for a given
    scene, so repeated runs produce identical files."""
    fig = plt.figure(figsize=(8.0, 6.0))
    ax = fig.add_subplot(projection="3d")
    xs = [p.x for p in scene.points]
    ys = [p.y for p in scene.points]
    zs = [p.z for p in scene.points]
    ts = [p.t for p in scene.points]
    scatter = ax.scatter(
        xs, ys, zs, c=ts, cmap=heat_colormap(), vmin=0.0, vmax=1.0, s=14, depthshade=False
    )
    ax.set_xlabel(scene.axis_labels["x"])
    ax.set_ylabel(scene.axis_labels["y"])
    ax.set_zlabel(scene.axis_labels["z"])
    title = scene.kind.value if not scene.source else f"{scene.kind.value}: {scene.source}"
    ax.set_title(title)
    colorbar = fig.colorbar(scatter, ax=ax, shrink=0.6, pad=0.1)
    colorbar.set_label("execution time (dark = older)")
    buf = io.BytesIO()
    fig.savefig(buf, format="png", dpi=dpi)
    plt.close(fig)
    return buf.getvalue()
