"""3D visualization scenes with recency coloring.

Three scene kinds are built from a record store and its per-address stats:

* ``complete_map``: one point per event; address, variable, and per-address
  access ordinal axes.
* ``array2d``: a reconstructed 2D array; rows/columns plus an
  appearance-count axis, colored by each element's last access.
* ``array3d``: a reconstructed 3D array; pure element coordinates,
  colored by each element's first access.

Every point carries a normalized time value t in [0, 1]; 0 is the oldest
event and 1 the most recent, so a renderer maps t directly onto a
dark-to-bright heat palette. Scenes are geometry only; rendering, cameras,
and palette choice belong to the viewer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .analytics import AddressStats
from .model import format_address
from .store import RecordStore


class LayoutMismatchError(ValueError):
    """An access attributed to the structure does not fall on an element
    boundary of the declared layout."""


class SceneKind(Enum):
    COMPLETE_MAP = "complete_map"
    ARRAY2D = "array2d"
    ARRAY3D = "array3d"


_AXIS_LABELS = {
    SceneKind.COMPLETE_MAP: {"x": "access #", "y": "variable", "z": "address"},
    SceneKind.ARRAY2D: {"x": "column", "y": "appearances", "z": "row"},
    SceneKind.ARRAY3D: {"x": "column", "y": "depth", "z": "row"},
}

_COLOR_CONVENTION = {
    SceneKind.COMPLETE_MAP: "per_event",
    SceneKind.ARRAY2D: "last_access",
    SceneKind.ARRAY3D: "first_access",
}


@dataclass(frozen=True, slots=True)
class PointMeta:
    """Hover payload: where the point lives and how it was used."""

    address: int
    variable: str
    loads: int
    stores: int
    modifies: int
    timestamp: int


@dataclass(frozen=True, slots=True)
class ScenePoint:
    x: float
    y: float
    z: float
    t: float
    meta: PointMeta

    def __post_init__(self) -> None:
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"normalized time out of range: {self.t}")


@dataclass(frozen=True)
class ArrayLayout:
    """Maps addresses back to array coordinates: row-major, 2D layouts are
    (rows, cols), 3D layouts (rows, cols, depth)."""

    structure: str
    base: int
    element_size: int
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.element_size < 1:
            raise ValueError("element size must be >= 1")
        if not 1 <= len(self.dims) <= 3 or any(d < 1 for d in self.dims):
            raise ValueError("dims must be 1-3 positive integers")

    @property
    def extent(self) -> int:
        cells = 1
        for d in self.dims:
            cells *= d
        return cells * self.element_size


@dataclass
class Scene:
    kind: SceneKind
    points: list[ScenePoint]
    axis_labels: dict[str, str]
    source: str
    total_events: int
    color_convention: str
    out_of_layout: int = 0


def normalize_time(timestamp: int, total_events: int) -> float:
    """Map an event timestamp onto [0, 1]; a single-event trace maps to 1.0
    (its one event is also the most recent)."""
    if timestamp < 0 or timestamp >= total_events:
        raise ValueError(f"timestamp {timestamp} out of range for {total_events} events")
    if total_events == 1:
        return 1.0
    return timestamp / (total_events - 1)


def build_complete_map(
    store: RecordStore, stats: dict[int, AddressStats], source: str = ""
) -> Scene:
    """One point per event: z = address, y = variable index (first-appearance
    order of resolved names), x = 1-based ordinal of the access within its
    address's list."""
    flattened = [
        (entry.timestamp, addr)
        for addr, entries in store.by_address.items()
        for entry in entries
    ]
    flattened.sort()
    var_index: dict[str, int] = {}
    seen_per_addr: dict[int, int] = {}
    points: list[ScenePoint] = []
    for timestamp, addr in flattened:
        st = stats[addr]
        y = var_index.setdefault(st.variable, len(var_index))
        x = seen_per_addr.get(addr, 0) + 1
        seen_per_addr[addr] = x
        points.append(
            ScenePoint(
                x=x,
                y=y,
                z=addr,
                t=normalize_time(timestamp, store.total_events),
                meta=PointMeta(
                    address=addr,
                    variable=st.variable,
                    loads=st.loads,
                    stores=st.stores,
                    modifies=st.modifies,
                    timestamp=timestamp,
                ),
            )
        )
    return Scene(
        kind=SceneKind.COMPLETE_MAP,
        points=points,
        axis_labels=dict(_AXIS_LABELS[SceneKind.COMPLETE_MAP]),
        source=source,
        total_events=store.total_events,
        color_convention=_COLOR_CONVENTION[SceneKind.COMPLETE_MAP],
    )


def _layout_cells(
    store: RecordStore, stats: dict[int, AddressStats], layout: ArrayLayout
) -> tuple[list[tuple[int, AddressStats]], int]:
    """Collect (flat index, stats) for every accessed element of the layout,
    tallying accesses that fall outside the region."""
    cells: list[tuple[int, AddressStats]] = []
    out_of_layout = 0
    for addr in sorted(stats):
        st = stats[addr]
        if st.variable != layout.structure:
            continue
        if addr < layout.base or addr >= layout.base + layout.extent:
            out_of_layout += st.appearances
            continue
        offset = addr - layout.base
        if offset % layout.element_size != 0:
            raise LayoutMismatchError(
                f"access at {format_address(addr)} is not aligned to "
                f"{layout.element_size}-byte elements of {layout.structure!r} "
                f"at {format_address(layout.base)}"
            )
        cells.append((offset // layout.element_size, st))
    return cells, out_of_layout


def build_2d_array_scene(
    store: RecordStore,
    stats: dict[int, AddressStats],
    layout: ArrayLayout,
    source: str = "",
) -> Scene:
    """Reconstructed 2D array: z = row, x = column, y = appearance count,
    colored by the element's last access. Untouched elements are omitted."""
    if len(layout.dims) != 2:
        raise ValueError("2D scene needs a 2-dimensional layout")
    _, cols = layout.dims
    cells, out_of_layout = _layout_cells(store, stats, layout)
    points: list[ScenePoint] = []
    for flat, st in cells:
        row, col = divmod(flat, cols)
        points.append(
            ScenePoint(
                x=col,
                y=st.appearances,
                z=row,
                t=normalize_time(st.last_ts, store.total_events),
                meta=PointMeta(
                    address=st.address,
                    variable=st.variable,
                    loads=st.loads,
                    stores=st.stores,
                    modifies=st.modifies,
                    timestamp=st.last_ts,
                ),
            )
        )
    return Scene(
        kind=SceneKind.ARRAY2D,
        points=points,
        axis_labels=dict(_AXIS_LABELS[SceneKind.ARRAY2D]),
        source=source,
        total_events=store.total_events,
        color_convention=_COLOR_CONVENTION[SceneKind.ARRAY2D],
        out_of_layout=out_of_layout,
    )


def build_3d_array_scene(
    store: RecordStore,
    stats: dict[int, AddressStats],
    layout: ArrayLayout,
    source: str = "",
) -> Scene:
    """Reconstructed 3D array: (z, x, y) = (row, column, depth) coordinates,
    colored by the element's first access so traversal order reads off the
    color gradient."""
    if len(layout.dims) != 3:
        raise ValueError("3D scene needs a 3-dimensional layout")
    _, cols, depth = layout.dims
    cells, out_of_layout = _layout_cells(store, stats, layout)
    points: list[ScenePoint] = []
    for flat, st in cells:
        row = flat // (cols * depth)
        col = (flat // depth) % cols
        dep = flat % depth
        points.append(
            ScenePoint(
                x=col,
                y=dep,
                z=row,
                t=normalize_time(st.first_ts, store.total_events),
                meta=PointMeta(
                    address=st.address,
                    variable=st.variable,
                    loads=st.loads,
                    stores=st.stores,
                    modifies=st.modifies,
                    timestamp=st.first_ts,
                ),
            )
        )
    return Scene(
        kind=SceneKind.ARRAY3D,
        points=points,
        axis_labels=dict(_AXIS_LABELS[SceneKind.ARRAY3D]),
        source=source,
        total_events=store.total_events,
        color_convention=_COLOR_CONVENTION[SceneKind.ARRAY3D],
        out_of_layout=out_of_layout,
    )


def _number(value: float | int):
    # floats keep at most 9 significant digits so exported files are stable
    if isinstance(value, int):
        return value
    return float(f"{value:.9g}")


def scene_to_json_dict(scene: Scene) -> dict:
    return {
        "kind": scene.kind.value,
        "axis_labels": dict(scene.axis_labels),
        "total_events": scene.total_events,
        "source": scene.source,
        "color_convention": scene.color_convention,
        "out_of_layout": scene.out_of_layout,
        "points": [
            {
                "x": _number(p.x),
                "y": _number(p.y),
                "z": _number(p.z),
                "t": _number(p.t),
                "meta": {
                    "address": format_address(p.meta.address),
                    "variable": p.meta.variable,
                    "loads": p.meta.loads,
                    "stores": p.meta.stores,
                    "modifies": p.meta.modifies,
                    "timestamp": p.meta.timestamp,
                },
            }
            for p in scene.points
        ],
    }


def scene_json_text(scene: Scene) -> str:
    """Canonical serialized form: sorted keys, compact separators, trailing
    newline. Two builds of the same scene are byte-identical."""
    return json.dumps(scene_to_json_dict(scene), sort_keys=True, separators=(",", ":")) + "\n"
