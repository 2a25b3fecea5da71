"""Memory access pattern analysis: trace parsing, deduplicated record
store, per-address analytics, and 3D visualization scene export."""

from .model import (
    AllocationRecord,
    OperationKind,
    Scope,
    TraceEvent,
    VariableInfo,
    format_address,
    overlaps,
    parse_address,
)
from .parser import FilterRule, ParseReport, parse_trace, parse_trace_file, serialize_trace
from .store import RecordStore, build
from .analytics import AddressStats, build_timeline, compute_stats
from .scenes import (
    ArrayLayout,
    Scene,
    SceneKind,
    build_2d_array_scene,
    build_3d_array_scene,
    build_complete_map,
    normalize_time,
)

__version__ = "0.1.0"

__all__ = [
    "AddressStats",
    "AllocationRecord",
    "ArrayLayout",
    "FilterRule",
    "OperationKind",
    "ParseReport",
    "RecordStore",
    "Scene",
    "SceneKind",
    "Scope",
    "TraceEvent",
    "VariableInfo",
    "build",
    "build_2d_array_scene",
    "build_3d_array_scene",
    "build_complete_map",
    "build_timeline",
    "compute_stats",
    "format_address",
    "normalize_time",
    "overlaps",
    "parse_address",
    "parse_trace",
    "parse_trace_file",
    "serialize_trace",
]
