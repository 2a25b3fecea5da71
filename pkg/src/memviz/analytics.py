"""Per-address usage statistics, variable-name resolution, and the
execution timeline."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence, TextIO

from .model import AllocationRecord, OperationKind, Scope, VariableInfo, format_address
from .store import RecordStore, lookup


@dataclass(frozen=True, slots=True)
class AddressStats:
    address: int
    loads: int
    stores: int
    modifies: int
    appearances: int
    variable: str
    first_ts: int
    last_ts: int


@dataclass(frozen=True, slots=True)
class TimelineEntry:
    timestamp: int
    address: int
    op: OperationKind
    variable: str


class HeapRegions:
    """Deterministic fallback names for heap accesses no allocation covers.

    A region is keyed by the accessing function; k is the region's global
    ordinal by first appearance, so names are injective within one trace.
    """

    def __init__(self) -> None:
        self._ordinals: dict[str, int] = {}

    def name(self, function: str) -> str:
        k = self._ordinals.get(function)
        if k is None:
            k = len(self._ordinals)
            self._ordinals[function] = k
        return f"heap@{function}#{k}"


def resolve_variable_name(
    var: VariableInfo,
    addr: int,
    allocs: Sequence[AllocationRecord],
    regions: HeapRegions | None = None,
) -> str:
    """Resolve the display name for one access.

    Global/stack accesses use their structure name. Heap accesses take the
    label of the containing allocation record, latest-allocated first; with
    no covering record they fall back to a ``heap@<function>#<k>`` name.
    Everything else (unknown scope, nameless globals) resolves to ``?``.
    """
    if var.scope in (Scope.GLOBAL, Scope.STACK):
        return var.structure if var.structure else "?"
    if var.scope is Scope.HEAP:
        for alloc in reversed(allocs):
            if alloc.contains(addr):
                return alloc.label
        if regions is None:
            regions = HeapRegions()
        return regions.name(var.function)
    return "?"


def compute_stats(
    store: RecordStore, allocs: Sequence[AllocationRecord] = ()
) -> dict[int, AddressStats]:
    """One AddressStats per address in the store.

    The variable name comes from the address's first access; addresses are
    processed in first-access order so heap fallback ordinals follow the
    timeline.
    """
    regions = HeapRegions()
    stats: dict[int, AddressStats] = {}
    ordered = sorted(store.by_address.items(), key=lambda item: item[1][0].timestamp)
    for addr, entries in ordered:
        loads = stores = modifies = 0
        for entry in entries:
            if entry.op is OperationKind.LOAD:
                loads += 1
            elif entry.op is OperationKind.STORE:
                stores += 1
            else:
                modifies += 1
        var = lookup(store, entries[0].lut_id).var
        stats[addr] = AddressStats(
            address=addr,
            loads=loads,
            stores=stores,
            modifies=modifies,
            appearances=len(entries),
            variable=resolve_variable_name(var, addr, allocs, regions),
            first_ts=entries[0].timestamp,
            last_ts=entries[-1].timestamp,
        )
    return stats


def build_timeline(
    store: RecordStore, stats: dict[int, AddressStats]
) -> list[TimelineEntry]:
    """Project the store back into execution order: one entry per event,
    sorted by timestamp."""
    timeline: list[TimelineEntry] = []
    for addr, entries in store.by_address.items():
        variable = stats[addr].variable
        for entry in entries:
            timeline.append(
                TimelineEntry(
                    timestamp=entry.timestamp, address=addr, op=entry.op, variable=variable
                )
            )
    timeline.sort(key=lambda entry: entry.timestamp)
    return timeline


STATS_CSV_HEADER = (
    "address",
    "variable",
    "loads",
    "stores",
    "modifies",
    "appearances",
    "first_ts",
    "last_ts",
)


def write_stats_csv(stats: dict[int, AddressStats], out: TextIO) -> None:
    """CSV export, rows sorted by address ascending, addresses in hex."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(STATS_CSV_HEADER)
    for addr in sorted(stats):
        st = stats[addr]
        writer.writerow(
            [
                format_address(st.address),
                st.variable,
                st.loads,
                st.stores,
                st.modifies,
                st.appearances,
                st.first_ts,
                st.last_ts,
            ]
        )


def stats_csv_text(stats: dict[int, AddressStats]) -> str:
    buf = io.StringIO()
    write_stats_csv(stats, buf)
    return buf.getvalue()
