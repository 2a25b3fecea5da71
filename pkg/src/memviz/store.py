"""Deduplicated record store.

Static attribution repeats for every touch of an address, so the store keeps
a look-up table with one entry per unique (address, size, thread, variable)
tuple and, per address, an ordered list of lightweight access entries that
reference LUT entries by dense integer id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import OperationKind, TraceEvent, VariableInfo, format_address


class IdOutOfRangeError(IndexError):
    """A LUT id that does not resolve to a record."""


@dataclass(frozen=True, slots=True)
class LutRecord:
    id: int
    address: int
    size: int
    thread: int
    var: VariableInfo


@dataclass(frozen=True, slots=True)
class AccessEntry:
    op: OperationKind
    lut_id: int
    timestamp: int


@dataclass
class RecordStore:
    """LUT plus per-address access lists; immutable once built.

    ``variable_order`` lists distinct non-empty structure names in first
    appearance order.
    """

    lut: list[LutRecord]
    by_address: dict[int, list[AccessEntry]]
    variable_order: list[str]
    total_events: int


def build(events: Iterable[TraceEvent]) -> RecordStore:
    """Build the store from an event sequence with strictly increasing
    timestamps. Ids are dense and assigned in first-appearance order, so
    rebuilding from the same events is fully deterministic."""
    lut: list[LutRecord] = []
    ids: dict[tuple[int, int, int, VariableInfo], int] = {}
    by_address: dict[int, list[AccessEntry]] = {}
    variable_order: list[str] = []
    seen_structures: set[str] = set()
    total = 0
    last_ts = -1
    for event in events:
        if event.timestamp <= last_ts:
            raise ValueError("event timestamps must strictly increase")
        last_ts = event.timestamp
        key = (event.address, event.size, event.thread, event.var)
        lut_id = ids.get(key)
        if lut_id is None:
            lut_id = len(lut)
            ids[key] = lut_id
            lut.append(
                LutRecord(
                    id=lut_id,
                    address=event.address,
                    size=event.size,
                    thread=event.thread,
                    var=event.var,
                )
            )
        by_address.setdefault(event.address, []).append(
            AccessEntry(op=event.op, lut_id=lut_id, timestamp=event.timestamp)
        )
        structure = event.var.structure
        if structure and structure not in seen_structures:
            seen_structures.add(structure)
            variable_order.append(structure)
        total += 1
    return RecordStore(
        lut=lut, by_address=by_address, variable_order=variable_order, total_events=total
    )


_NO_ACCESSES: list[AccessEntry] = []


def accesses(store: RecordStore, addr: int) -> list[AccessEntry]:
    """Ordered access list for an address; empty if it never appears."""
    return store.by_address.get(addr, _NO_ACCESSES)


def lookup(store: RecordStore, lut_id: int) -> LutRecord:
    if not 0 <= lut_id < len(store.lut):
        raise IdOutOfRangeError(f"LUT id {lut_id} out of range (size {len(store.lut)})")
    return store.lut[lut_id]


def reconstruct_events(store: RecordStore) -> list[TraceEvent]:
    """Join access lists back against the LUT, recovering the original
    event sequence (the store is lossless)."""
    events: list[TraceEvent] = []
    for addr, entries in store.by_address.items():
        for entry in entries:
            record = lookup(store, entry.lut_id)
            events.append(
                TraceEvent(
                    op=entry.op,
                    address=addr,
                    size=record.size,
                    thread=record.thread,
                    var=record.var,
                    timestamp=entry.timestamp,
                )
            )
    events.sort(key=lambda event: event.timestamp)
    return events


def store_to_json_dict(store: RecordStore) -> dict:
    """Debug-dump representation: LUT array plus access lists keyed by hex
    address."""
    lut = [
        {
            "id": record.id,
            "address": format_address(record.address),
            "size": record.size,
            "thread": record.thread,
            "scope": record.var.scope.value,
            "function": record.var.function,
            "structure": record.var.structure,
            "element": record.var.element,
        }
        for record in store.lut
    ]
    by_address = {
        format_address(addr): [
            {"op": entry.op.value, "lut_id": entry.lut_id, "timestamp": entry.timestamp}
            for entry in entries
        ]
        for addr, entries in store.by_address.items()
    }
    return {
        "lut": lut,
        "by_address": by_address,
        "variable_order": list(store.variable_order),
        "total_events": store.total_events,
    }
