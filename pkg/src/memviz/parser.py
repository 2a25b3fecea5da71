"""Trace text parsing, filtering, and serialization.

The trace format is plain text, one record per line, single-space separated:

    event line:       <op> <addr> <size> <thread> <scope> <function> <structure> [<element>]
    allocation line:  A <addr> <size> <thread> <function> <label>
    comment:          first non-space character is '#'; blank lines are skipped

with op in {L,S,M}, scope in {G,S,H,U}, addr 0x-prefixed lowercase hex, and
size / thread / element decimal. A structure of ``-`` means "no structure";
an element index is then not allowed. Heap events without a structure name
are given the ``?heap`` placeholder so analytics can resolve them later.

Malformed lines are counted, never fatal: a corrupt line in a multi-gigabyte
trace should not abort the run.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .model import (
    HEAP_PLACEHOLDER,
    AllocationRecord,
    OperationKind,
    Scope,
    TraceEvent,
    VariableInfo,
    format_address,
    parse_address,
)

_OP_BY_LETTER = {kind.value: kind for kind in OperationKind}
_SCOPE_BY_LETTER = {scope.value: scope for scope in Scope}


class MalformedReason(Enum):
    UNKNOWN_OPERATION = "UnknownOperation"
    BAD_ADDRESS = "BadAddress"
    BAD_SIZE = "BadSize"
    MISSING_FIELD = "MissingField"


@dataclass(frozen=True, slots=True)
class Malformed:
    """Parse outcome for a line that is neither an event, an allocation,
    nor a skippable comment/blank line."""

    reason: MalformedReason


@dataclass(frozen=True)
class FilterRule:
    """Which parsed events to keep.

    Unset (or empty) keep-sets impose no constraint; they never mean "drop
    everything".
    """

    drop_unattributed: bool = False
    keep_functions: frozenset[str] | None = None
    keep_variables: frozenset[str] | None = None
    keep_threads: frozenset[int] | None = None

    def keeps(self, event: TraceEvent) -> bool:
        if self.drop_unattributed and event.var.scope is Scope.UNKNOWN:
            return False
        if self.keep_functions and event.var.function not in self.keep_functions:
            return False
        if self.keep_variables and event.var.structure not in self.keep_variables:
            return False
        if self.keep_threads and event.thread not in self.keep_threads:
            return False
        return True


@dataclass
class ParseReport:
    """Outcome counters for one parse run.

    Every input line lands in exactly one of the four counters, so
    ``lines_read`` always equals their sum.
    """

    lines_read: int = 0
    events_emitted: int = 0
    events_filtered: int = 0
    lines_skipped: int = 0
    lines_malformed: int = 0

    @property
    def reduction_ratio(self) -> float:
        """Fraction of well-formed events removed by the filter rules."""
        return self.events_filtered / max(1, self.events_emitted + self.events_filtered)


def reduction_percent(report: ParseReport) -> float:
    return 100.0 * report.reduction_ratio


def _decimal(token: str) -> int | None:
    if not token.isdigit():
        return None
    return int(token)


def parse_line(
    line: str, next_timestamp: int
) -> TraceEvent | AllocationRecord | Malformed | None:
    """Parse one trace line.

    Returns a TraceEvent carrying ``next_timestamp``, an AllocationRecord,
    Malformed with a reason code, or None for comments and blank lines.
    Only four reason codes exist: field violations other than a bad
    operation, address, or size count as MISSING_FIELD.
    """
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    tokens = stripped.split()
    op_letter = tokens[0]
    if op_letter == "A":
        return _parse_alloc(tokens)
    op = _OP_BY_LETTER.get(op_letter)
    if op is None:
        return Malformed(MalformedReason.UNKNOWN_OPERATION)
    if not 7 <= len(tokens) <= 8:
        return Malformed(MalformedReason.MISSING_FIELD)
    try:
        address = parse_address(tokens[1])
    except ValueError:
        return Malformed(MalformedReason.BAD_ADDRESS)
    size = _decimal(tokens[2])
    if size is None or size < 1:
        return Malformed(MalformedReason.BAD_SIZE)
    thread = _decimal(tokens[3])
    if thread is None:
        return Malformed(MalformedReason.MISSING_FIELD)
    scope = _SCOPE_BY_LETTER.get(tokens[4])
    if scope is None:
        return Malformed(MalformedReason.MISSING_FIELD)
    function = tokens[5]
    structure = "" if tokens[6] == "-" else tokens[6]
    element = None
    if len(tokens) == 8:
        if not structure:
            return Malformed(MalformedReason.MISSING_FIELD)
        element = _decimal(tokens[7])
        if element is None:
            return Malformed(MalformedReason.MISSING_FIELD)
    if scope is Scope.HEAP and not structure:
        structure = HEAP_PLACEHOLDER
    return TraceEvent(
        op=op,
        address=address,
        size=size,
        thread=thread,
        var=VariableInfo(scope=scope, function=function, structure=structure, element=element),
        timestamp=next_timestamp,
    )


def _parse_alloc(tokens: list[str]) -> AllocationRecord | Malformed:
    if len(tokens) != 6:
        return Malformed(MalformedReason.MISSING_FIELD)
    try:
        base = parse_address(tokens[1])
    except ValueError:
        return Malformed(MalformedReason.BAD_ADDRESS)
    size = _decimal(tokens[2])
    if size is None or size < 1:
        return Malformed(MalformedReason.BAD_SIZE)
    thread = _decimal(tokens[3])
    if thread is None:
        return Malformed(MalformedReason.MISSING_FIELD)
    return AllocationRecord(
        base=base, size=size, thread=thread, function=tokens[4], label=tokens[5]
    )


def parse_trace(
    lines: Iterable[str], rules: FilterRule | None = None
) -> tuple[list[TraceEvent], list[AllocationRecord], ParseReport]:
    """Parse a stream of trace lines, applying the filter rules.

    Emitted events carry timestamps 0..N-1 in input order; filtered events
    consume no timestamp, so recency coloring downstream reflects only the
    analyzed trace. I/O errors from the underlying stream propagate.
    """
    rules = rules if rules is not None else FilterRule()
    events: list[TraceEvent] = []
    allocs: list[AllocationRecord] = []
    report = ParseReport()
    for line in lines:
        report.lines_read += 1
        parsed = parse_line(line, next_timestamp=len(events))
        if parsed is None:
            report.lines_skipped += 1
        elif isinstance(parsed, Malformed):
            report.lines_malformed += 1
        elif isinstance(parsed, AllocationRecord):
            # allocation lines are sidecar metadata, not events; they count
            # as skipped so the four counters cover every input line
            allocs.append(parsed)
            report.lines_skipped += 1
        elif rules.keeps(parsed):
            events.append(parsed)
            report.events_emitted += 1
        else:
            report.events_filtered += 1
    return events, allocs, report


def parse_trace_file(
    path: str, rules: FilterRule | None = None
) -> tuple[list[TraceEvent], list[AllocationRecord], ParseReport]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trace(fh, rules)


def _check_token(value: str, what: str) -> str:
    if not value or any(ch.isspace() for ch in value):
        raise ValueError(f"{what} must be a non-empty token without whitespace: {value!r}")
    return value


def format_event(event: TraceEvent) -> str:
    """Serialize one event to its trace line (inverse of parse_line)."""
    parts = [
        event.op.value,
        format_address(event.address),
        str(event.size),
        str(event.thread),
        event.var.scope.value,
        _check_token(event.var.function, "function"),
        _check_token(event.var.structure, "structure") if event.var.structure else "-",
    ]
    if event.var.element is not None:
        parts.append(str(event.var.element))
    return " ".join(parts)


def format_alloc(alloc: AllocationRecord) -> str:
    return " ".join(
        [
            "A",
            format_address(alloc.base),
            str(alloc.size),
            str(alloc.thread),
            _check_token(alloc.function, "function"),
            _check_token(alloc.label, "label"),
        ]
    )


def serialize_trace(
    events: Sequence[TraceEvent], allocs: Sequence[AllocationRecord] = ()
) -> str:
    """Render a full trace file; allocation lines come first since they carry
    no position of their own."""
    out: list[str] = [format_alloc(alloc) for alloc in allocs]
    out.extend(format_event(event) for event in events)
    return "".join(line + "\n" for line in out)
