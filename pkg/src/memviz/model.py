"""Core domain types for memory access traces.

A trace is an ordered sequence of memory operations, each attributed to the
source-level variable it touched: operation kind, byte address, access size,
thread, scope, originating function, and (for arrays) the element index.
All types here are immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

ADDRESS_MAX = 2**64 - 1

# Placeholder structure name for heap accesses the tracer could not attribute;
# analytics replaces it with an allocation label or a deterministic fallback.
HEAP_PLACEHOLDER = "?heap"


class OperationKind(Enum):
    """Memory operation class. Modifies (read-modify-write) are their own
    kind and are never split into a load plus a store."""

    LOAD = "L"
    STORE = "S"
    MODIFY = "M"


class Scope(Enum):
    GLOBAL = "G"
    STACK = "S"
    HEAP = "H"
    UNKNOWN = "U"


_ADDRESS_RE = re.compile(r"0x[0-9a-f]+\Z")


def parse_address(text: str) -> int:
    """Parse a ``0x``-prefixed lowercase hex address.

    Rejects uppercase hex, a missing prefix, and values that do not fit in
    64 bits.
    """
    if not _ADDRESS_RE.fullmatch(text):
        raise ValueError(f"bad address: {text!r}")
    value = int(text, 16)
    if value > ADDRESS_MAX:
        raise ValueError(f"address does not fit in 64 bits: {text}")
    return value


def format_address(value: int) -> str:
    if not 0 <= value <= ADDRESS_MAX:
        raise ValueError(f"address does not fit in 64 bits: {value}")
    return f"0x{value:x}"


@dataclass(frozen=True, slots=True)
class VariableInfo:
    """Static attribution of one access: which variable the address belongs to."""

    scope: Scope
    function: str
    structure: str = ""
    element: int | None = None

    def __post_init__(self) -> None:
        if self.scope is Scope.HEAP and not self.structure:
            raise ValueError(
                f"heap attribution needs a structure name or {HEAP_PLACEHOLDER!r}"
            )
        if self.element is not None:
            if not self.structure:
                raise ValueError("element index given without a structure name")
            if self.element < 0:
                raise ValueError("element index must be non-negative")


@dataclass(frozen=True, slots=True)
class TraceEvent:
    """One memory operation. ``timestamp`` is the 0-based ordinal of the
    event within its (filtered) trace."""

    op: OperationKind
    address: int
    size: int
    thread: int
    var: VariableInfo
    timestamp: int

    def __post_init__(self) -> None:
        if not 0 <= self.address <= ADDRESS_MAX:
            raise ValueError(f"address does not fit in 64 bits: {self.address}")
        if self.size < 1:
            raise ValueError("access size must be >= 1")
        if self.thread < 0:
            raise ValueError("thread id must be non-negative")
        if self.timestamp < 0:
            raise ValueError("timestamp must be non-negative")


@dataclass(frozen=True, slots=True)
class AllocationRecord:
    """A named allocation [base, base+size), used to attach labels to heap
    accesses that carry no variable name of their own."""

    base: int
    size: int
    thread: int
    function: str
    label: str

    def __post_init__(self) -> None:
        if not 0 <= self.base <= ADDRESS_MAX:
            raise ValueError(f"base address does not fit in 64 bits: {self.base}")
        if self.size < 1:
            raise ValueError("allocation size must be >= 1")

    def contains(self, addr: int) -> bool:
        return self.base <= addr < self.base + self.size


def overlaps(alloc: AllocationRecord, addr: int, size: int) -> bool:
    """True iff [addr, addr+size) intersects the allocation region.

    Both intervals are half-open, so a region ending exactly where the
    access starts does not overlap.
    """
    if size < 1:
        raise ValueError("access size must be >= 1")
    return addr < alloc.base + alloc.size and alloc.base < addr + size
