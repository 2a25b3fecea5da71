"""Deterministic synthetic workload tracers.

Three generators: a blocked matrix multiply (C = A * B), a sequential walk
over a 3D array, and a seeded random trace. All are pure functions of their
parameters, so the same spec always produces the same event sequence; the
test suite leans on that for oracle comparisons.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    HEAP_PLACEHOLDER,
    OperationKind,
    Scope,
    TraceEvent,
    VariableInfo,
    ADDRESS_MAX,
)


def _regions_disjoint(regions: list[tuple[int, int]]) -> bool:
    spans = sorted(regions)
    for (base_a, size_a), (base_b, _) in zip(spans, spans[1:]):
        if base_a + size_a > base_b:
            return False
    return True


@dataclass(frozen=True)
class BmmSpec:
    """Blocked matrix multiplication workload: n x n matrices, square blocks."""

    n: int
    block: int
    element_size: int = 8
    base_a: int = 0x100000
    base_b: int = 0x200000
    base_c: int = 0x300000

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("matrix dimension must be >= 1")
        if not 1 <= self.block <= self.n:
            raise ValueError("block size must satisfy 1 <= block <= n")
        if self.n % self.block != 0:
            raise ValueError("block size must divide the matrix dimension")
        if self.element_size < 1:
            raise ValueError("element size must be >= 1")
        extent = self.n * self.n * self.element_size
        bases = [self.base_a, self.base_b, self.base_c]
        if any(base < 0 or base + extent - 1 > ADDRESS_MAX for base in bases):
            raise ValueError("matrix region exceeds the 64-bit address space")
        if not _regions_disjoint([(base, extent) for base in bases]):
            raise ValueError("matrix regions A, B, C must be pairwise disjoint")


@dataclass(frozen=True)
class Walk3dSpec:
    """Sequential traversal of a row-major 3D array: rows, then columns,
    then depth (innermost)."""

    dims: tuple[int, int, int]
    element_size: int = 8
    base: int = 0x400000

    def __post_init__(self) -> None:
        if len(self.dims) != 3 or any(d < 1 for d in self.dims):
            raise ValueError("dims must be three positive integers")
        if self.element_size < 1:
            raise ValueError("element size must be >= 1")
        if self.base < 0:
            raise ValueError("base address must be non-negative")
        last = self.base + self.dims[0] * self.dims[1] * self.dims[2] * self.element_size - 1
        if last > ADDRESS_MAX:
            raise ValueError("array region exceeds the 64-bit address space")


def gen_bmm(spec: BmmSpec) -> list[TraceEvent]:
    """Trace a blocked matrix multiply.

    Block loops (ii, jj, kk) outside, element loops (i, j, k) inside; every
    innermost iteration loads A[i][k], loads B[k][j], and modifies C[i][j].
    Addressing is row-major, so the event count is always 3 * n^3.
    """
    n, block, esize = spec.n, spec.block, spec.element_size
    events: list[TraceEvent] = []

    def emit(op: OperationKind, base: int, flat: int, name: str) -> None:
        var = VariableInfo(scope=Scope.GLOBAL, function="bmm", structure=name, element=flat)
        events.append(
            TraceEvent(
                op=op,
                address=base + flat * esize,
                size=esize,
                thread=0,
                var=var,
                timestamp=len(events),
            )
        )

    for ii in range(0, n, block):
        for jj in range(0, n, block):
            for kk in range(0, n, block):
                for i in range(ii, ii + block):
                    for j in range(jj, jj + block):
                        for k in range(kk, kk + block):
                            emit(OperationKind.LOAD, spec.base_a, i * n + k, "A")
                            emit(OperationKind.LOAD, spec.base_b, k * n + j, "B")
                            emit(OperationKind.MODIFY, spec.base_c, i * n + j, "C")
    return events


def gen_walk3d(spec: Walk3dSpec) -> list[TraceEvent]:
    """One load per element of a (rows, cols, depth) array, depth innermost.

    This traversal makes neighboring depth elements adjacent in time, so the
    recency color gradient is slowest along depth and steepest across rows.
    """
    rows, cols, depth = spec.dims
    events: list[TraceEvent] = []
    for r in range(rows):
        for c in range(cols):
            for d in range(depth):
                flat = (r * cols + c) * depth + d
                var = VariableInfo(
                    scope=Scope.GLOBAL, function="walk3d", structure="V", element=flat
                )
                events.append(
                    TraceEvent(
                        op=OperationKind.LOAD,
                        address=spec.base + flat * spec.element_size,
                        size=spec.element_size,
                        thread=0,
                        var=var,
                        timestamp=len(events),
                    )
                )
    return events


# Fixed address pools for the random generator; spaced so the four kinds of
# attribution never collide.
_GLOBAL_BASE = 0x500000
_GLOBAL_STRIDE = 0x1000
_STACK_BASE = 0x7FF000
_HEAP_BASE = 0x900000
_UNKNOWN_BASE = 0xA00000

_FUNCTION_POOL = ("main", "compute", "update", "flush")
_SIZE_POOL = (1, 2, 4, 8)
_OP_POOL = (OperationKind.LOAD, OperationKind.STORE, OperationKind.MODIFY)


def gen_random(seed: int, n_events: int, n_vars: int = 8, max_elems: int = 64) -> list[TraceEvent]:
    """Reproducible random trace: same seed, same events, byte for byte.

    Draws a mix of global array elements, stack scalars, unresolved heap
    touches, and unattributed accesses from fixed pools.
    """
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    if n_vars < 1 or max_elems < 1:
        raise ValueError("n_vars and max_elems must be >= 1")
    rng = random.Random(seed)
    events: list[TraceEvent] = []
    for ts in range(n_events):
        op = _OP_POOL[rng.randrange(len(_OP_POOL))]
        function = _FUNCTION_POOL[rng.randrange(len(_FUNCTION_POOL))]
        thread = rng.randrange(2)
        kind = rng.randrange(10)
        if kind < 6:
            vid = rng.randrange(n_vars)
            elem = rng.randrange(max_elems)
            size = _SIZE_POOL[rng.randrange(len(_SIZE_POOL))]
            var = VariableInfo(Scope.GLOBAL, function, f"v{vid}", elem)
            addr = _GLOBAL_BASE + vid * _GLOBAL_STRIDE + elem * 8
        elif kind < 8:
            vid = rng.randrange(n_vars)
            size = 8
            var = VariableInfo(Scope.STACK, function, f"s{vid}")
            addr = _STACK_BASE + vid * 8
        elif kind < 9:
            size = 8
            var = VariableInfo(Scope.HEAP, function, HEAP_PLACEHOLDER)
            addr = _HEAP_BASE + rng.randrange(max_elems) * 8
        else:
            size = 4
            var = VariableInfo(Scope.UNKNOWN, function)
            addr = _UNKNOWN_BASE + rng.randrange(max_elems) * 4
        events.append(TraceEvent(op, addr, size, thread, var, ts))
    return events
