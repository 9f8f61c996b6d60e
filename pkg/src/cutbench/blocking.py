"""Cache-blocked execution over a chunk-partitioned statevector.

The 2^n amplitudes are split into chunks of 2^nc, distributed over
`num_spaces` disjoint memory spaces (each also owning one spare chunk
buffer). After a blocking transpile every non-swap gate touches only the
low nc physical qubits, so it applies chunk-locally; swaps that cross the
chunk boundary relocate amplitudes between chunks and, when the two
chunks live in different spaces, cost two chunk transfers (one full chunk
copied into each side's buffer).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .statevector import apply_gate


@dataclass(frozen=True)
class ChunkLayout:
    """Static partition geometry: chunk size 2^nc, space s owns the
    contiguous chunk range [s * chunks/num_spaces, ...)."""

    nc: int
    num_spaces: int
    perm: tuple[int, ...]  # logical qubit -> physical wire (final layout)


@dataclass
class ExchangeLog:
    nc: int
    num_spaces: int
    chunk_transfers: int = 0
    bytes_moved: int = 0
    swaps_inserted: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "nc": self.nc,
                "num_spaces": self.num_spaces,
                "chunk_transfers": self.chunk_transfers,
                "bytes_moved": self.bytes_moved,
                "swaps_inserted": self.swaps_inserted,
            },
            sort_keys=True,
        )


class InfeasibleBlockingError(RuntimeError):
    """Raised when no swap schedule can localize the circuit (nc too small)."""


def blocking_transpile(c: Circuit, nc: int) -> tuple[Circuit, tuple[int, ...], int]:
    """Rewrite `c` onto physical wires so every non-swap gate acts below nc.

    Untouched logical qubits are parked on the high wires up front; when a
    pending gate has an operand above the boundary, a swap with the least
    recently used low wire pulls it down. Gates whose operands are already
    local are emitted as soon as ordering allows (a gate may overtake a
    later-blocked gate only when they share no wire).

    Returns (transpiled circuit, final logical->physical permutation,
    number of swaps inserted). Simulating the result from |0..0> gives the
    original amplitudes with basis-index bits routed through the
    permutation.
    """
    if not 1 <= nc <= c.width:
        raise ValueError(f"nc must be in [1, {c.width}], got {nc}")
    if nc == c.width:
        return c, tuple(range(c.width)), 0
    if nc < 2 and any(g.kind.arity == 2 for g in c.gates):
        raise InfeasibleBlockingError("two-qubit gates need nc >= 2")

    touched = list(c.touched_qubits())
    untouched = [q for q in range(c.width) if q not in set(touched)]
    phys_to_log = touched + untouched
    perm = [0] * c.width
    for p, q in enumerate(phys_to_log):
        perm[q] = p

    out: list[Gate] = []
    last_use = [0] * nc
    clock = 0
    swaps = 0
    remaining = list(c.gates)
    while remaining:
        kept: list[Gate] = []
        blocked: set[int] = set()
        emitted = False
        for g in remaining:
            if not blocked.isdisjoint(g.qubits):
                kept.append(g)
                blocked.update(g.qubits)
            elif all(perm[w] < nc for w in g.qubits):
                out.append(Gate(g.kind, tuple(perm[w] for w in g.qubits), g.params))
                clock += 1
                for w in g.qubits:
                    last_use[perm[w]] = clock
                emitted = True
            else:
                kept.append(g)
                blocked.update(g.qubits)
        remaining = kept
        if emitted or not remaining:
            continue
        # Nothing was local: pull the front gate's remote operands down,
        # evicting least-recently-used low wires (never another operand).
        g = remaining[0]
        for w in g.qubits:
            if perm[w] < nc:
                continue
            held = {perm[x] for x in g.qubits if x != w and perm[x] < nc}
            victim = min(
                (p for p in range(nc) if p not in held),
                key=lambda p: (last_use[p], p),
            )
            out.append(Gate(GateKind.SWAP, (victim, perm[w])))
            swaps += 1
            clock += 1
            last_use[victim] = clock
            lv, pw = phys_to_log[victim], perm[w]
            perm[w], perm[lv] = victim, pw
            phys_to_log[victim], phys_to_log[pw] = w, lv
    return Circuit(c.width, tuple(out)), tuple(perm), swaps


def _relocation_swap(spaces, bufs, cps: int, chunk_len: int, a: int, b_rel: int, log: ExchangeLog) -> None:
    """Exchange amplitudes for swap(a, b) with a local and b a chunk-index
    bit b_rel; pairs chunk c (bit clear) with chunk c | 1<<b_rel."""
    num_chunks = cps * len(spaces)
    stride = 1 << b_rel
    for c0 in range(num_chunks):
        if c0 & stride:
            continue
        c1 = c0 | stride
        s0, o0 = divmod(c0, cps)
        s1, o1 = divmod(c1, cps)
        v0 = spaces[s0][o0 * chunk_len : (o0 + 1) * chunk_len]
        v1 = spaces[s1][o1 * chunk_len : (o1 + 1) * chunk_len]
        a0 = v0.reshape(-1, 2, 1 << a)
        a1 = v1.reshape(-1, 2, 1 << a)
        if s0 == s1:
            buf = bufs[s0]
            buf[:] = v1
            a1[:, 0, :] = a0[:, 1, :]
            a0[:, 1, :] = buf.reshape(-1, 2, 1 << a)[:, 0, :]
        else:
            bufs[s0][:] = v1
            bufs[s1][:] = v0
            log.chunk_transfers += 2
            a0[:, 1, :] = bufs[s0].reshape(-1, 2, 1 << a)[:, 0, :]
            a1[:, 0, :] = bufs[s1].reshape(-1, 2, 1 << a)[:, 1, :]


def chunked_simulate(c: Circuit, nc: int, num_spaces: int) -> tuple[np.ndarray, ExchangeLog]:
    """Simulate via the chunked layout; returns (probabilities over the
    original qubit order, exchange statistics)."""
    n = c.width
    if not 1 <= nc <= n:
        raise ValueError(f"nc must be in [1, {n}], got {nc}")
    num_chunks = 1 << (n - nc)
    if num_spaces < 1 or num_chunks % num_spaces != 0:
        raise ValueError(f"num_spaces must divide {num_chunks}, got {num_spaces}")
    tc, perm, swaps = blocking_transpile(c, nc)
    layout = ChunkLayout(nc, num_spaces, perm)

    cps = num_chunks // num_spaces
    chunk_len = 1 << nc
    spaces = [np.zeros(cps * chunk_len, dtype=np.complex128) for _ in range(num_spaces)]
    bufs = [np.empty(chunk_len, dtype=np.complex128) for _ in range(num_spaces)]
    spaces[0][0] = 1.0
    log = ExchangeLog(nc=nc, num_spaces=num_spaces, swaps_inserted=swaps)

    for g in tc.gates:
        if max(g.qubits) < nc:
            for sp in spaces:
                apply_gate(sp, g)
            continue
        if g.kind is not GateKind.SWAP or min(g.qubits) >= nc:
            raise AssertionError(f"non-local gate {g} survived blocking transpile")
        a, b = min(g.qubits), max(g.qubits)
        _relocation_swap(spaces, bufs, cps, chunk_len, a, b - nc, log)
    log.bytes_moved = log.chunk_transfers * chunk_len * 16

    probs_phys = np.concatenate([np.abs(sp) ** 2 for sp in spaces])
    idx = np.arange(1 << n)
    sigma = np.zeros(1 << n, dtype=np.intp)
    for q in range(n):
        sigma |= ((idx >> q) & 1) << layout.perm[q]
    return probs_phys[sigma], log


def estimate_memory_gb(n: int) -> float:
    """Bytes of one complex128 statevector of width n, in GB (1e9 bytes)."""
    if n < 1:
        raise ValueError("width must be >= 1")
    return (1 << n) * 16 / 1e9


def table_memory_gb(n: int) -> float:
    """estimate_memory_gb truncated the way the benchmark table prints it:
    two decimals (floored) at >= 0.1 GB, else three significant digits
    (floored)."""
    x = estimate_memory_gb(n)
    if x >= 0.1:
        return math.floor(x * 100.0) / 100.0
    e = math.floor(math.log10(x))
    scale = 10.0 ** (e - 2)
    return math.floor(x / scale) * scale
