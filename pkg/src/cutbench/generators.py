"""Benchmark circuit families.

Five generators: ripple-carry adder (MAJ/UMA with one ancilla and a
carry-out), approximate QFT (controlled phases truncated past the
approximation degree), Bernstein-Vazirani, a hardware-efficient ansatz
(RY-RZ layers with a linear CX chain), and a 2-D grid random circuit (CZ
edge colorings with a seeded {t, rx(pi/2), ry(pi/2)} mix between layers).

All randomness comes from numpy's PCG64 via default_rng(seed) with a
fixed draw order, so output is byte-stable for a fixed GenSpec.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind

_FAMILIES = ("adder", "aqft", "bv", "hwea", "supremacy")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    seed: int = 0
    degree: int | None = None  # aqft: keep controlled phases of distance < degree
    layers: int = 1  # hwea
    hidden: str | None = None  # bv: bit i of the string rides wire i
    a_value: int | None = None  # adder input registers; seeded when None
    b_value: int | None = None
    rows: int = 0  # supremacy grid; derived near-square when 0
    cols: int = 0
    depth: int = 8  # supremacy CZ layer count


def _g1(kind: GateKind, q: int, *params: float) -> Gate:
    return Gate(kind, (q,), tuple(params))


def _ccx(c1: int, c2: int, t: int) -> list[Gate]:
    """Toffoli via the standard 15-gate h/t/cx network."""
    K = GateKind
    return [
        _g1(K.H, t),
        Gate(K.CX, (c2, t)),
        _g1(K.TDG, t),
        Gate(K.CX, (c1, t)),
        _g1(K.T, t),
        Gate(K.CX, (c2, t)),
        _g1(K.TDG, t),
        Gate(K.CX, (c1, t)),
        _g1(K.T, c2),
        _g1(K.T, t),
        _g1(K.H, t),
        Gate(K.CX, (c1, c2)),
        _g1(K.T, c1),
        _g1(K.TDG, c2),
        Gate(K.CX, (c1, c2)),
    ]


def _cp(theta: float, a: int, b: int) -> list[Gate]:
    """Controlled phase diag(1,1,1,e^{i theta}) via u1/cx."""
    K = GateKind
    return [
        _g1(K.U1, a, theta / 2),
        Gate(K.CX, (a, b)),
        _g1(K.U1, b, -theta / 2),
        Gate(K.CX, (a, b)),
        _g1(K.U1, b, theta / 2),
    ]


def _gen_adder(spec: GenSpec) -> Circuit:
    """Cuccaro ripple-carry adder: wire 0 is the carry ancilla, register
    bits interleave as b_i = 1+2i, a_i = 2+2i, and the top wire takes the
    carry-out. Computes b <- a + b (mod 2^m) with the overflow on top."""
    n = spec.n
    if n < 4 or n % 2:
        raise ValueError("adder needs even n >= 4")
    m = (n - 2) // 2
    rng = np.random.default_rng(spec.seed)
    a_value = int(rng.integers(0, 1 << m)) if spec.a_value is None else spec.a_value
    b_value = int(rng.integers(0, 1 << m)) if spec.b_value is None else spec.b_value
    if not 0 <= a_value < (1 << m) or not 0 <= b_value < (1 << m):
        raise ValueError(f"adder inputs must fit {m} bits")

    K = GateKind
    z = n - 1
    gates: list[Gate] = []
    for i in range(m):
        if (a_value >> i) & 1:
            gates.append(_g1(K.X, 2 + 2 * i))
        if (b_value >> i) & 1:
            gates.append(_g1(K.X, 1 + 2 * i))
    carry = 0
    for i in range(m):
        b, a = 1 + 2 * i, 2 + 2 * i
        gates.append(Gate(K.CX, (a, b)))
        gates.append(Gate(K.CX, (a, carry)))
        gates.extend(_ccx(carry, b, a))
        carry = a
    gates.append(Gate(K.CX, (2 * m, z)))
    for i in reversed(range(m)):
        b, a = 1 + 2 * i, 2 + 2 * i
        carry = 0 if i == 0 else 2 * i
        gates.extend(_ccx(carry, b, a))
        gates.append(Gate(K.CX, (a, carry)))
        gates.append(Gate(K.CX, (carry, b)))
    return Circuit(n, tuple(gates))


def _gen_aqft(spec: GenSpec) -> Circuit:
    """QFT processed from the top wire down, keeping controlled phases of
    bit distance < degree; no terminal reversal swaps (readout order is a
    classical relabeling)."""
    n = spec.n
    if n < 1:
        raise ValueError("aqft needs n >= 1")
    degree = spec.degree
    if degree is None:
        degree = math.ceil(math.log2(n)) + 2 if n > 1 else 1
    if degree < 1:
        raise ValueError("aqft degree must be >= 1")
    degree = min(degree, n)
    gates: list[Gate] = []
    for j in range(n - 1, -1, -1):
        gates.append(_g1(GateKind.H, j))
        for k in range(j - 1, max(j - degree, -1), -1):
            gates.extend(_cp(math.pi / (1 << (j - k)), k, j))
    return Circuit(n, tuple(gates))


def _gen_bv(spec: GenSpec) -> Circuit:
    """Hidden-string circuit: inputs on wires 0..n-2, target on top; the
    target is uncomputed so the full output is a point distribution."""
    n = spec.n
    if n < 2:
        raise ValueError("bv needs n >= 2")
    hidden = spec.hidden
    if hidden is None:
        bits = np.random.default_rng(spec.seed).integers(0, 2, n - 1)
        hidden = "".join(str(int(b)) for b in bits)
    if len(hidden) != n - 1 or set(hidden) - {"0", "1"}:
        raise ValueError(f"hidden string must be {n - 1} bits of 0/1")
    K = GateKind
    t = n - 1
    gates: list[Gate] = [_g1(K.X, t)]
    gates.extend(_g1(K.H, q) for q in range(n))
    for i, ch in enumerate(hidden):
        if ch == "1":
            gates.append(Gate(K.CX, (i, t)))
    gates.extend(_g1(K.H, q) for q in range(n - 1))
    gates.append(_g1(K.H, t))
    gates.append(_g1(K.X, t))
    return Circuit(n, tuple(gates))


def _gen_hwea(spec: GenSpec) -> Circuit:
    n = spec.n
    if n < 2:
        raise ValueError("hwea needs n >= 2")
    if spec.layers < 1:
        raise ValueError("hwea needs layers >= 1")
    rng = np.random.default_rng(spec.seed)
    K = GateKind
    gates: list[Gate] = []
    for _layer in range(spec.layers):
        for q in range(n):
            gates.append(_g1(K.RY, q, rng.uniform(0.0, 2.0 * math.pi)))
            gates.append(_g1(K.RZ, q, rng.uniform(0.0, 2.0 * math.pi)))
        for q in range(n - 1):
            gates.append(Gate(K.CX, (q, q + 1)))
    return Circuit(n, tuple(gates))


def _near_square(n: int) -> tuple[int, int]:
    r = int(math.isqrt(n))
    while n % r:
        r -= 1
    return r, n // r


def _gen_supremacy(spec: GenSpec) -> Circuit:
    """Grid random circuit: H everywhere, then `depth` CZ layers chosen by
    rotating edge colorings, with a seeded 1q mix layer between CZ layers."""
    n = spec.n
    if n < 2:
        raise ValueError("supremacy needs n >= 2")
    rows, cols = (spec.rows, spec.cols) if spec.rows or spec.cols else _near_square(n)
    if rows < 1 or cols < 1 or rows * cols != n:
        raise ValueError(f"grid {rows}x{cols} does not tile {n} qubits")
    if spec.depth < 1:
        raise ValueError("supremacy needs depth >= 1")
    rng = np.random.default_rng(spec.seed)
    K = GateKind
    half_pi = math.pi / 2

    def qubit(r: int, c: int) -> int:
        return r * cols + c

    gates: list[Gate] = [_g1(K.H, q) for q in range(n)]
    placed = 0
    i = 0
    while placed < spec.depth:
        dx = i % 2
        dy = 1 - dx
        offset = (i >> 1) % 4
        pairs = [
            (qubit(r, c), qubit(r + dx, c + dy))
            for r in range(rows)
            for c in range(cols)
            if (r * (2 - dx) + c * (2 - dy)) % 4 == offset
            and r + dx < rows
            and c + dy < cols
        ]
        if pairs:
            if placed:
                for q in range(n):
                    pick = int(rng.integers(0, 3))
                    if pick == 0:
                        gates.append(_g1(K.T, q))
                    elif pick == 1:
                        gates.append(_g1(K.RX, q, half_pi))
                    else:
                        gates.append(_g1(K.RY, q, half_pi))
            gates.extend(Gate(K.CZ, p) for p in pairs)
            placed += 1
        i += 1
        if i >= 8 and not placed:
            raise ValueError("grid admits no CZ pattern")
    return Circuit(n, tuple(gates))


_GENERATORS = {
    "adder": _gen_adder,
    "aqft": _gen_aqft,
    "bv": _gen_bv,
    "hwea": _gen_hwea,
    "supremacy": _gen_supremacy,
}


def generate(spec: GenSpec) -> Circuit:
    """Build the circuit for a GenSpec; deterministic for fixed fields."""
    if spec.family not in _FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}; choose from {_FAMILIES}")
    if spec.seed < 0:
        raise ValueError("seed must be >= 0")
    return _GENERATORS[spec.family](spec)
