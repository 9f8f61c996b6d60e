"""Shared fixtures and independent oracles.

The dense oracle expands every gate to a full 2^n x 2^n matrix by explicit
index bookkeeping (no kernel code involved), so simulator tests compare
two genuinely different routes to the same state.
"""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cutbench.circuit import Circuit, Gate, GateKind, gate_unitary

settings.register_profile(
    "suite", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


def gate_full_matrix(n: int, g: Gate) -> np.ndarray:
    """Full-width matrix of one gate via explicit bit surgery."""
    m = gate_unitary(g.kind, g.params)
    k = len(g.qubits)
    size = 1 << n
    full = np.zeros((size, size), dtype=complex)
    for j in range(size):
        col = 0
        base = j
        for t, q in enumerate(g.qubits):
            col |= ((j >> q) & 1) << t
            base &= ~(1 << q)
        for row in range(1 << k):
            i = base
            for t, q in enumerate(g.qubits):
                if (row >> t) & 1:
                    i |= 1 << q
            full[i, j] = m[row, col]
    return full


def dense_unitary(c: Circuit) -> np.ndarray:
    u = np.eye(1 << c.width, dtype=complex)
    for g in c.gates:
        u = gate_full_matrix(c.width, g) @ u
    return u


def dense_simulate(c: Circuit) -> np.ndarray:
    """Statevector from |0..0> by dense matrix products."""
    v = np.zeros(1 << c.width, dtype=complex)
    v[0] = 1.0
    for g in c.gates:
        v = gate_full_matrix(c.width, g) @ v
    return v


_ONE_QUBIT = [k for k in GateKind if k.arity == 1 and k.num_params == 0]
_TWO_QUBIT = [GateKind.CX, GateKind.CZ, GateKind.SWAP]
_PARAM_1Q = [GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.U1]


def random_circuit(rng: np.random.Generator, n: int, num_gates: int) -> Circuit:
    """Seeded circuit over the full gate set (used widely as test input)."""
    gates = []
    for _ in range(num_gates):
        r = rng.integers(0, 10)
        if r < 4 and n >= 2:
            kind = _TWO_QUBIT[rng.integers(0, len(_TWO_QUBIT))]
            q = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(q[0]), int(q[1]))))
        elif r < 7:
            kind = _ONE_QUBIT[rng.integers(0, len(_ONE_QUBIT))]
            gates.append(Gate(kind, (int(rng.integers(0, n)),)))
        elif r < 9:
            kind = _PARAM_1Q[rng.integers(0, len(_PARAM_1Q))]
            gates.append(
                Gate(kind, (int(rng.integers(0, n)),), (float(rng.uniform(0, 2 * np.pi)),))
            )
        else:
            gates.append(
                Gate(
                    GateKind.U3,
                    (int(rng.integers(0, n)),),
                    tuple(float(x) for x in rng.uniform(0, 2 * np.pi, 3)),
                )
            )
    return Circuit(n, tuple(gates))


def count_transfers_by_replay(transpiled: Circuit, nc: int, num_spaces: int) -> int:
    """Independent transfer count: walk the swap schedule and count the
    chunk pairs whose two sides live in different spaces (2 per pair)."""
    num_chunks = 1 << (transpiled.width - nc)
    cps = num_chunks // num_spaces
    total = 0
    for g in transpiled.gates:
        if max(g.qubits) < nc:
            continue
        assert g.kind is GateKind.SWAP and min(g.qubits) < nc
        b_rel = max(g.qubits) - nc
        for c0 in range(num_chunks):
            if c0 & (1 << b_rel):
                continue
            if c0 // cps != (c0 | (1 << b_rel)) // cps:
                total += 2
    return total


@pytest.fixture
def fig_chain_circuit() -> Circuit:
    """Five-qubit chain whose only width-3 split is one cut on wire 2."""
    from cutbench.circuit import parse_circuit

    return parse_circuit(
        "qubits 5;\n"
        "h q[0];\nh q[1];\nh q[2];\nh q[3];\nh q[4];\n"
        "cz q[0],q[1];\nt q[0];\ncz q[1],q[2];\n"
        "cz q[2],q[3];\nx q[4];\ncz q[3],q[4];\n"
    )
