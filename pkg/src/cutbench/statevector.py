"""Full statevector simulation.

State layout: amps[i] is the amplitude of basis state |i> with qubit 0 as
the least-significant bit. Gate application is delegated to the kernel
backend (compiled extension when available, numpy fallback otherwise).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .circuit import Circuit, Gate, GateKind, gate_unitary

DEFAULT_MAX_WIDTH = 28


class WidthLimitError(RuntimeError):
    """Raised when a circuit is wider than the simulation cap."""


class Basis(Enum):
    """Measurement basis for a wire; order fixes enumeration order."""

    COMP = "comp"
    X = "x"
    Y = "y"


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))


@functools.lru_cache(maxsize=None)
def _cached_unitary(kind: GateKind, params: tuple[float, ...]) -> np.ndarray:
    return gate_unitary(kind, params)


def apply_gate(amps: np.ndarray, g: Gate) -> None:
    """Apply one gate in place to a full (or chunk-aligned) amplitude array."""
    if g.kind is GateKind.CX:
        kernels.apply_cx(amps, g.qubits[0], g.qubits[1])
    elif g.kind is GateKind.CZ:
        kernels.apply_cz(amps, g.qubits[0], g.qubits[1])
    elif g.kind is GateKind.SWAP:
        kernels.apply_swap(amps, g.qubits[0], g.qubits[1])
    elif g.kind.arity == 1:
        kernels.apply_1q(amps, _cached_unitary(g.kind, g.params), g.qubits[0])
    else:
        kernels.apply_2q(amps, _cached_unitary(g.kind, g.params), g.qubits[0], g.qubits[1])


def simulate(c: Circuit, max_width: int = DEFAULT_MAX_WIDTH) -> StateVector:
    """Run the circuit from |0...0> and return the final state."""
    if c.width > max_width:
        raise WidthLimitError(f"circuit width {c.width} exceeds cap {max_width}")
    amps = np.zeros(1 << c.width, dtype=np.complex128)
    amps[0] = 1.0
    for g in c.gates:
        apply_gate(amps, g)
    sv = StateVector(c.width, amps)
    assert abs(sv.norm() - 1.0) < 1e-10, "norm drifted during simulation"
    return sv


def probabilities(sv: StateVector) -> np.ndarray:
    """Born-rule outcome distribution over all 2^n basis states."""
    return np.abs(sv.amps) ** 2


def apply_basis_rotation(c: Circuit, qubit: int, basis: Basis) -> Circuit:
    """Append the rotation that maps `basis` measurement onto computational
    readout of `qubit`: X appends h, Y appends sdg then h."""
    if not 0 <= qubit < c.width:
        raise ValueError(f"qubit {qubit} out of range for width {c.width}")
    if basis is Basis.COMP:
        return c
    extra = [Gate(GateKind.H, (qubit,))]
    if basis is Basis.Y:
        extra.insert(0, Gate(GateKind.SDG, (qubit,)))
    return Circuit(c.width, c.gates + tuple(extra))
