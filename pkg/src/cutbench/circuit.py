"""Circuit intermediate representation.

Contains:
    - GateKind: enum of the supported gate set (16 primitives)
    - Gate: one gate application (kind, qubits, params)
    - Circuit: immutable ordered gate list over a fixed number of wires
    - DagEdge: consecutive-gate adjacency along one wire
    - parse_circuit / serialize_circuit: the on-disk text format
    - gate_unitary: 2x2 / 4x4 matrix for a gate

Conventions (fixed once, used everywhere):
    - qubit 0 is the least-significant bit of a basis-state index
    - for two-qubit unitaries the first operand is the least-significant
      bit of the 4x4 matrix index
    - rz(t) = diag(e^{-it/2}, e^{+it/2}); u1(l) = diag(1, e^{il});
      u3 is the usual (theta, phi, lambda) Euler form
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class GateKind(Enum):
    """Supported gates; the enum value is the text-format mnemonic."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    U1 = "u1"
    U3 = "u3"
    CX = "cx"
    CZ = "cz"
    SWAP = "swap"

    @property
    def arity(self) -> int:
        return 2 if self in (GateKind.CX, GateKind.CZ, GateKind.SWAP) else 1

    @property
    def num_params(self) -> int:
        if self in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.U1):
            return 1
        if self is GateKind.U3:
            return 3
        return 0


@dataclass(frozen=True)
class Gate:
    """One gate application: kind, operand qubits, bound parameters."""

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(self.qubits) != self.kind.arity:
            raise ValueError(f"{self.kind.value} takes {self.kind.arity} qubit(s), got {len(self.qubits)}")
        if len(self.params) != self.kind.num_params:
            raise ValueError(f"{self.kind.value} takes {self.kind.num_params} parameter(s), got {len(self.params)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit operands in {self.kind.value}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.kind.value}")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence over `width` wires. Immutable after construction."""

    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise ValueError("circuit width must be >= 1")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.width:
                    raise ValueError(f"qubit index {q} out of range for width {self.width}")

    @property
    def num_gates(self) -> int:
        return len(self.gates)

    def touched_qubits(self) -> tuple[int, ...]:
        return tuple(sorted({q for g in self.gates for q in g.qubits}))


@dataclass(frozen=True)
class DagEdge:
    """Adjacency of two consecutive gates on one wire (from_gate earlier)."""

    from_gate: int
    to_gate: int
    wire: int


class ParseError(ValueError):
    """Syntax or semantic error in circuit text, with source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_NAME_TO_KIND = {k.value: k for k in GateKind}


def _tokenize(text: str):
    """Yield (token, line, col); tokens are words, numbers, and punctuation."""
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield text[i:j], start_line, start_col
            col += j - i
            i = j
            continue
        if c.isdigit() or (c in "+-." and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == ".")):
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] in ".eE" or (text[j] in "+-" and text[j - 1] in "eE")):
                j += 1
            yield text[i:j], start_line, start_col
            col += j - i
            i = j
            continue
        yield c, start_line, start_col
        i += 1
        col += 1


class _TokenStream:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, what: str = "token"):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else ("", 1, 1)
            raise ParseError(f"unexpected end of input, expected {what}", last[1], last[2])
        self.pos += 1
        return tok

    def expect(self, literal: str):
        tok, line, col = self.next(repr(literal))
        if tok != literal:
            raise ParseError(f"expected {literal!r}, got {tok!r}", line, col)
        return tok, line, col


def _parse_qubit_ref(ts: _TokenStream, width: int) -> int:
    tok, line, col = ts.next("qubit reference")
    if tok != "q":
        raise ParseError(f"expected qubit reference 'q[i]', got {tok!r}", line, col)
    ts.expect("[")
    num, nline, ncol = ts.next("qubit index")
    if not num.isdigit():
        raise ParseError(f"expected qubit index, got {num!r}", nline, ncol)
    idx = int(num)
    ts.expect("]")
    if idx >= width:
        raise ParseError(f"qubit index {idx} out of range for width {width}", nline, ncol)
    return idx


def _parse_number(tok: str, line: int, col: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", line, col) from None


def parse_circuit(text: str) -> Circuit:
    """Parse the text format: a `qubits N;` header followed by gate statements."""
    ts = _TokenStream(text)
    tok, line, col = ts.next("'qubits' header")
    if tok != "qubits":
        raise ParseError(f"expected 'qubits' header, got {tok!r}", line, col)
    num, nline, ncol = ts.next("qubit count")
    if not num.isdigit() or int(num) < 1:
        raise ParseError(f"expected positive qubit count, got {num!r}", nline, ncol)
    width = int(num)
    ts.expect(";")

    gates = []
    while ts.peek() is not None:
        name, gline, gcol = ts.next("gate name")
        kind = _NAME_TO_KIND.get(name)
        if kind is None:
            raise ParseError(f"unknown gate name {name!r}", gline, gcol)
        params: list[float] = []
        if ts.peek() and ts.peek()[0] == "(":
            ts.next()
            while True:
                ptok, pline, pcol = ts.next("parameter")
                params.append(_parse_number(ptok, pline, pcol))
                sep, sline, scol = ts.next("',' or ')'")
                if sep == ")":
                    break
                if sep != ",":
                    raise ParseError(f"expected ',' or ')', got {sep!r}", sline, scol)
        if len(params) != kind.num_params:
            raise ParseError(
                f"{name} takes {kind.num_params} parameter(s), got {len(params)}", gline, gcol
            )
        qubits = [_parse_qubit_ref(ts, width)]
        if kind.arity == 2:
            ts.expect(",")
            qubits.append(_parse_qubit_ref(ts, width))
        ts.expect(";")
        if len(set(qubits)) != len(qubits):
            raise ParseError(f"duplicate qubit operands in {name}", gline, gcol)
        gates.append(Gate(kind, tuple(qubits), tuple(params)))
    return Circuit(width, tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    """Inverse of parse_circuit; parameters keep full double precision."""
    lines = [f"qubits {c.width};"]
    for g in c.gates:
        name = g.kind.value
        if g.params:
            name += "(" + ",".join(repr(p) for p in g.params) + ")"
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{name} {operands};")
    return "\n".join(lines) + "\n"


def dag_edges(c: Circuit) -> tuple[DagEdge, ...]:
    """One edge per consecutive gate pair per wire, ordered by later gate."""
    last: dict[int, int] = {}
    edges = []
    for i, g in enumerate(c.gates):
        for w in g.qubits:
            if w in last:
                edges.append(DagEdge(last[w], i, w))
            last[w] = i
    return tuple(edges)


_SQ2 = 1.0 / math.sqrt(2.0)

_FIXED_1Q = {
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, cmath.exp(0.25j * math.pi)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, cmath.exp(-0.25j * math.pi)]], dtype=complex),
}

# 4x4 basis order: index = bit(first operand) + 2 * bit(second operand)
_FIXED_2Q = {
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def gate_unitary(kind: GateKind, params: tuple[float, ...] = ()) -> np.ndarray:
    """Unitary matrix of one gate; 2x2 for arity 1, 4x4 for arity 2.

    For two-qubit gates the first operand is the least-significant bit of
    the matrix index (so cx = control-first).
    """
    if len(params) != kind.num_params:
        raise ValueError(f"{kind.value} takes {kind.num_params} parameter(s), got {len(params)}")
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind].copy()
    if kind in _FIXED_2Q:
        return _FIXED_2Q[kind].copy()
    if kind is GateKind.RX:
        (t,) = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        (t,) = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        (t,) = params
        return np.array([[cmath.exp(-0.5j * t), 0], [0, cmath.exp(0.5j * t)]], dtype=complex)
    if kind is GateKind.U1:
        (lam,) = params
        return np.array([[1, 0], [0, cmath.exp(1j * lam)]], dtype=complex)
    if kind is GateKind.U3:
        t, phi, lam = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array(
            [
                [c, -cmath.exp(1j * lam) * s],
                [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
            ],
            dtype=complex,
        )
    raise ValueError(f"no unitary for {kind}")
