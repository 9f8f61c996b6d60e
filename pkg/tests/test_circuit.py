import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutbench.circuit import (
    Circuit,
    DagEdge,
    Gate,
    GateKind,
    ParseError,
    dag_edges,
    gate_unitary,
    parse_circuit,
    serialize_circuit,
)

S2 = 1.0 / math.sqrt(2.0)


class TestGateUnitary:
    def test_fixed_single_qubit_matrices(self):
        expect = {
            GateKind.X: [[0, 1], [1, 0]],
            GateKind.Y: [[0, -1j], [1j, 0]],
            GateKind.Z: [[1, 0], [0, -1]],
            GateKind.H: [[S2, S2], [S2, -S2]],
            GateKind.S: [[1, 0], [0, 1j]],
            GateKind.SDG: [[1, 0], [0, -1j]],
            GateKind.T: [[1, 0], [0, np.exp(1j * math.pi / 4)]],
            GateKind.TDG: [[1, 0], [0, np.exp(-1j * math.pi / 4)]],
        }
        for kind, mat in expect.items():
            np.testing.assert_allclose(gate_unitary(kind), np.array(mat), atol=1e-15)

    def test_fixed_two_qubit_matrices(self):
        # First operand is the low index bit: CX flips its second operand
        # when the first is 1, i.e. columns 1 and 3 route to rows 3 and 1.
        cx = np.zeros((4, 4))
        cx[0, 0] = cx[2, 2] = cx[3, 1] = cx[1, 3] = 1
        np.testing.assert_allclose(gate_unitary(GateKind.CX), cx, atol=1e-15)
        np.testing.assert_allclose(gate_unitary(GateKind.CZ), np.diag([1, 1, 1, -1.0]), atol=1e-15)
        sw = np.zeros((4, 4))
        sw[0, 0] = sw[3, 3] = sw[1, 2] = sw[2, 1] = 1
        np.testing.assert_allclose(gate_unitary(GateKind.SWAP), sw, atol=1e-15)

    def test_rotations_at_reference_angles(self):
        th = 0.7
        c, s = math.cos(th / 2), math.sin(th / 2)
        np.testing.assert_allclose(
            gate_unitary(GateKind.RX, (th,)), [[c, -1j * s], [-1j * s, c]], atol=1e-15
        )
        np.testing.assert_allclose(
            gate_unitary(GateKind.RY, (th,)), [[c, -s], [s, c]], atol=1e-15
        )
        np.testing.assert_allclose(
            gate_unitary(GateKind.RZ, (th,)),
            np.diag([np.exp(-0.5j * th), np.exp(0.5j * th)]),
            atol=1e-15,
        )
        np.testing.assert_allclose(
            gate_unitary(GateKind.U1, (th,)), np.diag([1, np.exp(1j * th)]), atol=1e-15
        )

    def test_u3_against_component_rotations(self):
        th, ph, lam = 0.9, 0.4, 1.3
        # u3 = e^{i(ph+lam)/2} rz(ph) ry(th) rz(lam), checked numerically
        u = gate_unitary(GateKind.U3, (th, ph, lam))
        rz1 = gate_unitary(GateKind.RZ, (ph,))
        ry = gate_unitary(GateKind.RY, (th,))
        rz2 = gate_unitary(GateKind.RZ, (lam,))
        np.testing.assert_allclose(
            u, np.exp(0.5j * (ph + lam)) * (rz1 @ ry @ rz2), atol=1e-12
        )

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_everything_is_unitary(self, kind):
        params = tuple(0.3 * (i + 1) for i in range(kind.num_params))
        m = gate_unitary(kind, params)
        dim = 2 ** kind.arity
        assert m.shape == (dim, dim)
        np.testing.assert_allclose(m @ m.conj().T, np.eye(dim), atol=1e-12)

    def test_unitary_returns_fresh_copy(self):
        a = gate_unitary(GateKind.H)
        a[0, 0] = 99.0
        np.testing.assert_allclose(gate_unitary(GateKind.H)[0, 0], S2)

    def test_param_count_mismatch(self):
        with pytest.raises(ValueError):
            gate_unitary(GateKind.RX, ())
        with pytest.raises(ValueError):
            gate_unitary(GateKind.H, (0.1,))


class TestGateValidation:
    def test_wrong_arity(self):
        with pytest.raises(ValueError):
            Gate(GateKind.CX, (0,))
        with pytest.raises(ValueError):
            Gate(GateKind.H, (0, 1))

    def test_duplicate_operands(self):
        with pytest.raises(ValueError):
            Gate(GateKind.CX, (2, 2))

    def test_wrong_param_count(self):
        with pytest.raises(ValueError):
            Gate(GateKind.RX, (0,))
        with pytest.raises(ValueError):
            Gate(GateKind.X, (0,), (1.0,))

    def test_negative_qubit(self):
        with pytest.raises(ValueError):
            Gate(GateKind.H, (-1,))

    def test_lists_coerced_to_tuples(self):
        g = Gate(GateKind.RZ, [1], [0.5])
        assert g.qubits == (1,) and g.params == (0.5,)


class TestCircuitValidation:
    def test_width_bounds(self):
        with pytest.raises(ValueError):
            Circuit(0, ())

    def test_gate_outside_register(self):
        with pytest.raises(ValueError):
            Circuit(2, (Gate(GateKind.H, (2,)),))


class TestParser:
    def test_minimal(self):
        c = parse_circuit("qubits 1;\nh q[0];\n")
        assert c.width == 1
        assert c.gates == (Gate(GateKind.H, (0,)),)

    def test_params_and_two_qubit(self):
        c = parse_circuit("qubits 3;\nrz(0.5) q[1];\ncx q[2],q[0];\nu3(1.0,2.0,3.0) q[2];\n")
        assert c.gates[0] == Gate(GateKind.RZ, (1,), (0.5,))
        assert c.gates[1] == Gate(GateKind.CX, (2, 0))
        assert c.gates[2] == Gate(GateKind.U3, (2,), (1.0, 2.0, 3.0))

    def test_comments_and_whitespace(self):
        c = parse_circuit("// leading note\nqubits 2;  // width\n\n  x q[1];//tail\n")
        assert c.gates == (Gate(GateKind.X, (1,)),)

    def test_scientific_and_negative_params(self):
        c = parse_circuit("qubits 1;\nrx(-2.5e-3) q[0];\n")
        assert c.gates[0].params == (-2.5e-3,)

    def test_empty_circuit(self):
        assert parse_circuit("qubits 4;").gates == ()

    @pytest.mark.parametrize(
        "text,frag",
        [
            ("qubits 0;\n", "qubit count"),
            ("h q[0];\n", "qubits"),
            ("qubits 2;\nfrob q[0];\n", "unknown gate"),
            ("qubits 2;\nh q[5];\n", "out of range"),
            ("qubits 2;\nh q[0]\nx q[1];\n", "expected"),
            ("qubits 2;\ncx q[1],q[1];\n", "duplicate"),
            ("qubits 2;\nrx q[0];\n", "parameter"),
            ("qubits 2;\nh(0.1) q[0];\n", "parameter"),
            ("qubits 2;\nqubits 2;\n", "unknown gate"),
        ],
    )
    def test_rejects_with_message(self, text, frag):
        with pytest.raises(ParseError) as exc:
            parse_circuit(text)
        assert frag in str(exc.value).lower()

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse_circuit("qubits 2;\nh q[0];\nbogus q[1];\n")
        assert exc.value.line == 3
        assert exc.value.col >= 1

    def test_serialize_round_trip_examples(self):
        text = "qubits 3;\nh q[0];\nrz(0.125) q[1];\ncx q[0],q[2];\n"
        c = parse_circuit(text)
        assert parse_circuit(serialize_circuit(c)) == c

    def test_serialize_keeps_full_float_precision(self):
        c = Circuit(1, (Gate(GateKind.RX, (0,), (1.0 / 3.0,)),))
        again = parse_circuit(serialize_circuit(c))
        assert again.gates[0].params[0] == 1.0 / 3.0


@st.composite
def circuits(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    kinds = [k for k in GateKind if k.arity == 1 or n >= 2]
    num = draw(st.integers(min_value=0, max_value=12))
    gates = []
    for _ in range(num):
        kind = draw(st.sampled_from(kinds))
        if kind.arity == 1:
            qs = (draw(st.integers(0, n - 1)),)
        else:
            a = draw(st.integers(0, n - 1))
            b = draw(st.integers(0, n - 2))
            qs = (a, b if b < a else b + 1)
        params = tuple(
            draw(st.floats(-10, 10, allow_nan=False, allow_infinity=False))
            for _ in range(kind.num_params)
        )
        gates.append(Gate(kind, qs, params))
    return Circuit(n, tuple(gates))


@given(circuits())
def test_parse_serialize_round_trip(c):
    assert parse_circuit(serialize_circuit(c)) == c


class TestDagEdges:
    def test_chain_example(self):
        c = parse_circuit("qubits 3;\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\nh q[1];\n")
        assert dag_edges(c) == (
            DagEdge(0, 1, 0),
            DagEdge(1, 2, 1),
            DagEdge(2, 3, 1),
        )

    def test_parallel_edges_kept_separately(self):
        c = parse_circuit("qubits 2;\ncx q[0],q[1];\ncz q[0],q[1];\n")
        assert dag_edges(c) == (DagEdge(0, 1, 0), DagEdge(0, 1, 1))

    def test_no_edges_without_shared_wires(self):
        c = parse_circuit("qubits 2;\nh q[0];\nh q[1];\n")
        assert dag_edges(c) == ()

    @given(circuits())
    def test_edge_count_matches_wire_runs(self, c):
        # Each wire with g gates contributes exactly g-1 edges.
        per_wire = [0] * c.width
        for g in c.gates:
            for q in g.qubits:
                per_wire[q] += 1
        expected = sum(max(0, k - 1) for k in per_wire)
        assert len(dag_edges(c)) == expected
