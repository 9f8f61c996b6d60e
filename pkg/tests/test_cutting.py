import json

import numpy as np
import pytest

from cutbench.circuit import DagEdge, Gate, GateKind, dag_edges, parse_circuit
from cutbench.cutting import (
    CutPoint,
    InfeasibleCutError,
    _bridges,
    apply_cuts,
    find_cuts,
    plan_to_json,
)

from conftest import random_circuit


def ghz(n):
    lines = ["qubits %d;" % n, "h q[0];"]
    lines += ["cx q[%d],q[%d];" % (i, i + 1) for i in range(n - 1)]
    return parse_circuit("\n".join(lines))


class TestBridges:
    def test_path_graph_all_bridges(self):
        assert _bridges(4, [(0, 1), (1, 2), (2, 3)]) == [0, 1, 2]

    def test_cycle_has_none(self):
        assert _bridges(3, [(0, 1), (1, 2), (2, 0)]) == []

    def test_parallel_edges_are_not_bridges(self):
        assert _bridges(2, [(0, 1), (0, 1)]) == []

    def test_skip_reopens_bridges(self):
        # removing one parallel edge turns the survivor into a bridge
        assert _bridges(2, [(0, 1), (0, 1)], skip=frozenset({0})) == [1]

    def test_disconnected_components(self):
        assert _bridges(4, [(0, 1), (2, 3)]) == [0, 1]


class TestApplyCuts:
    def test_no_cuts_gives_whole_circuit(self):
        c = ghz(3)
        (spec,) = apply_cuts(c, ())
        assert spec.fragment == c
        assert spec.upstream_cuts == () and spec.downstream_cuts == ()
        assert spec.effective_qubits == (0, 1, 2)
        assert spec.output_map == (0, 1, 2)

    def test_ghz3_single_cut_frozen(self):
        c = ghz(3)
        edges = dag_edges(c)
        up, dn = apply_cuts(c, [CutPoint(1, edges[1])])
        assert up.fragment.gates == (Gate(GateKind.H, (0,)), Gate(GateKind.CX, (0, 1)))
        assert up.upstream_cuts == (0,) and up.upstream_cut_qubits == (1,)
        assert up.effective_qubits == (0,) and up.output_map == (0,)
        # downstream fragment: fresh qubit for the severed wire sits on top
        assert dn.fragment.width == 2
        assert dn.fragment.gates == (Gate(GateKind.CX, (1, 0)),)
        assert dn.downstream_cuts == (0,) and dn.downstream_cut_qubits == (1,)
        assert dn.effective_qubits == (0, 1) and dn.output_map == (2, 1)

    def test_rejects_non_edges_and_duplicates(self):
        c = ghz(3)
        edges = dag_edges(c)
        with pytest.raises(ValueError):
            apply_cuts(c, [CutPoint(0, DagEdge(0, 2, 0))])
        with pytest.raises(ValueError):
            apply_cuts(c, [CutPoint(1, edges[0])])  # wire disagrees with edge
        with pytest.raises(ValueError):
            apply_cuts(c, [CutPoint(0, edges[0]), CutPoint(0, edges[0])])

    def test_non_separating_cut_is_infeasible(self):
        # two wires tied by consecutive gates: severing one wire between
        # them leaves the gates connected through the other wire
        c = parse_circuit("qubits 2;\ncx q[0],q[1];\ncz q[0],q[1];\n")
        edges = dag_edges(c)
        with pytest.raises(InfeasibleCutError):
            apply_cuts(c, [CutPoint(edges[0].wire, edges[0])])

    def test_gateless_wires_pack_onto_narrowest_fragment(self):
        c = parse_circuit("qubits 4;\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\n")
        edges = dag_edges(c)
        small, big = apply_cuts(c, [CutPoint(0, edges[0])])
        assert small.fragment.width == 2
        assert small.output_map == (3,)  # idle wire rides with the narrow piece
        assert big.fragment.width == 3
        assert big.output_map == (1, 2, 0)


def plan_widths(plan):
    return [s.fragment.width for s in plan.subcircuits]


class TestFindCuts:
    def test_zero_cuts_when_circuit_fits(self):
        c = ghz(4)
        plan = find_cuts(c, max_width=4)
        assert plan.num_cuts == 0
        assert plan.objective_cost == 1.0
        assert len(plan.subcircuits) == 1

    def test_chain_example_unique_single_cut(self, fig_chain_circuit):
        plan = find_cuts(fig_chain_circuit, max_width=3)
        assert plan.num_cuts == 1
        assert plan.cuts[0].wire == 2
        assert sorted(plan_widths(plan)) == [3, 3]
        assert sorted(len(s.effective_qubits) for s in plan.subcircuits) == [2, 3]
        assert plan.objective_cost == 4.0

    def test_ghz5_two_and_three_cuts(self):
        c = ghz(5)
        p2 = find_cuts(c, max_width=3, num_cuts=2)
        assert sorted(plan_widths(p2)) == [1, 3, 3]
        p3 = find_cuts(c, max_width=2, num_cuts=3)
        assert plan_widths(p3) == [2, 2, 2, 2]
        assert p3.objective_cost == 64.0

    @pytest.mark.parametrize("seed", range(8))
    def test_width_identity_and_constraints(self, seed):
        rng = np.random.default_rng(900 + seed)
        n = int(rng.integers(4, 9))
        c = random_circuit(rng, n, int(rng.integers(6, 30)))
        mw = int(rng.integers(max(2, n // 2), n + 1))
        try:
            plan = find_cuts(c, max_width=mw, max_cuts=3)
        except InfeasibleCutError:
            return
        widths = plan_widths(plan)
        assert sum(widths) == n + plan.num_cuts
        assert max(widths) <= mw
        assert len(plan.subcircuits) <= 5
        # every original wire is owned by exactly one fragment output
        owned = sorted(w for s in plan.subcircuits for w in s.output_map)
        assert owned == list(range(n))
        # effective qubits = width minus upstream stubs, per fragment
        for s in plan.subcircuits:
            assert len(s.effective_qubits) == s.fragment.width - len(s.upstream_cuts)

    def test_deterministic(self, fig_chain_circuit):
        assert find_cuts(fig_chain_circuit, max_width=3) == find_cuts(
            fig_chain_circuit, max_width=3
        )

    def test_num_cuts_pins_k(self):
        c = ghz(5)
        plan = find_cuts(c, max_width=5, num_cuts=2)
        assert plan.num_cuts == 2

    def test_infeasible_reports(self):
        c = ghz(5)
        with pytest.raises(InfeasibleCutError):
            find_cuts(c, max_width=1, num_cuts=1)
        with pytest.raises(InfeasibleCutError):
            find_cuts(c, max_width=2, num_cuts=1)  # one cut cannot halve 5 wires

    def test_max_subcircuits_respected(self):
        c = ghz(5)
        plan = find_cuts(c, max_width=3, max_cuts=3, max_subcircuits=3)
        assert len(plan.subcircuits) <= 3

    def test_argument_validation(self):
        c = ghz(3)
        with pytest.raises(ValueError):
            find_cuts(c, max_width=0)
        with pytest.raises(ValueError):
            find_cuts(c, max_width=3, max_subcircuits=0)
        with pytest.raises(ValueError):
            find_cuts(c, max_width=3, max_cuts=-1)
        with pytest.raises(ValueError):
            find_cuts(c, max_width=3, max_cuts=2, num_cuts=3)

    def test_cuts_sorted_by_wire_then_position(self):
        plan = find_cuts(ghz(5), max_width=2, num_cuts=3)
        keys = [(cp.wire, cp.edge.from_gate, cp.edge.to_gate) for cp in plan.cuts]
        assert keys == sorted(keys)


class TestPlanJson:
    def test_document_shape(self, fig_chain_circuit):
        plan = find_cuts(fig_chain_circuit, max_width=3)
        doc = json.loads(plan_to_json(plan))
        assert doc["source_width"] == 5
        assert doc["objective_cost"] == 4.0
        assert doc["cuts"] == [{"wire": 2, "from_gate": 7, "to_gate": 8}]
        assert len(doc["subcircuits"]) == 2
        for sub in doc["subcircuits"]:
            assert set(sub) == {
                "circuit",
                "upstream_cuts",
                "upstream_cut_qubits",
                "downstream_cuts",
                "downstream_cut_qubits",
                "effective_qubits",
                "output_map",
            }
            parse_circuit(sub["circuit"])  # embedded text must re-parse
