"""Wire cutting: split a circuit into independently simulable fragments.

A cut severs one dag edge (the stretch of a wire between two consecutive
gates). Cutting splits each wire into segments; gates tie the segments of
their operands together, and the connected components of that relation
become the fragments. The producer-side segment of a cut ends in an
upstream measurement; the consumer side starts on a fresh downstream
qubit.

Fragment qubit numbering: segments that begin a wire keep original
relative order and occupy the low indices; one fresh qubit per downstream
cut is appended at the top, ordered by cut position in the plan.

Wires with no gates at all are unattached to every component; each one is
assigned to the currently narrowest fragment so plans keep the expected
fragment count.

find_cuts searches valid cut sets grouped by size K (cost 4^K), smallest
K first, and breaks ties by smallest maximum fragment width, then by
lexicographically smallest cut list. Candidate sets are composed from
graph bridges, cycle-equivalent edge pairs, and (within a work budget)
non-bridge triples; unions of valid cut sets are valid, so composition
never produces a false candidate, and every candidate is still verified
by the partition step before it competes.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .circuit import Circuit, DagEdge, Gate, dag_edges, serialize_circuit


class InfeasibleCutError(RuntimeError):
    """No cut set satisfies the requested constraints."""


@dataclass(frozen=True)
class CutPoint:
    """One severed dag edge; `wire` duplicates edge.wire for convenience."""

    wire: int
    edge: DagEdge


@dataclass(frozen=True)
class SubcircuitSpec:
    """One fragment plus its bookkeeping.

    upstream_cuts / downstream_cuts hold indices into the plan's cut list;
    the *_cut_qubits tuples give the fragment qubit for each (aligned).
    effective_qubits are the fragment qubits still carrying circuit output
    (ascending), and output_map gives the original wire for each.
    """

    fragment: Circuit
    upstream_cuts: tuple[int, ...]
    upstream_cut_qubits: tuple[int, ...]
    downstream_cuts: tuple[int, ...]
    downstream_cut_qubits: tuple[int, ...]
    effective_qubits: tuple[int, ...]
    output_map: tuple[int, ...]


@dataclass(frozen=True)
class CutPlan:
    source_width: int
    cuts: tuple[CutPoint, ...]
    subcircuits: tuple[SubcircuitSpec, ...]
    objective_cost: float

    @property
    def num_cuts(self) -> int:
        return len(self.cuts)


def plan_to_json(plan: CutPlan) -> str:
    doc = {
        "source_width": plan.source_width,
        "objective_cost": plan.objective_cost,
        "cuts": [
            {"wire": cp.wire, "from_gate": cp.edge.from_gate, "to_gate": cp.edge.to_gate}
            for cp in plan.cuts
        ],
        "subcircuits": [
            {
                "circuit": serialize_circuit(s.fragment),
                "upstream_cuts": list(s.upstream_cuts),
                "upstream_cut_qubits": list(s.upstream_cut_qubits),
                "downstream_cuts": list(s.downstream_cuts),
                "downstream_cut_qubits": list(s.downstream_cut_qubits),
                "effective_qubits": list(s.effective_qubits),
                "output_map": list(s.output_map),
            }
            for s in plan.subcircuits
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _bridges(num_vertices: int, edge_pairs, skip: frozenset = frozenset()) -> list[int]:
    """Bridge edge ids of the multigraph minus `skip` (iterative lowlink;
    parallel edges are handled by tracking the incoming edge id)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(num_vertices)]
    for eid, (u, v) in enumerate(edge_pairs):
        if eid in skip:
            continue
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    disc = [-1] * num_vertices
    low = [0] * num_vertices
    out: list[int] = []
    timer = 0
    for root in range(num_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, in_edge, it = stack[-1]
            child = None
            for w, eid in it:
                if eid == in_edge:
                    continue
                if disc[w] == -1:
                    child = (w, eid)
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if child is not None:
                w, eid = child
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, eid, iter(adj[w])))
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] > disc[u]:
                        out.append(in_edge)
    out.sort()
    return out


@dataclass
class _Partition:
    """Light result of splitting by a cut set; enough to score a plan."""

    num_segments: int
    seg_wire: list[int]
    seg_is_first: list[bool]
    first_seg: list[int]
    last_seg: list[int]
    gate_seg: dict[tuple[int, int], int]
    cut_segs: list[tuple[int, int]]  # per cut: (producer seg, consumer seg)
    frag_of_seg: list[int]
    widths: list[int]
    frag_of_free_wire: dict[int, int]

    @property
    def num_fragments(self) -> int:
        return len(self.widths)


def _partition(c: Circuit, edges: tuple[DagEdge, ...], cut_ids: tuple[int, ...]) -> _Partition:
    """Split wires at the cut edges and group segments into fragments.

    Raises InfeasibleCutError if any cut fails to separate its two sides.
    """
    wire_gates: list[list[int]] = [[] for _ in range(c.width)]
    for gi, g in enumerate(c.gates):
        for w in g.qubits:
            wire_gates[w].append(gi)
    cut_after: dict[int, set[int]] = {}
    for eid in cut_ids:
        e = edges[eid]
        cut_after.setdefault(e.wire, set()).add(e.from_gate)

    seg_wire: list[int] = []
    seg_is_first: list[bool] = []
    first_seg = [0] * c.width
    last_seg = [0] * c.width
    gate_seg: dict[tuple[int, int], int] = {}
    for w in range(c.width):
        cur = len(seg_wire)
        first_seg[w] = cur
        seg_wire.append(w)
        seg_is_first.append(True)
        splits = cut_after.get(w, ())
        for gi in wire_gates[w]:
            gate_seg[(gi, w)] = cur
            if gi in splits:
                cur = len(seg_wire)
                seg_wire.append(w)
                seg_is_first.append(False)
        last_seg[w] = cur

    nseg = len(seg_wire)
    uf = _UnionFind(nseg)
    for gi, g in enumerate(c.gates):
        if len(g.qubits) == 2:
            uf.union(gate_seg[(gi, g.qubits[0])], gate_seg[(gi, g.qubits[1])])

    cut_segs = []
    for eid in cut_ids:
        e = edges[eid]
        s_up = gate_seg[(e.from_gate, e.wire)]
        s_dn = gate_seg[(e.to_gate, e.wire)]
        if uf.find(s_up) == uf.find(s_dn):
            raise InfeasibleCutError(
                f"cut on wire {e.wire} between gates {e.from_gate} and {e.to_gate} does not separate"
            )
        cut_segs.append((s_up, s_dn))

    # Anchored fragments: components holding at least one gate, ordered by
    # their earliest gate.
    root_min_gate: dict[int, int] = {}
    for (gi, _w), s in gate_seg.items():
        r = uf.find(s)
        if gi < root_min_gate.get(r, len(c.gates)):
            root_min_gate[r] = gi
    anchored = sorted(root_min_gate, key=root_min_gate.get)
    frag_of_root = {r: i for i, r in enumerate(anchored)}

    frag_of_seg = [-1] * nseg
    widths = [0] * len(anchored)
    for s in range(nseg):
        r = uf.find(s)
        fi = frag_of_root.get(r)
        if fi is not None:
            frag_of_seg[s] = fi
            widths[fi] += 1

    # Gateless wires are unattached; park each on the narrowest fragment.
    frag_of_free_wire: dict[int, int] = {}
    for w in range(c.width):
        if not wire_gates[w]:
            fi = min(range(len(widths)), key=lambda i: (widths[i], i))
            frag_of_free_wire[w] = fi
            frag_of_seg[first_seg[w]] = fi
            widths[fi] += 1

    return _Partition(
        num_segments=nseg,
        seg_wire=seg_wire,
        seg_is_first=seg_is_first,
        first_seg=first_seg,
        last_seg=last_seg,
        gate_seg=gate_seg,
        cut_segs=cut_segs,
        frag_of_seg=frag_of_seg,
        widths=widths,
        frag_of_free_wire=frag_of_free_wire,
    )


def _whole_circuit_spec(c: Circuit) -> SubcircuitSpec:
    return SubcircuitSpec(
        fragment=c,
        upstream_cuts=(),
        upstream_cut_qubits=(),
        downstream_cuts=(),
        downstream_cut_qubits=(),
        effective_qubits=tuple(range(c.width)),
        output_map=tuple(range(c.width)),
    )


def apply_cuts(c: Circuit, cuts) -> tuple[SubcircuitSpec, ...]:
    """Materialize the fragments for an explicit cut list."""
    cuts = tuple(cuts)
    if not cuts:
        return (_whole_circuit_spec(c),)
    edges = dag_edges(c)
    edge_ids = {e: i for i, e in enumerate(edges)}
    seen = set()
    cut_ids = []
    for cp in cuts:
        if cp.edge not in edge_ids:
            raise ValueError(f"{cp.edge} is not a dag edge of the circuit")
        if cp.wire != cp.edge.wire:
            raise ValueError(f"cut wire {cp.wire} disagrees with edge wire {cp.edge.wire}")
        if cp.edge in seen:
            raise ValueError(f"duplicate cut {cp.edge}")
        seen.add(cp.edge)
        cut_ids.append(edge_ids[cp.edge])
    part = _partition(c, edges, tuple(cut_ids))

    nfrag = part.num_fragments
    # Fragment-local qubit numbers: wire-leading segments by wire order,
    # then fresh (post-cut) segments by cut order.
    frag_qubit = [-1] * part.num_segments
    frag_width = [0] * nfrag
    members: list[list[int]] = [[] for _ in range(nfrag)]
    for s in range(part.num_segments):
        members[part.frag_of_seg[s]].append(s)
    for fi in range(nfrag):
        firsts = sorted(
            (s for s in members[fi] if part.seg_is_first[s]), key=lambda s: part.seg_wire[s]
        )
        for s in firsts:
            frag_qubit[s] = frag_width[fi]
            frag_width[fi] += 1
    for _ci, (_s_up, s_dn) in enumerate(part.cut_segs):
        fi = part.frag_of_seg[s_dn]
        frag_qubit[s_dn] = frag_width[fi]
        frag_width[fi] += 1
    assert frag_width == part.widths

    frag_gates: list[list[Gate]] = [[] for _ in range(nfrag)]
    for gi, g in enumerate(c.gates):
        s0 = part.gate_seg[(gi, g.qubits[0])]
        fi = part.frag_of_seg[s0]
        qubits = tuple(frag_qubit[part.gate_seg[(gi, w)]] for w in g.qubits)
        frag_gates[fi].append(Gate(g.kind, qubits, g.params))

    up_cuts: list[list[int]] = [[] for _ in range(nfrag)]
    up_qubits: list[list[int]] = [[] for _ in range(nfrag)]
    dn_cuts: list[list[int]] = [[] for _ in range(nfrag)]
    dn_qubits: list[list[int]] = [[] for _ in range(nfrag)]
    for ci, (s_up, s_dn) in enumerate(part.cut_segs):
        fu = part.frag_of_seg[s_up]
        up_cuts[fu].append(ci)
        up_qubits[fu].append(frag_qubit[s_up])
        fd = part.frag_of_seg[s_dn]
        dn_cuts[fd].append(ci)
        dn_qubits[fd].append(frag_qubit[s_dn])

    specs = []
    for fi in range(nfrag):
        effective = sorted(
            frag_qubit[part.last_seg[w]]
            for w in range(c.width)
            if part.frag_of_seg[part.last_seg[w]] == fi
        )
        inv = {frag_qubit[part.last_seg[w]]: w for w in range(c.width)
               if part.frag_of_seg[part.last_seg[w]] == fi}
        specs.append(
            SubcircuitSpec(
                fragment=Circuit(frag_width[fi], tuple(frag_gates[fi])),
                upstream_cuts=tuple(up_cuts[fi]),
                upstream_cut_qubits=tuple(up_qubits[fi]),
                downstream_cuts=tuple(dn_cuts[fi]),
                downstream_cut_qubits=tuple(dn_qubits[fi]),
                effective_qubits=tuple(effective),
                output_map=tuple(inv[q] for q in effective),
            )
        )
    return tuple(specs)


# Work caps keeping the candidate search bounded; exploration order is
# deterministic so truncation is too.
_TRIPLE_SCAN_BUDGET = 6_000_000
_MAX_CANDIDATES = 50_000
_MAX_BRIDGE_POOL = 32
_MAX_PAIR_POOL = 256
_MAX_TRIPLE_POOL = 256


class _SearchPre:
    """Per-circuit tables so scoring one candidate cut set is O(gates)."""

    def __init__(self, c: Circuit, edges: tuple[DagEdge, ...]):
        self.width = c.width
        wire_gates: list[list[int]] = [[] for _ in range(c.width)]
        pos: dict[tuple[int, int], int] = {}
        for gi, g in enumerate(c.gates):
            for w in g.qubits:
                pos[(gi, w)] = len(wire_gates[w])
                wire_gates[w].append(gi)
        self.twoq = [
            (g.qubits[0], pos[(gi, g.qubits[0])], g.qubits[1], pos[(gi, g.qubits[1])])
            for gi, g in enumerate(c.gates)
            if len(g.qubits) == 2
        ]
        # edge id -> (wire, position of from_gate on that wire)
        self.edge_cut = [(e.wire, pos[(e.from_gate, e.wire)]) for e in edges]
        self.has_gates = [bool(wg) for wg in wire_gates]
        self.num_free = sum(1 for wg in wire_gates if not wg)


def _check_cuts(pre: _SearchPre, cut_ids: tuple[int, ...]):
    """Validate a cut set and return (max_width, num_fragments), or None
    when some cut fails to separate. Widths match _partition (free wires
    packed onto the narrowest fragment)."""
    k = len(cut_ids)
    cuts_by_wire: dict[int, list[int]] = {}
    for eid in cut_ids:
        w, p = pre.edge_cut[eid]
        cuts_by_wire.setdefault(w, []).append(p)
    for ps in cuts_by_wire.values():
        ps.sort()
    cut_wires = sorted(cuts_by_wire)
    shift = [0] * pre.width
    acc = 0
    ci = 0
    for w in range(pre.width):
        shift[w] = acc
        if ci < len(cut_wires) and cut_wires[ci] == w:
            acc += len(cuts_by_wire[w])
            ci += 1

    def segid(w: int, p: int) -> int:
        base = w + shift[w]
        ps = cuts_by_wire.get(w)
        if not ps:
            return base
        o = 0
        for cp in ps:
            if cp < p:
                o += 1
        return base + o

    nseg = pre.width + k
    parent = list(range(nseg))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w1, p1, w2, p2 in pre.twoq:
        r1, r2 = find(segid(w1, p1)), find(segid(w2, p2))
        if r1 != r2:
            parent[r1] = r2
    for eid in cut_ids:
        w, cp = pre.edge_cut[eid]
        if find(segid(w, cp)) == find(segid(w, cp + 1)):
            return None

    sizes: dict[int, int] = {}
    for w in range(pre.width):
        if not pre.has_gates[w]:
            continue
        base = w + shift[w]
        for s in range(base, base + 1 + len(cuts_by_wire.get(w, ()))):
            r = find(s)
            sizes[r] = sizes.get(r, 0) + 1
    widths = sorted(sizes.values())
    for _ in range(pre.num_free):
        widths[0] += 1
        widths.sort()
    return widths[-1], len(widths)


def _candidate_sets(num_gates: int, edge_pairs: list[tuple[int, int]], k: int):
    """Yield candidate cut sets of size k (tuples of edge ids, sorted).

    Built from three pools of known-valid building blocks: single bridges,
    cycle-equivalent pairs, and non-bridge triples. Any union of valid cut
    sets over distinct edges is valid (separation survives further edge
    removal), so disjoint combinations of blocks are sound; the final
    partition check still validates each candidate independently.
    """
    num_edges = len(edge_pairs)
    bridges = _bridges(num_gates, edge_pairs)
    bridge_set = set(bridges)
    nonbridges = [e for e in range(num_edges) if e not in bridge_set]
    bridge_pool = bridges[:_MAX_BRIDGE_POOL]

    pairs: list[tuple[int, int]] = []
    if k >= 2:
        for e in nonbridges:
            created = _bridges(num_gates, edge_pairs, skip=frozenset((e,)))
            for f in created:
                if f > e and f not in bridge_set:
                    pairs.append((e, f))
        pairs.sort()
        del pairs[_MAX_PAIR_POOL:]

    triples: list[tuple[int, int, int]] = []
    if k >= 3 and len(nonbridges) ** 2 // 2 * num_edges <= _TRIPLE_SCAN_BUDGET:
        found = set()
        for e1, e2 in itertools.combinations(nonbridges, 2):
            created = _bridges(num_gates, edge_pairs, skip=frozenset((e1, e2)))
            for f in created:
                if f > e2 and f not in bridge_set:
                    found.add((e1, e2, f))
        triples = sorted(found)
        del triples[_MAX_TRIPLE_POOL:]

    pools = {1: [(b,) for b in bridge_pool], 2: pairs, 3: triples}
    emitted = set()
    count = 0
    for t in range(k // 3 + 1):
        for p in range((k - 3 * t) // 2 + 1):
            b = k - 3 * t - 2 * p
            for bs in itertools.combinations(pools[1], b):
                for ps in itertools.combinations(pools[2], p):
                    for ts_ in itertools.combinations(pools[3], t):
                        chosen = bs + ps + ts_
                        merged: set[int] = set()
                        ok = True
                        for blk in chosen:
                            if merged.isdisjoint(blk):
                                merged.update(blk)
                            else:
                                ok = False
                                break
                        if not ok:
                            continue
                        cand = tuple(sorted(merged))
                        if cand in emitted:
                            continue
                        emitted.add(cand)
                        yield cand
                        count += 1
                        if count >= _MAX_CANDIDATES:
                            return


def _cut_sort_key(edges: tuple[DagEdge, ...], cand: tuple[int, ...]):
    return tuple(sorted((edges[e].wire, edges[e].from_gate, edges[e].to_gate) for e in cand))


def find_cuts(
    c: Circuit,
    max_width: int,
    max_subcircuits: int = 5,
    max_cuts: int = 10,
    num_cuts: int | None = None,
) -> CutPlan:
    """Search for the cheapest valid cut plan.

    Cost is 4^K, so smaller K always wins; among explored plans of equal K
    the tie-break is smallest maximum fragment width, then smallest cut
    list. `num_cuts` pins K exactly instead of scanning upward from 0.
    """
    if max_width < 1:
        raise ValueError("max_width must be >= 1")
    if max_subcircuits < 1:
        raise ValueError("max_subcircuits must be >= 1")
    if max_cuts < 0:
        raise ValueError("max_cuts must be >= 0")
    if num_cuts is not None and not 0 <= num_cuts <= max_cuts:
        raise ValueError(f"num_cuts must be in [0, {max_cuts}]")

    edges = dag_edges(c)
    edge_pairs = [(e.from_gate, e.to_gate) for e in edges]
    pre = _SearchPre(c, edges)
    ks = [num_cuts] if num_cuts is not None else list(range(max_cuts + 1))
    for k in ks:
        if k == 0:
            if c.width <= max_width:
                return CutPlan(
                    source_width=c.width,
                    cuts=(),
                    subcircuits=(_whole_circuit_spec(c),),
                    objective_cost=1.0,
                )
            continue
        best_key = None
        best_cand = None
        for cand in _candidate_sets(c.num_gates, edge_pairs, k):
            checked = _check_cuts(pre, cand)
            if checked is None:
                continue
            mw, nfrag = checked
            if nfrag > max_subcircuits or mw > max_width:
                continue
            key = (mw, _cut_sort_key(edges, cand))
            if best_key is None or key < best_key:
                best_key, best_cand = key, cand
        if best_cand is not None:
            ordered = sorted(best_cand, key=lambda e: _cut_sort_key(edges, (e,)))
            cuts = tuple(CutPoint(edges[e].wire, edges[e]) for e in ordered)
            return CutPlan(
                source_width=c.width,
                cuts=cuts,
                subcircuits=apply_cuts(c, cuts),
                objective_cost=float(4**k),
            )
    raise InfeasibleCutError(
        f"no cut plan within max_width={max_width}, max_subcircuits={max_subcircuits}, "
        f"max_cuts={max_cuts}" + (f", num_cuts={num_cuts}" if num_cuts is not None else "")
    )
