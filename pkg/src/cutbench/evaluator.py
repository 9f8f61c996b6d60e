"""Fragment variant evaluation and signed shot attribution.

Each upstream cut is measured in one of three bases (computational, X, Y)
and each downstream cut is initialized in one of four states
(|0>, |1>, |+>, |+i>), so a fragment with u upstream and d downstream
cuts has 3^u * 4^d variants. Attribution folds the cut-qubit outcomes of
a raw distribution into the effective-qubit distribution with signs: the
computational run yields both the identity combination (all +) and the Z
combination (sign -1 on outcome 1); X and Y runs yield their signed
combination directly.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .cutting import SubcircuitSpec
from .statevector import Basis, apply_basis_rotation, probabilities, simulate


class InitState(Enum):
    """Downstream preparation states; order fixes enumeration order."""

    ZERO = "zero"
    ONE = "one"
    PLUS = "plus"
    PLUS_I = "plusi"


class PauliLabel(Enum):
    """Which operator combination an attributed distribution carries."""

    I = "i"  # noqa: E741
    Z = "z"
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class VariantAssignment:
    """One choice of measurement bases and init states, aligned with the
    fragment's upstream_cuts / downstream_cuts order."""

    bases: tuple[Basis, ...]
    inits: tuple[InitState, ...]


@dataclass(frozen=True, eq=False)
class AttributedDistribution:
    """Signed distribution over effective-qubit outcomes; bit j of the
    index is the outcome of effective_qubits[j]."""

    labels: tuple[PauliLabel, ...]
    inits: tuple[InitState, ...]
    values: np.ndarray


_PREP_GATES = {
    InitState.ZERO: (),
    InitState.ONE: (GateKind.X,),
    InitState.PLUS: (GateKind.H,),
    InitState.PLUS_I: (GateKind.H, GateKind.S),
}

_LABEL_OPTIONS = {
    Basis.COMP: (PauliLabel.I, PauliLabel.Z),
    Basis.X: (PauliLabel.X,),
    Basis.Y: (PauliLabel.Y,),
}


def enumerate_variants(spec: SubcircuitSpec) -> tuple[VariantAssignment, ...]:
    """All 3^u * 4^d assignments, lexicographic with bases varying slowest
    and Comp < X < Y, |0> < |1> < |+> < |+i>."""
    base_choices = itertools.product(
        (Basis.COMP, Basis.X, Basis.Y), repeat=len(spec.upstream_cuts)
    )
    out = []
    for bs in base_choices:
        for ins in itertools.product(tuple(InitState), repeat=len(spec.downstream_cuts)):
            out.append(VariantAssignment(bs, ins))
    return tuple(out)


def build_variant_circuit(spec: SubcircuitSpec, assignment: VariantAssignment) -> Circuit:
    """Fragment circuit with init preparations prepended and measurement
    basis rotations appended."""
    if len(assignment.bases) != len(spec.upstream_cuts):
        raise ValueError("basis count does not match upstream cuts")
    if len(assignment.inits) != len(spec.downstream_cuts):
        raise ValueError("init count does not match downstream cuts")
    prep = [
        Gate(kind, (q,))
        for q, init in zip(spec.downstream_cut_qubits, assignment.inits)
        for kind in _PREP_GATES[init]
    ]
    c = Circuit(spec.fragment.width, tuple(prep) + spec.fragment.gates)
    for q, basis in zip(spec.upstream_cut_qubits, assignment.bases):
        c = apply_basis_rotation(c, q, basis)
    return c


def _run_variant(job) -> np.ndarray:
    spec, assignment = job
    return probabilities(simulate(build_variant_circuit(spec, assignment)))


def evaluate_all(
    specs, workers: int | None = None
) -> dict[tuple[int, VariantAssignment], np.ndarray]:
    """Simulate every variant of every fragment.

    Returns {(fragment index, assignment): raw probability vector} in
    enumeration order; the result is identical for any worker count.
    """
    jobs = [
        ((fi, a), (spec, a))
        for fi, spec in enumerate(specs)
        for a in enumerate_variants(spec)
    ]
    if workers is None or workers <= 1:
        outs = [_run_variant(job) for _key, job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_run_variant, [job for _key, job in jobs], chunksize=4))
    return {key: out for (key, _job), out in zip(jobs, outs)}


def attribute_shots(
    spec: SubcircuitSpec, assignment: VariantAssignment, raw: np.ndarray
) -> tuple[AttributedDistribution, ...]:
    """Fold the upstream cut qubits out of a raw fragment distribution.

    A Comp-measured cut contributes its identity and Z combinations (so a
    fragment with u Comp cuts yields 2^u attributed vectors from that one
    run); X and Y cuts contribute their own signed combination.
    """
    w = spec.fragment.width
    u = len(spec.upstream_cuts)
    if raw.shape != (1 << w,):
        raise ValueError(f"raw distribution must have length {1 << w}")
    tens = raw.reshape((2,) * w)
    if u:
        src = [w - 1 - q for q in spec.upstream_cut_qubits]
        tens = np.moveaxis(tens, src, range(u))
    plus = np.array([1.0, 1.0])
    minus = np.array([1.0, -1.0])
    outs = []
    for labels in itertools.product(*(_LABEL_OPTIONS[b] for b in assignment.bases)):
        acc = tens
        for lab in labels:
            s = plus if lab is PauliLabel.I else minus
            acc = np.tensordot(s, acc, axes=([0], [0]))
        outs.append(
            AttributedDistribution(
                labels=labels, inits=assignment.inits, values=acc.reshape(-1)
            )
        )
    return tuple(outs)


def attribute_results(specs, results) -> list[dict]:
    """Regroup evaluated variants per fragment, keyed (labels, inits)."""
    out: list[dict] = [{} for _ in specs]
    for (fi, assignment), raw in results.items():
        for ad in attribute_shots(specs[fi], assignment, raw):
            out[fi][(ad.labels, ad.inits)] = ad.values
    return out


def spill_results(path, results) -> None:
    """Write each raw distribution as little-endian float64 binary plus a
    JSON index mapping (fragment, bases, inits) keys to files."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    index = []
    for i, ((fi, a), vec) in enumerate(results.items()):
        fname = f"frag{fi}_v{i:05d}.bin"
        np.asarray(vec, dtype="<f8").tofile(root / fname)
        index.append(
            {
                "fragment": fi,
                "bases": [b.value for b in a.bases],
                "inits": [s.value for s in a.inits],
                "file": fname,
            }
        )
    (root / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True))


def load_results(path) -> dict[tuple[int, VariantAssignment], np.ndarray]:
    """Inverse of spill_results."""
    root = Path(path)
    index = json.loads((root / "index.json").read_text())
    out = {}
    for entry in index:
        a = VariantAssignment(
            bases=tuple(Basis(b) for b in entry["bases"]),
            inits=tuple(InitState(s) for s in entry["inits"]),
        )
        vec = np.fromfile(root / entry["file"], dtype="<f8")
        out[(entry["fragment"], a)] = vec
    return out
