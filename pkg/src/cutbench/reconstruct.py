"""Kronecker reconstruction of the full distribution from fragment data.

Every cut contributes one of four term indices; a term assigns each
fragment a vector built from its attributed distributions:

    upstream side          downstream side
    1: I-comb + Z-comb     p(|0>)
    2: I-comb - Z-comb     p(|1>)
    3: X combination       2 p(|+>)  - p(|0>) - p(|1>)
    4: Y combination       2 p(|+i>) - p(|0>) - p(|1>)

The full distribution is (1/2^K) * sum over all 4^K index tuples of the
Kronecker product of the fragment term vectors (fragment 0 in the low
bits), permuted back to original wire order at the very end. Negative
intermediate entries are legitimate and are never clamped.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cutting import CutPlan, SubcircuitSpec
from .evaluator import InitState, PauliLabel

_UPSTREAM_TERMS: dict[int, tuple[tuple[PauliLabel, float], ...]] = {
    1: ((PauliLabel.I, 1.0), (PauliLabel.Z, 1.0)),
    2: ((PauliLabel.I, 1.0), (PauliLabel.Z, -1.0)),
    3: ((PauliLabel.X, 1.0),),
    4: ((PauliLabel.Y, 1.0),),
}

_DOWNSTREAM_TERMS: dict[int, tuple[tuple[InitState, float], ...]] = {
    1: ((InitState.ZERO, 1.0),),
    2: ((InitState.ONE, 1.0),),
    3: ((InitState.PLUS, 2.0), (InitState.ZERO, -1.0), (InitState.ONE, -1.0)),
    4: ((InitState.PLUS_I, 2.0), (InitState.ZERO, -1.0), (InitState.ONE, -1.0)),
}


@dataclass(frozen=True, eq=False)
class FragmentTermVector:
    """One fragment's contribution for one restriction of term indices."""

    upstream_terms: tuple[int, ...]
    downstream_terms: tuple[int, ...]
    values: np.ndarray


def fragment_term(
    spec: SubcircuitSpec,
    upstream_terms: tuple[int, ...],
    downstream_terms: tuple[int, ...],
    attributed: dict,
) -> FragmentTermVector:
    """Combine attributed distributions for one term-index restriction.

    `upstream_terms` / `downstream_terms` give the 1..4 index per cut,
    aligned with spec.upstream_cuts / spec.downstream_cuts. `attributed`
    maps (labels, inits) to vectors as built by attribute_results.
    """
    if len(upstream_terms) != len(spec.upstream_cuts):
        raise ValueError("upstream term count does not match spec")
    if len(downstream_terms) != len(spec.downstream_cuts):
        raise ValueError("downstream term count does not match spec")
    acc = np.zeros(1 << len(spec.effective_qubits))
    up_choices = [_UPSTREAM_TERMS[i] for i in upstream_terms]
    dn_choices = [_DOWNSTREAM_TERMS[i] for i in downstream_terms]
    for ups in itertools.product(*up_choices):
        for dns in itertools.product(*dn_choices):
            labels = tuple(lab for lab, _ in ups)
            inits = tuple(st for st, _ in dns)
            coeff = 1.0
            for _, w in ups:
                coeff *= w
            for _, w in dns:
                coeff *= w
            acc += coeff * attributed[(labels, inits)]
    return FragmentTermVector(upstream_terms, downstream_terms, acc)


def reconstruct(plan: CutPlan, attributed: list[dict]) -> np.ndarray:
    """Full-circuit distribution over the original wire order."""
    k = plan.num_cuts
    n = plan.source_width
    order = [w for spec in plan.subcircuits for w in spec.output_map]
    assert sorted(order) == list(range(n)), "output maps must cover every wire once"

    acc = np.zeros(1 << n)
    memo: dict = {}
    for t in itertools.product((1, 2, 3, 4), repeat=k):
        joint = None
        for fi, spec in enumerate(plan.subcircuits):
            ups = tuple(t[ci] for ci in spec.upstream_cuts)
            dns = tuple(t[ci] for ci in spec.downstream_cuts)
            key = (fi, ups, dns)
            if key not in memo:
                memo[key] = fragment_term(spec, ups, dns, attributed[fi]).values
            vec = memo[key]
            joint = vec if joint is None else np.kron(vec, joint)
        acc += joint
    acc /= float(1 << k)

    idx = np.arange(1 << n)
    sigma = np.zeros(1 << n, dtype=np.intp)
    for jb, orig in enumerate(order):
        sigma |= ((idx >> jb) & 1) << orig
    out = np.zeros(1 << n)
    out[sigma] = acc
    return out


def total_variation_distance(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())
