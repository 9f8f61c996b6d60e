"""Wire-cutting and cache-blocked statevector simulation toolkit."""

from .blocking import (
    ChunkLayout,
    ExchangeLog,
    InfeasibleBlockingError,
    blocking_transpile,
    chunked_simulate,
    estimate_memory_gb,
    table_memory_gb,
)
from .circuit import (
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
from .cutting import (
    CutPlan,
    CutPoint,
    InfeasibleCutError,
    SubcircuitSpec,
    apply_cuts,
    find_cuts,
    plan_to_json,
)
from .evaluator import (
    AttributedDistribution,
    InitState,
    PauliLabel,
    VariantAssignment,
    attribute_results,
    attribute_shots,
    build_variant_circuit,
    enumerate_variants,
    evaluate_all,
    load_results,
    spill_results,
)
from .generators import GenSpec, generate
from .reconstruct import (
    FragmentTermVector,
    fragment_term,
    reconstruct,
    total_variation_distance,
)
from .statevector import (
    DEFAULT_MAX_WIDTH,
    Basis,
    StateVector,
    WidthLimitError,
    apply_basis_rotation,
    probabilities,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "AttributedDistribution",
    "Basis",
    "ChunkLayout",
    "Circuit",
    "CutPlan",
    "CutPoint",
    "DEFAULT_MAX_WIDTH",
    "DagEdge",
    "ExchangeLog",
    "FragmentTermVector",
    "Gate",
    "GateKind",
    "GenSpec",
    "InfeasibleBlockingError",
    "InfeasibleCutError",
    "InitState",
    "ParseError",
    "PauliLabel",
    "StateVector",
    "SubcircuitSpec",
    "VariantAssignment",
    "WidthLimitError",
    "apply_basis_rotation",
    "apply_cuts",
    "attribute_results",
    "attribute_shots",
    "blocking_transpile",
    "build_variant_circuit",
    "chunked_simulate",
    "dag_edges",
    "enumerate_variants",
    "estimate_memory_gb",
    "evaluate_all",
    "find_cuts",
    "fragment_term",
    "gate_unitary",
    "generate",
    "load_results",
    "parse_circuit",
    "plan_to_json",
    "probabilities",
    "reconstruct",
    "serialize_circuit",
    "simulate",
    "spill_results",
    "table_memory_gb",
    "total_variation_distance",
]
