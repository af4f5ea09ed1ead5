"""Graph-coloring CSP instances as CNF, with certified refutations.

Core surfaces: graph parsing and bipartiteness witnesses (:mod:`.graphs`),
the clause encoding and DIMACS I/O (:mod:`.encoding`), resolution proof
objects with an independent checker (:mod:`.proofs`), the refutation
compiler and decision pipeline (:mod:`.refute`), DPLL and saturation
oracles (:mod:`.solver`), interpolating circuits (:mod:`.interpolate`),
and the pigeonhole benchmark (:mod:`.bench`). An HTTP service wrapping
them lives in :mod:`.service`; the ``homsat`` CLI is a thin client.
"""

__version__ = "0.1.0"

from .bench import BenchRow, bench_php, gen_php, rows_to_csv
from .encoding import (
    CnfInstance,
    RelStructure,
    VarMap,
    encode,
    encode_csp,
    graph_structure,
    parse_dimacs,
    write_dimacs,
)
from .graphs import (
    Bipartition,
    Graph,
    Homomorphism,
    OddClosedWalk,
    check_homomorphism,
    compose,
    find_homomorphism,
    hom_from_bipartition,
    is_bipartite,
    named_graph,
    parse_graph,
    write_graph,
)
from .interpolate import (
    Circuit,
    SplitInstance,
    eval_circuit,
    interpolate,
    parse_circuit,
    parse_split,
    validate_split,
    write_circuit,
    write_split,
)
from .proofs import (
    CheckFailure,
    CheckResult,
    ProofStep,
    ResolutionProof,
    check_refutation,
    is_tree_like,
    parse_trace,
    resolve,
    write_trace,
)
from .refute import (
    Certificate,
    RefutationPlan,
    build_refutation,
    certificate_payload,
    pipeline,
    refute,
    refute_edgeless,
    write_witness,
)
from .solver import SolveStats, decode_model, dpll_solve, saturate

__all__ = [name for name in dir() if not name.startswith("_")]
