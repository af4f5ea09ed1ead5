"""Explicit resolution refutations for uncolorable instances.

Given an odd closed walk in the source graph and a two-sided split of the
color graph, the instance clauses force the color's side to alternate along
the walk; after an odd number of steps the start vertex would need both
sides at once. The builder turns that argument into clauses:

* transfer clauses, one per walk position and color: "if position i has
  color u then position i+1 has some color on the other side",
* chain clauses that push the alternation from position 0 outward,
* one unit clause per color ("position 0 does not have color u"),
* the empty clause, by resolving the units against position 0's
  at-least-one clause.

Transfer clauses are derived once and shared, so proofs are dag-like.
A supplied walk may repeat vertices; it is first shortened to a simple
odd cycle (any odd closed walk contains one), which keeps every chain
clause free of its own start literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .encoding import Clause, VarMap, canon_clause
from .errors import InvalidWitness, PreconditionViolated, TargetNotBipartite
from .graphs import (
    Bipartition,
    Graph,
    Homomorphism,
    OddClosedWalk,
    check_homomorphism,
    compose,
    hom_from_bipartition,
    is_bipartite,
)
from .proofs import ProofStep, ResolutionProof, resolve, write_trace


@dataclass(frozen=True)
class RefutationPlan:
    """A refutation plus the ledger of its named intermediate steps.

    ``walk`` is the simple odd cycle actually used in the derivation.
    ``transfer_ids[(i, u)]`` is the step carrying the transfer clause for
    walk position i and color u; ``chain_ids[(j, u)]`` the chain clause
    after stage j; ``unit_ids[u]`` the per-color unit.
    """

    walk: OddClosedWalk
    partition: Bipartition
    varmap: VarMap
    transfer_ids: Mapping[tuple[int, int], int]
    chain_ids: Mapping[tuple[int, int], int]
    unit_ids: Mapping[int, int]
    empty_id: int
    proof: ResolutionProof


class _ProofBuilder:
    """Appends steps, reusing the existing id when a clause reappears."""

    def __init__(self):
        self.steps: list[ProofStep] = []
        self._ids: dict[Clause, int] = {}

    def input_step(self, clause: Clause) -> int:
        sid = self._ids.get(clause)
        if sid is None:
            sid = len(self.steps) + 1
            self.steps.append(ProofStep(sid, clause))
            self._ids[clause] = sid
        return sid

    def resolve_step(self, a: int, b: int, pivot: int) -> int:
        clause = resolve(self.clause_of(a), self.clause_of(b), pivot)
        sid = self._ids.get(clause)
        if sid is None:
            sid = len(self.steps) + 1
            self.steps.append(ProofStep(sid, clause, (a, b), pivot))
            self._ids[clause] = sid
        return sid

    def clause_of(self, sid: int) -> Clause:
        return self.steps[sid - 1].clause

    def proof(self) -> ResolutionProof:
        return ResolutionProof(tuple(self.steps))


def reduce_to_odd_cycle(verts: tuple[int, ...]) -> tuple[int, ...]:
    """Shorten a closed odd walk to a simple odd cycle.

    Splitting a closed walk at a repeated vertex yields two closed walks
    whose lengths sum to an odd number, so one of them is odd; iterating
    reaches a repeat-free odd cycle of length >= 3.
    """
    current = list(verts)
    while True:
        first_seen: dict[int, int] = {}
        repeat = None
        for j, v in enumerate(current):
            if v in first_seen:
                repeat = (first_seen[v], j)
                break
            first_seen[v] = j
        if repeat is None:
            return tuple(current)
        i, j = repeat
        inner = current[i:j]
        outer = current[:i] + current[j:]
        current = inner if len(inner) % 2 == 1 else outer


def build_refutation(
    g: Graph, h: Graph, walk: OddClosedWalk, partition: Bipartition
) -> RefutationPlan:
    """Derive a checkable refutation of encode(g, h); see the module docstring."""
    if not walk.is_valid_for(g):
        raise InvalidWitness("walk is not a valid odd closed walk in the source graph")
    if not partition.is_valid_for(h):
        raise InvalidWitness("partition is not a valid bipartition of the target graph")
    cyc = reduce_to_odd_cycle(walk.verts)
    k, m = len(cyc), h.n
    vm = VarMap(g.n, h.n)
    sides = (
        [w for w in range(m) if partition.side[w] == 0],
        [w for w in range(m) if partition.side[w] == 1],
    )

    def same_side(u: int) -> list[int]:
        return sides[partition.side[u]]

    def alo(v: int) -> Clause:
        return canon_clause(vm.index(v, u) for u in range(m))

    def conflict(v1: int, u1: int, v2: int, u2: int) -> Clause:
        return canon_clause((-vm.index(v1, u1), -vm.index(v2, u2)))

    builder = _ProofBuilder()

    transfer_ids: dict[tuple[int, int], int] = {}
    for i in range(k - 1):
        ci, cn = cyc[i], cyc[i + 1]
        for u in range(m):
            cur = builder.input_step(alo(cn))
            for w in same_side(u):
                step = builder.input_step(conflict(ci, u, cn, w))
                cur = builder.resolve_step(cur, step, vm.index(cn, w))
            transfer_ids[(i, u)] = cur

    chain_ids: dict[tuple[int, int], int] = {}
    unit_ids: dict[int, int] = {}
    for u in range(m):
        cur = transfer_ids[(0, u)]
        for j in range(1, k - 1):
            stage = sides[1 - partition.side[u]] if j % 2 == 1 else same_side(u)
            for w in stage:
                pos_lit = vm.index(cyc[j], w)
                if pos_lit not in builder.clause_of(cur):
                    continue  # the alternating side died out earlier (edgeless-side targets)
                cur = builder.resolve_step(cur, transfer_ids[(j, w)], pos_lit)
            chain_ids[(j, u)] = cur
        for w in same_side(u):
            pos_lit = vm.index(cyc[k - 1], w)
            if pos_lit not in builder.clause_of(cur):
                continue
            step = builder.input_step(conflict(cyc[0], u, cyc[k - 1], w))
            cur = builder.resolve_step(cur, step, pos_lit)
        assert builder.clause_of(cur) == canon_clause((-vm.index(cyc[0], u),))
        unit_ids[u] = cur

    cur = builder.input_step(alo(cyc[0]))
    for u in range(m):
        cur = builder.resolve_step(cur, unit_ids[u], vm.index(cyc[0], u))
    assert builder.clause_of(cur) == ()

    return RefutationPlan(
        walk=OddClosedWalk(cyc),
        partition=partition,
        varmap=vm,
        transfer_ids=transfer_ids,
        chain_ids=chain_ids,
        unit_ids=unit_ids,
        empty_id=cur,
        proof=builder.proof(),
    )


def refute(
    g: Graph, h: Graph, walk: OddClosedWalk, partition: Bipartition
) -> ResolutionProof:
    """Refutation of encode(g, h) from the two witnesses."""
    return build_refutation(g, h, walk, partition).proof


def refute_edgeless(g: Graph, h: Graph, edge: tuple[int, int]) -> ResolutionProof:
    """Refutation for an edgeless color graph and any single source edge.

    Every color pair conflicts across the edge, so each color is ruled out
    for one endpoint and the endpoint's at-least-one clause closes.
    """
    if h.edges:
        raise PreconditionViolated("the target graph must have no edges")
    v1, v2 = edge
    if not g.has_edge(v1, v2):
        raise PreconditionViolated(f"({v1}, {v2}) is not an edge of the source graph")
    vm = VarMap(g.n, h.n)
    m = h.n
    builder = _ProofBuilder()

    def alo(v: int) -> Clause:
        return canon_clause(vm.index(v, u) for u in range(m))

    unit_ids = []
    for u1 in range(m):
        cur = builder.input_step(alo(v2))
        for u2 in range(m):
            clause = canon_clause((-vm.index(v1, u1), -vm.index(v2, u2)))
            cur = builder.resolve_step(cur, builder.input_step(clause), vm.index(v2, u2))
        unit_ids.append(cur)
    cur = builder.input_step(alo(v1))
    for u1 in range(m):
        cur = builder.resolve_step(cur, unit_ids[u1], vm.index(v1, u1))
    assert builder.clause_of(cur) == ()
    return builder.proof()


# -- end-to-end decision with certificates --------------------------------

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable outcome: a coloring map or a refutation."""

    kind: str
    homomorphism: Optional[Homomorphism] = None
    proof: Optional[ResolutionProof] = None


def pipeline(g: Graph, h: Graph) -> Certificate:
    """Decide whether g maps into bipartite h, with a verified witness.

    Raises TargetNotBipartite (carrying an odd walk of h) outside the
    tractable case. Positive certificates pass check_homomorphism before
    they are returned; negative ones are built by refute/refute_edgeless
    and pass the proof checker.
    """
    h_witness = is_bipartite(h)
    if isinstance(h_witness, OddClosedWalk):
        raise TargetNotBipartite(h_witness)
    g_witness = is_bipartite(g)
    if isinstance(g_witness, OddClosedWalk):
        return Certificate(NEGATIVE, proof=refute(g, h, g_witness, h_witness))
    if h.edges:
        a, b = min(h.edges)
        hom = compose(hom_from_bipartition(g, g_witness), Homomorphism((a, b)))
        if not check_homomorphism(g, h, hom):
            raise AssertionError("constructed coloring failed verification")
        return Certificate(POSITIVE, homomorphism=hom)
    if not g.edges:
        hom = Homomorphism((0,) * g.n)
        return Certificate(POSITIVE, homomorphism=hom)
    return Certificate(NEGATIVE, proof=refute_edgeless(g, h, min(g.edges)))


def write_witness(hom: Homomorphism) -> str:
    """Map file: one ``h <source> <color>`` line per vertex, 1-based."""
    lines = [f"h {v + 1} {u + 1}" for v, u in enumerate(hom.mapping)]
    return "\n".join(lines) + "\n"


def certificate_payload(cert: Certificate) -> str:
    if cert.kind == POSITIVE:
        return write_witness(cert.homomorphism)
    return write_trace(cert.proof)
