"""Clause sets for homomorphism instances and their DIMACS form.

The instance for a pair (G, H) says "each source vertex gets exactly one
color, and colors of adjacent vertices must be adjacent in H":

* one at-least-one clause per source vertex,
* one at-most-one clause per source vertex and color pair,
* one conflict clause per source edge and non-adjacent ordered color pair
  (including equal colors, since targets are loop-free).

Variable x_{v,u} ("v is colored u") gets DIMACS index v * |H| + u + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import EmptyTarget, MalformedDimacs, VocabularyMismatch
from .graphs import Graph

Clause = tuple[int, ...]


def canon_clause(lits: Iterable[int], allow_tautology: bool = False) -> Clause:
    """Normalize literals: dedup, sort by (variable, sign), negative first.

    Rejects literal 0. Rejects a tautological clause unless allowed
    (proof steps may legally be tautological; instance clauses may not).
    """
    seen = set(lits)
    if 0 in seen:
        raise ValueError("literal 0 is not allowed inside a clause")
    if not allow_tautology:
        for lit in seen:
            if -lit in seen:
                raise ValueError(f"clause contains both {lit} and {-lit}")
    return tuple(sorted(seen, key=lambda lit: (abs(lit), lit > 0)))


@dataclass(frozen=True)
class VarMap:
    """Bijection between (source vertex, color) pairs and DIMACS variables."""

    n_source: int
    n_target: int

    def index(self, v: int, u: int) -> int:
        return v * self.n_target + u + 1

    def decode(self, var: int) -> tuple[int, int]:
        v, u = divmod(var - 1, self.n_target)
        return v, u

    @property
    def num_vars(self) -> int:
        return self.n_source * self.n_target


@dataclass(frozen=True)
class CnfInstance:
    """Canonical clause set: per-clause literal order is fixed, no clause
    repeats, no clause contains a variable in both polarities."""

    num_vars: int
    clauses: tuple[Clause, ...] = field(default=())

    def __post_init__(self):
        normalized = []
        seen = set()
        for clause in self.clauses:
            canon = canon_clause(clause)
            if canon in seen:
                raise ValueError(f"duplicate clause {canon}")
            if canon and abs(canon[-1]) > self.num_vars:
                raise ValueError(f"clause {canon} exceeds {self.num_vars} variables")
            seen.add(canon)
            normalized.append(canon)
        object.__setattr__(self, "clauses", tuple(normalized))

    def clause_set(self) -> frozenset[Clause]:
        return frozenset(self.clauses)

    def sorted_clauses(self) -> tuple[Clause, ...]:
        """Clauses in a canonical global order (shortlex on literal keys)."""
        return tuple(
            sorted(self.clauses, key=lambda c: tuple((abs(l), l > 0) for l in c))
        )


@dataclass(frozen=True)
class RelStructure:
    """Finite relational structure: a universe 0..size-1 and named relations."""

    size: int
    arities: Mapping[str, int]
    relations: Mapping[str, frozenset[tuple[int, ...]]]

    def __post_init__(self):
        if set(self.arities) != set(self.relations):
            raise VocabularyMismatch("arity table and relation table disagree")
        for name, tuples in self.relations.items():
            arity = self.arities[name]
            for tup in tuples:
                if len(tup) != arity:
                    raise VocabularyMismatch(
                        f"tuple {tup} in {name!r} has arity {len(tup)}, expected {arity}"
                    )
                if any(not (0 <= x < self.size) for x in tup):
                    raise ValueError(f"tuple {tup} outside universe of size {self.size}")


def graph_structure(g: Graph) -> RelStructure:
    """View a graph as a structure with one symmetric binary relation 'edge'."""
    pairs = set()
    for i, j in g.edges:
        pairs.add((i, j))
        pairs.add((j, i))
    return RelStructure(g.n, {"edge": 2}, {"edge": frozenset(pairs)})


def _exactly_one_families(n_source: int, n_target: int, index) -> list[Clause]:
    clauses = [
        canon_clause(index(v, u) for u in range(n_target)) for v in range(n_source)
    ]
    for v in range(n_source):
        for u1 in range(n_target):
            for u2 in range(u1 + 1, n_target):
                clauses.append(canon_clause((-index(v, u1), -index(v, u2))))
    return clauses


def encode(g: Graph, h: Graph) -> tuple[CnfInstance, VarMap]:
    """Clause set whose models are exactly the homomorphisms g -> h."""
    if h.n == 0:
        raise EmptyTarget("target graph has no vertices")
    vm = VarMap(g.n, h.n)
    ordered: dict[Clause, None] = {}
    for clause in _exactly_one_families(g.n, h.n, vm.index):
        ordered.setdefault(clause, None)
    for v1, v2 in g.sorted_edges():
        for u1 in range(h.n):
            for u2 in range(h.n):
                if not h.has_edge(u1, u2):
                    clause = canon_clause((-vm.index(v1, u1), -vm.index(v2, u2)))
                    ordered.setdefault(clause, None)
    return CnfInstance(vm.num_vars, tuple(ordered)), vm


def encode_csp(gs: RelStructure, hs: RelStructure) -> tuple[CnfInstance, VarMap]:
    """Same construction over arbitrary relational structures.

    The conflict family forbids, for each relation R and source tuple in
    R^gs, every target tuple outside R^hs.
    """
    if dict(gs.arities) != dict(hs.arities):
        raise VocabularyMismatch("structures use different vocabularies")
    if hs.size == 0:
        raise EmptyTarget("target structure has an empty universe")
    vm = VarMap(gs.size, hs.size)
    ordered: dict[Clause, None] = {}
    for clause in _exactly_one_families(gs.size, hs.size, vm.index):
        ordered.setdefault(clause, None)
    for name in sorted(gs.relations):
        arity = gs.arities[name]
        allowed = hs.relations[name]
        for src in sorted(gs.relations[name]):
            for tgt in _tuples_outside(hs.size, arity, allowed):
                clause = canon_clause(
                    -vm.index(src[i], tgt[i]) for i in range(arity)
                )
                ordered.setdefault(clause, None)
    return CnfInstance(vm.num_vars, tuple(ordered)), vm


def _tuples_outside(size: int, arity: int, allowed: frozenset) -> Iterable[tuple]:
    return (
        tup
        for tup in itertools.product(range(size), repeat=arity)
        if tup not in allowed
    )


# -- DIMACS -----------------------------------------------------------------

def write_dimacs(cnf: CnfInstance) -> str:
    """Bit-exact writer: header, one clause per line, trailing newline."""
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    """Strict line-based DIMACS parser: one clause per line, 0-terminated.

    Rejects a 0 inside a clause body, out-of-range variables, tautological
    or duplicate clauses, and a clause count differing from the header.
    """
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    seen: set[Clause] = set()
    last_lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_lineno = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if num_vars is None:
            if parts[0] != "p" or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedDimacs(lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedDimacs(lineno, "non-numeric header fields") from None
            if num_vars < 0 or num_clauses < 0:
                raise MalformedDimacs(lineno, "negative header fields")
            continue
        try:
            nums = [int(tok) for tok in parts]
        except ValueError:
            raise MalformedDimacs(lineno, "non-numeric literal") from None
        if not nums or nums[-1] != 0:
            raise MalformedDimacs(lineno, "clause line must end with 0")
        lits = nums[:-1]
        if 0 in lits:
            raise MalformedDimacs(lineno, "literal 0 inside a clause body")
        if any(abs(lit) > num_vars for lit in lits):
            raise MalformedDimacs(lineno, "literal outside declared variable range")
        try:
            clause = canon_clause(lits)
        except ValueError as exc:
            raise MalformedDimacs(lineno, str(exc)) from None
        if clause in seen:
            raise MalformedDimacs(lineno, "duplicate clause")
        seen.add(clause)
        clauses.append(clause)
    if num_vars is None:
        raise MalformedDimacs(max(last_lineno, 1), "missing 'p cnf' header")
    if len(clauses) != num_clauses:
        raise MalformedDimacs(
            max(last_lineno, 1),
            f"header declares {num_clauses} clauses, found {len(clauses)}",
        )
    return CnfInstance(num_vars, tuple(clauses))
