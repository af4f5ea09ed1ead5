"""Interpolating circuits from refutations of split clause sets.

A split instance partitions its clauses into an A part over shared
variables p plus A-local variables q, and a B part over p plus B-local
variables r. From any refutation of A and B together, a boolean circuit
over p alone is read off step by step: A leaves become constant 0, B
leaves constant 1, q-pivot steps OR their antecedents, r-pivot steps AND
them, and a shared pivot x selects between the antecedents with
(x AND g_neg) OR (NOT x AND g_pos). The circuit at the empty clause
evaluates to 1 whenever A is satisfiable for the given shared assignment,
and its being 1 forces B to be unsatisfiable for that assignment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

from .encoding import CnfInstance
from .errors import MalformedTrace, NotARefutation, SplitInvalid, UnboundInput
from .proofs import ResolutionProof, check_refutation


@dataclass(frozen=True)
class SplitInstance:
    """A CNF with disjoint A/B clause index sets and the shared variables."""

    cnf: CnfInstance
    p_vars: frozenset[int]
    a_clauses: tuple[int, ...]
    b_clauses: tuple[int, ...]

    def __post_init__(self):
        total = len(self.cnf.clauses)
        a, b = set(self.a_clauses), set(self.b_clauses)
        if len(a) != len(self.a_clauses) or len(b) != len(self.b_clauses):
            raise ValueError("repeated clause index in the split")
        if a & b or (a | b) != set(range(total)):
            raise ValueError("a/b indices must partition the clause list")
        if any(not (1 <= v <= self.cnf.num_vars) for v in self.p_vars):
            raise ValueError("shared variable outside the instance")

    def side_vars(self, indices: tuple[int, ...]) -> set[int]:
        out: set[int] = set()
        for i in indices:
            out.update(abs(lit) for lit in self.cnf.clauses[i])
        return out


def validate_split(split: SplitInstance) -> Optional[int]:
    """None when the variable scoping holds, else the first offending clause.

    A violation is a non-shared variable used by both sides; the reported
    index is the lowest clause index mentioning such a variable.
    """
    a_local = split.side_vars(split.a_clauses) - split.p_vars
    b_local = split.side_vars(split.b_clauses) - split.p_vars
    bad = a_local & b_local
    if not bad:
        return None
    for i, clause in enumerate(split.cnf.clauses):
        if any(abs(lit) in bad for lit in clause):
            return i
    return None  # unreachable


class GateKind(enum.Enum):
    INPUT = "input"
    CONST = "const"
    NOT = "not"
    AND = "and"
    OR = "or"


@dataclass(frozen=True)
class Gate:
    """One node of the DAG; ``x``/``y`` are gate ids, except INPUT stores a
    1-based variable in ``x`` and CONST stores 0/1 in ``x``."""

    kind: GateKind
    x: int
    y: int = 0


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self):
        for gid, gate in enumerate(self.gates):
            if gate.kind in (GateKind.NOT, GateKind.AND, GateKind.OR):
                refs = (gate.x,) if gate.kind is GateKind.NOT else (gate.x, gate.y)
                if any(not (0 <= r < gid) for r in refs):
                    raise ValueError(f"gate {gid} references a later or missing gate")
        if not (0 <= self.output < len(self.gates)):
            raise ValueError("output gate id out of range")

    def __len__(self) -> int:
        return len(self.gates)


class _CircuitBuilder:
    def __init__(self):
        self.gates: list[Gate] = []
        self._consts: dict[int, int] = {}
        self._inputs: dict[int, int] = {}
        self._nots: dict[int, int] = {}

    def _emit(self, gate: Gate) -> int:
        self.gates.append(gate)
        return len(self.gates) - 1

    def const(self, value: int) -> int:
        if value not in self._consts:
            self._consts[value] = self._emit(Gate(GateKind.CONST, value))
        return self._consts[value]

    def input(self, var: int) -> int:
        if var not in self._inputs:
            self._inputs[var] = self._emit(Gate(GateKind.INPUT, var))
        return self._inputs[var]

    def neg_input(self, var: int) -> int:
        if var not in self._nots:
            self._nots[var] = self._emit(Gate(GateKind.NOT, self.input(var)))
        return self._nots[var]

    def op(self, kind: GateKind, x: int, y: int) -> int:
        return self._emit(Gate(kind, x, y))


def interpolate(split: SplitInstance, proof: ResolutionProof) -> Circuit:
    """Extract the interpolating circuit; see the module docstring.

    The proof is re-checked against the split's instance first. Gate count
    stays below 4 * len(proof) + 2 * |p| + 2.
    """
    offending = validate_split(split)
    if offending is not None:
        raise SplitInvalid(offending)
    verdict = check_refutation(split.cnf, proof)
    if not verdict.ok:
        raise NotARefutation(
            f"step {verdict.step_id}: {verdict.reason.value if verdict.reason else 'invalid'}"
        )
    a_set = set(split.a_clauses)
    clause_index = {clause: i for i, clause in enumerate(split.cnf.clauses)}
    a_local = split.side_vars(split.a_clauses) - split.p_vars

    builder = _CircuitBuilder()
    gate_of: dict[int, int] = {}
    for step in proof.steps:
        if step.is_input():
            side = 0 if clause_index[step.clause] in a_set else 1
            gate_of[step.id] = builder.const(side)
            continue
        left, right = step.antecedents
        gl, gr = gate_of[left], gate_of[right]
        pivot = step.pivot
        if pivot in split.p_vars:
            pos_ant = left if pivot in proof.step(left).clause else right
            neg_ant = right if pos_ant == left else left
            keep_neg = builder.op(GateKind.AND, builder.input(pivot), gate_of[neg_ant])
            keep_pos = builder.op(GateKind.AND, builder.neg_input(pivot), gate_of[pos_ant])
            gate_of[step.id] = builder.op(GateKind.OR, keep_neg, keep_pos)
        elif pivot in a_local:
            gate_of[step.id] = builder.op(GateKind.OR, gl, gr)
        else:
            gate_of[step.id] = builder.op(GateKind.AND, gl, gr)
    return Circuit(tuple(builder.gates), gate_of[proof.steps[-1].id])


def eval_circuit(circuit: Circuit, alpha: Mapping[int, bool]) -> int:
    """Evaluate on a total assignment of the INPUT variables; returns 0/1."""
    values: list[int] = []
    for gate in circuit.gates:
        if gate.kind is GateKind.CONST:
            values.append(gate.x)
        elif gate.kind is GateKind.INPUT:
            if gate.x not in alpha:
                raise UnboundInput(f"no value for variable {gate.x}")
            values.append(1 if alpha[gate.x] else 0)
        elif gate.kind is GateKind.NOT:
            values.append(1 - values[gate.x])
        elif gate.kind is GateKind.AND:
            values.append(values[gate.x] & values[gate.y])
        else:
            values.append(values[gate.x] | values[gate.y])
    return values[circuit.output]


# -- text formats ---------------------------------------------------------

def write_circuit(circuit: Circuit) -> str:
    """Lines ``g <id> <kind> <arg> [<arg>]`` then ``out <id>``."""
    lines = []
    for gid, gate in enumerate(circuit.gates):
        if gate.kind in (GateKind.AND, GateKind.OR):
            lines.append(f"g {gid} {gate.kind.value} {gate.x} {gate.y}")
        else:
            lines.append(f"g {gid} {gate.kind.value} {gate.x}")
    lines.append(f"out {circuit.output}")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    gates: list[Gate] = []
    output: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "out" and len(parts) == 2:
            output = int(parts[1])
            continue
        if parts[0] != "g" or len(parts) not in (4, 5):
            raise MalformedTrace(lineno, "expected 'g <id> <kind> <args>' or 'out <id>'")
        try:
            gid = int(parts[1])
            kind = GateKind(parts[2])
            args = [int(tok) for tok in parts[3:]]
        except ValueError:
            raise MalformedTrace(lineno, "bad gate field") from None
        if gid != len(gates):
            raise MalformedTrace(lineno, f"gate ids must be dense, expected {len(gates)}")
        two_arg = kind in (GateKind.AND, GateKind.OR)
        if two_arg != (len(args) == 2):
            raise MalformedTrace(lineno, f"wrong arity for {kind.value}")
        gates.append(Gate(kind, *args))
    if output is None:
        raise MalformedTrace(1, "missing 'out' line")
    return Circuit(tuple(gates), output)


def write_split(split: SplitInstance) -> str:
    """Lines ``p-vars:``, ``a:``, ``b:`` with 1-based clause indices."""

    def line(key: str, ids: list[int]) -> str:
        return f"{key}:" + "".join(f" {x}" for x in ids)

    return "\n".join([
        line("p-vars", sorted(split.p_vars)),
        line("a", [i + 1 for i in split.a_clauses]),
        line("b", [i + 1 for i in split.b_clauses]),
    ]) + "\n"


def parse_split(text: str, cnf: CnfInstance) -> SplitInstance:
    fields: dict[str, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        if key not in ("p-vars", "a", "b") or key in fields:
            raise MalformedTrace(lineno, f"unexpected or repeated field {key!r}")
        try:
            fields[key] = [int(tok) for tok in rest.split()]
        except ValueError:
            raise MalformedTrace(lineno, "non-numeric id") from None
    missing = {"p-vars", "a", "b"} - set(fields)
    if missing:
        raise MalformedTrace(1, f"missing fields: {sorted(missing)}")
    try:
        return SplitInstance(
            cnf,
            frozenset(fields["p-vars"]),
            tuple(i - 1 for i in fields["a"]),
            tuple(i - 1 for i in fields["b"]),
        )
    except ValueError as exc:
        raise MalformedTrace(1, str(exc)) from None
