"""Resolution proof objects, an independent checker, and trace I/O.

A proof is a 1..N contiguous sequence of steps. Input steps repeat a
clause of the instance verbatim; derived steps name two earlier steps and
the pivot variable they resolve on. The checker trusts nothing: input
membership, pivot uniqueness, and the resolvent equation are all
re-verified, and a refutation must end in the empty clause.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .encoding import Clause, CnfInstance, canon_clause
from .errors import MalformedTrace, PivotMissing, PivotSameSign


@dataclass(frozen=True)
class ProofStep:
    id: int
    clause: Clause
    antecedents: tuple[int, ...] = ()
    pivot: Optional[int] = None

    def is_input(self) -> bool:
        return not self.antecedents


@dataclass(frozen=True)
class ResolutionProof:
    steps: tuple[ProofStep, ...]

    def __post_init__(self):
        for pos, step in enumerate(self.steps, start=1):
            if step.id != pos:
                raise ValueError(f"step ids must be contiguous from 1, got {step.id}")
            if step.antecedents and (len(step.antecedents) != 2 or step.pivot is None):
                raise ValueError(f"step {step.id}: derived steps need 2 antecedents and a pivot")
            if not step.antecedents and step.pivot is not None:
                raise ValueError(f"step {step.id}: input steps carry no pivot")

    def step(self, sid: int) -> ProofStep:
        return self.steps[sid - 1]

    def __len__(self) -> int:
        return len(self.steps)


def resolve(c1: Clause, c2: Clause, pivot: int) -> Clause:
    """Resolvent (c1 u c2) minus both pivot literals.

    The pivot must occur in both clauses, positively in one and negatively
    in the other. The result may be tautological; callers that care flag it.
    """
    s1, s2 = set(c1), set(c2)
    in1 = (pivot in s1) or (-pivot in s1)
    in2 = (pivot in s2) or (-pivot in s2)
    if not (in1 and in2):
        raise PivotMissing(f"variable {pivot} does not occur in both clauses")
    if not ((pivot in s1 and -pivot in s2) or (pivot in s2 and -pivot in s1)):
        raise PivotSameSign(f"variable {pivot} has the same sign in both clauses")
    return canon_clause((s1 | s2) - {pivot, -pivot}, allow_tautology=True)


def clashing_vars(c1: Clause, c2: Clause) -> set[int]:
    """Variables occurring positively in one clause and negatively in the other."""
    s2 = set(c2)
    return {abs(lit) for lit in c1 if -lit in s2}


def is_tautology(clause: Clause) -> bool:
    s = set(clause)
    return any(-lit in s for lit in s)


class CheckFailure(enum.Enum):
    NOT_AN_INPUT_CLAUSE = "not_an_input_clause"
    BAD_RESOLVENT = "bad_resolvent"
    NO_EMPTY_CLAUSE = "no_empty_clause"
    DANGLING_ANTECEDENT = "dangling_antecedent"


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    step_id: Optional[int] = None
    reason: Optional[CheckFailure] = None
    warnings: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def check_refutation(cnf: CnfInstance, proof: ResolutionProof) -> CheckResult:
    """Verify a refutation of ``cnf`` from scratch.

    Every input step must equal an instance clause as a literal set, every
    derived step must resolve its two antecedents on exactly its declared
    pivot, and the final step must be the empty clause. Tautological
    resolvents are accepted but reported in ``warnings``.
    """
    inputs = cnf.clause_set()
    warnings: list[str] = []
    for step in proof.steps:
        if step.is_input():
            if step.clause not in inputs:
                return CheckResult(False, step.id, CheckFailure.NOT_AN_INPUT_CLAUSE)
            continue
        a, b = step.antecedents
        if not (1 <= a < step.id and 1 <= b < step.id):
            return CheckResult(False, step.id, CheckFailure.DANGLING_ANTECEDENT)
        ca, cb = proof.step(a).clause, proof.step(b).clause
        if clashing_vars(ca, cb) != {step.pivot}:
            return CheckResult(False, step.id, CheckFailure.BAD_RESOLVENT)
        try:
            expected = resolve(ca, cb, step.pivot)
        except (PivotMissing, PivotSameSign):
            return CheckResult(False, step.id, CheckFailure.BAD_RESOLVENT)
        if canon_clause(step.clause, allow_tautology=True) != expected:
            return CheckResult(False, step.id, CheckFailure.BAD_RESOLVENT)
        if is_tautology(step.clause):
            warnings.append(f"step {step.id} is a tautology")
    if not proof.steps or proof.steps[-1].clause != ():
        last = proof.steps[-1].id if proof.steps else None
        return CheckResult(False, last, CheckFailure.NO_EMPTY_CLAUSE)
    return CheckResult(True, warnings=tuple(warnings))


def is_tree_like(proof: ResolutionProof) -> bool:
    """True iff no step is used as an antecedent more than once."""
    used: set[int] = set()
    for step in proof.steps:
        for ant in step.antecedents:
            if ant in used:
                return False
            used.add(ant)
    return True


# -- trace format -----------------------------------------------------------
#
# One step per line:  <id> <lit_1> ... <lit_j> 0 <ant_1> <ant_2> 0
# Input steps have an empty antecedent list: <id> <lits> 0 0

def write_trace(proof: ResolutionProof) -> str:
    lines = []
    for step in proof.steps:
        parts = [step.id, *step.clause, 0, *step.antecedents, 0]
        lines.append(" ".join(str(x) for x in parts))
    return "\n".join(lines) + "\n"


def parse_trace(text: str, cnf: CnfInstance) -> ResolutionProof:
    """Parse a trace against its instance.

    The pivot is not stored in the file; it is recomputed as the unique
    clashing variable of the two antecedents and parsing fails when that
    variable is not unique. Resolvent correctness is left to the checker.
    """
    steps: list[ProofStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise MalformedTrace(lineno, "non-numeric token") from None
        if len(nums) < 3:
            raise MalformedTrace(lineno, "truncated step line")
        sid, rest = nums[0], nums[1:]
        if sid != len(steps) + 1:
            raise MalformedTrace(lineno, f"expected step id {len(steps) + 1}, got {sid}")
        try:
            zero = rest.index(0)
        except ValueError:
            raise MalformedTrace(lineno, "missing clause terminator") from None
        lits, tail = rest[:zero], rest[zero + 1:]
        if not tail or tail[-1] != 0 or 0 in tail[:-1]:
            raise MalformedTrace(lineno, "malformed antecedent list")
        ants = tuple(tail[:-1])
        if len(ants) not in (0, 2):
            raise MalformedTrace(lineno, "a step has zero or two antecedents")
        if any(abs(lit) > cnf.num_vars for lit in lits):
            raise MalformedTrace(lineno, "literal outside the instance's variables")
        clause = canon_clause(lits, allow_tautology=True)
        pivot = None
        if ants:
            if any(not (1 <= a < sid) for a in ants):
                raise MalformedTrace(lineno, "antecedent id not smaller than step id")
            clash = clashing_vars(steps[ants[0] - 1].clause, steps[ants[1] - 1].clause)
            if len(clash) != 1:
                raise MalformedTrace(lineno, "antecedents do not clash on a unique pivot")
            pivot = clash.pop()
        steps.append(ProofStep(sid, clause, ants, pivot))
    return ResolutionProof(tuple(steps))
