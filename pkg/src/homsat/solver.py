"""Satisfiability oracles: an instrumented DPLL and a saturation prover.

The DPLL procedure is deliberately plain — no learning, no restarts —
so its conflict counter tracks tree-search effort and is reproducible:
it always branches on the lowest-index unassigned variable, tries true
first, and unit-propagates to fixpoint before every decision.

``saturate`` closes a small clause set under the resolution rule and
rebuilds a checkable proof when the empty clause appears; it is the
independent proof-producing oracle used to cross-check generated proofs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .encoding import Clause, CnfInstance
from .errors import BudgetExceeded
from .proofs import ProofStep, ResolutionProof


@dataclass
class SolveStats:
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0
    time_ms: float = 0.0


def dpll_solve(cnf: CnfInstance) -> tuple[Optional[tuple[int, ...]], SolveStats]:
    """Complete search; returns (model, stats) with model None on UNSAT.

    The model is a tuple of signed literals, one per variable, ascending.
    Each branch entered (first or flipped polarity) counts as one decision;
    each implied assignment counts as one propagation; each falsified
    clause counts as one conflict.
    """
    started = time.perf_counter()
    stats = SolveStats()
    nv = cnf.num_vars

    def done(model):
        stats.time_ms = (time.perf_counter() - started) * 1000.0
        return model, stats

    # litval is indexed by literal + nv: 1 true, -1 false, 0 unassigned
    litval = [0] * (2 * nv + 1)
    bin_other: list[list[int]] = [[] for _ in range(2 * nv + 1)]
    watches: list[list[int]] = [[] for _ in range(2 * nv + 1)]
    long_lits: list[list[int]] = []
    trail: list[int] = []
    units: list[int] = []

    for clause in cnf.clauses:
        if len(clause) == 0:
            stats.conflicts += 1
            return done(None)
        if len(clause) == 1:
            units.append(clause[0])
        elif len(clause) == 2:
            a, b = clause
            bin_other[a + nv].append(b)
            bin_other[b + nv].append(a)
        else:
            idx = len(long_lits)
            long_lits.append(list(clause))
            watches[clause[0] + nv].append(idx)
            watches[clause[1] + nv].append(idx)

    def assign(lit: int) -> bool:
        code = lit + nv
        if litval[code] < 0:
            return False
        if litval[code] == 0:
            litval[code] = 1
            litval[2 * nv - code] = -1
            trail.append(lit)
        return True

    for lit in units:
        if litval[lit + nv] == 0:
            stats.propagations += 1
        if not assign(lit):
            stats.conflicts += 1
            return done(None)

    qhead = 0

    def propagate() -> bool:
        """Run unit propagation from the trail head; False on conflict."""
        nonlocal qhead
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            fcode = nv - lit  # code of the now-false literal -lit
            for other in bin_other[fcode]:
                s = litval[other + nv]
                if s < 0:
                    stats.conflicts += 1
                    return False
                if s == 0:
                    stats.propagations += 1
                    assign(other)
            watch_list = watches[fcode]
            i = 0
            while i < len(watch_list):
                ci = watch_list[i]
                lits = long_lits[ci]
                if lits[0] + nv == fcode:
                    lits[0], lits[1] = lits[1], lits[0]
                first = lits[0]
                if litval[first + nv] == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    if litval[lits[k] + nv] >= 0:
                        lits[1], lits[k] = lits[k], lits[1]
                        watches[lits[1] + nv].append(ci)
                        watch_list[i] = watch_list[-1]
                        watch_list.pop()
                        moved = True
                        break
                if moved:
                    continue
                s = litval[first + nv]
                if s < 0:
                    stats.conflicts += 1
                    return False
                stats.propagations += 1
                assign(first)
                i += 1
        return True

    # decision stack entries: (trail length, variable, scan hint, flipped)
    decisions: list[list[int]] = []
    hint = 1

    def undo_to(mark: int) -> None:
        nonlocal qhead
        for lit in trail[mark:]:
            litval[lit + nv] = 0
            litval[-lit + nv] = 0
        del trail[mark:]
        qhead = mark

    while True:
        if propagate():
            while hint <= nv and litval[hint + nv] != 0:
                hint += 1
            if hint > nv:
                model = tuple(v if litval[v + nv] == 1 else -v for v in range(1, nv + 1))
                assert _satisfies(cnf, litval, nv), "internal model check failed"
                return done(model)
            decisions.append([len(trail), hint, hint, 0])
            stats.decisions += 1
            assign(hint)
        else:
            while decisions and decisions[-1][3]:
                mark, _, saved_hint, _ = decisions.pop()
                undo_to(mark)
                hint = saved_hint
            if not decisions:
                return done(None)
            frame = decisions[-1]
            undo_to(frame[0])
            hint = frame[2]
            frame[3] = 1
            stats.decisions += 1
            assign(-frame[1])


def _satisfies(cnf: CnfInstance, litval: list[int], nv: int) -> bool:
    return all(any(litval[lit + nv] == 1 for lit in clause) for clause in cnf.clauses)


def decode_model(model: tuple[int, ...], n_target: int) -> tuple[int, ...]:
    """Read a vertex coloring off a model of an encoded instance."""
    chosen = {}
    for lit in model:
        if lit > 0:
            v, u = divmod(lit - 1, n_target)
            chosen[v] = u
    return tuple(chosen[v] for v in range(len(model) // n_target))


DEFAULT_VAR_BUDGET = 12


def saturate(cnf: CnfInstance, var_budget: int = DEFAULT_VAR_BUDGET) -> Optional[ResolutionProof]:
    """Close the clause set under resolution; rebuild a proof if it refutes.

    Tautological resolvents are dropped and resolvents subsumed by an
    already-kept clause are skipped (both preserve refutation
    completeness). Returns None exactly when the closure lacks the empty
    clause, i.e. the set is satisfiable.
    """
    if cnf.num_vars > var_budget:
        raise BudgetExceeded(
            f"{cnf.num_vars} variables exceed the saturation budget {var_budget}"
        )
    order: list[Clause] = []
    parents: list[Optional[tuple[int, int, int]]] = []
    index: dict[Clause, int] = {}
    sets: list[frozenset[int]] = []

    def add(clause: Clause, via: Optional[tuple[int, int, int]]) -> Optional[int]:
        if clause in index:
            return None
        pos = len(order)
        order.append(clause)
        parents.append(via)
        index[clause] = pos
        sets.append(frozenset(clause))
        return pos

    empty_at: Optional[int] = None
    for clause in cnf.clauses:
        pos = add(clause, None)
        if clause == () and pos is not None:
            empty_at = pos

    given = 0
    while empty_at is None and given < len(order):
        cg = sets[given]
        for other in range(given):
            co = sets[other]
            clash = [lit for lit in cg if -lit in co]
            if len(clash) != 1:
                continue
            pivot_lit = clash[0]
            resolvent = (cg | co) - {pivot_lit, -pivot_lit}
            if any(-lit in resolvent for lit in resolvent):
                continue
            clause = tuple(sorted(resolvent, key=lambda lit: (abs(lit), lit > 0)))
            if clause in index:
                continue
            if any(s <= resolvent for s in sets):
                continue
            pos = add(clause, (given, other, abs(pivot_lit)))
            if clause == ():
                empty_at = pos
                break
        given += 1

    if empty_at is None:
        return None

    needed: set[int] = set()
    stack = [empty_at]
    while stack:
        pos = stack.pop()
        if pos in needed:
            continue
        needed.add(pos)
        if parents[pos] is not None:
            stack.extend(parents[pos][:2])
    renumber = {pos: sid for sid, pos in enumerate(sorted(needed), start=1)}
    steps = []
    for pos in sorted(needed):
        sid = renumber[pos]
        via = parents[pos]
        if via is None:
            steps.append(ProofStep(sid, order[pos]))
        else:
            a, b, pivot = via
            steps.append(ProofStep(sid, order[pos], (renumber[a], renumber[b]), pivot))
    return ResolutionProof(tuple(steps))
