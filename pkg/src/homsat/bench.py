"""Pigeonhole clause sets and the DPLL hardness benchmark.

Placing m pigeons into n holes injectively is the same instance as
coloring the complete graph K_m with K_n's vertices, so gen_php(m, n)
equals encode(K_m, K_n) as a clause set; the benchmark solves the
unsatisfiable m = n + 1 family and reports the solver counters, which
grow steeply with n for a learning-free solver.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .encoding import CnfInstance, canon_clause
from .errors import BudgetExceeded
from .solver import dpll_solve

CSV_HEADER = "pigeons,holes,vars,clauses,result,decisions,conflicts,propagations,time_ms"


@dataclass(frozen=True)
class BenchRow:
    pigeons: int
    holes: int
    num_vars: int
    num_clauses: int
    result: str
    decisions: int
    conflicts: int
    propagations: int
    time_ms: int

    def csv(self) -> str:
        return (
            f"{self.pigeons},{self.holes},{self.num_vars},{self.num_clauses},"
            f"{self.result},{self.decisions},{self.conflicts},"
            f"{self.propagations},{self.time_ms}"
        )


class BenchBudgetExceeded(BudgetExceeded):
    """Raised when the time budget runs out; carries the finished rows."""

    def __init__(self, holes: int, rows: list[BenchRow]):
        super().__init__(f"time budget exhausted before finishing n={holes}")
        self.holes = holes
        self.rows = rows


def gen_php(pigeons: int, holes: int) -> CnfInstance:
    """Pigeonhole clauses over variables x_{i,j} = i * holes + j + 1.

    Per pigeon: one at-least-one-hole clause and all at-most-one-hole
    pairs; per hole: one no-collision clause per pigeon pair.
    """
    if pigeons < 1 or holes < 1:
        raise ValueError("need at least one pigeon and one hole")

    def var(i: int, j: int) -> int:
        return i * holes + j + 1

    clauses = []
    for i in range(pigeons):
        clauses.append(canon_clause(var(i, j) for j in range(holes)))
    for i in range(pigeons):
        for j1 in range(holes):
            for j2 in range(j1 + 1, holes):
                clauses.append(canon_clause((-var(i, j1), -var(i, j2))))
    for j in range(holes):
        for i1 in range(pigeons):
            for i2 in range(i1 + 1, pigeons):
                clauses.append(canon_clause((-var(i1, j), -var(i2, j))))
    return CnfInstance(pigeons * holes, tuple(clauses))


def bench_php(
    n_min: int, n_max: int, time_budget_s: float | None = None
) -> list[BenchRow]:
    """Solve gen_php(n + 1, n) for n in [n_min, n_max]; one row per n.

    The budget is checked between instances, so a raised
    BenchBudgetExceeded still carries every completed row.
    """
    started = time.perf_counter()
    rows: list[BenchRow] = []
    for holes in range(n_min, n_max + 1):
        if time_budget_s is not None and time.perf_counter() - started > time_budget_s:
            raise BenchBudgetExceeded(holes, rows)
        cnf = gen_php(holes + 1, holes)
        model, stats = dpll_solve(cnf)
        rows.append(
            BenchRow(
                pigeons=holes + 1,
                holes=holes,
                num_vars=cnf.num_vars,
                num_clauses=len(cnf.clauses),
                result="SAT" if model is not None else "UNSAT",
                decisions=stats.decisions,
                conflicts=stats.conflicts,
                propagations=stats.propagations,
                time_ms=round(stats.time_ms),
            )
        )
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    return "\n".join([CSV_HEADER, *(row.csv() for row in rows)]) + "\n"
