"""Time-limited prediction table A_T and the diagonal decider g(k) = NOT A_T(k, k).

The predictor is the direct runner, so the host cost of a prediction equals
the steps the predicted decider takes (its full budget when it times out).
Escape of g from every row is checked exhaustively on a finite prefix; the
asymptotic claim that no time-T procedure computes A_T is not something a
finite run can confirm and nothing here pretends to.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import List, Tuple

from . import vm
from ._batch import pmap
from .enumeration import bit_length, index_to_bits, machine_for_index
from .universal import BudgetPolicy


@dataclass(frozen=True)
class Prediction:
    value: int
    host_steps: int
    timed_out: bool


@dataclass(frozen=True)
class PredictionTable:
    budget_policy: BudgetPolicy = field(default_factory=BudgetPolicy)

    def budget(self, d: int, k: int) -> int:
        return self.budget_policy(bit_length(d) + bit_length(k))

    def predict(self, d: int, k: int) -> Prediction:
        out = vm.run(machine_for_index(d), index_to_bits(k), self.budget(d, k))
        if out.value is None:
            return Prediction(0, out.steps, True)
        return Prediction(out.value, out.steps, False)

    def __getitem__(self, dk: Tuple[int, int]) -> int:
        return self.predict(*dk).value


@dataclass(frozen=True)
class DiagonalDecider:
    budget_policy: BudgetPolicy = field(default_factory=BudgetPolicy)

    @property
    def table(self) -> PredictionTable:
        return PredictionTable(self.budget_policy)

    def g_value(self, k: int) -> Tuple[int, int]:
        """(g(k), host cost): one prediction plus one step for the negation."""
        p = self.table.predict(k, k)
        return 1 - p.value, p.host_steps + 1


@dataclass(frozen=True)
class DiagonalRow:
    d: int
    a_dd: int
    g: int
    budget: int
    g_cost: int
    timed_out: bool


def diagonal_row(policy: BudgetPolicy, d: int) -> DiagonalRow:
    diag = DiagonalDecider(policy)
    table = diag.table
    g, cost = diag.g_value(d)
    # the row entry is recomputed independently of g_value
    p = table.predict(d, d)
    return DiagonalRow(d, p.value, g, table.budget(d, d), cost, p.timed_out)


@dataclass
class EscapeReport:
    checked: int
    violations: List[int]
    rows: List[DiagonalRow]
    max_cost_ratio: Fraction

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_escape(
    diag: DiagonalDecider, n: int, workers: int = 1, start: int = 0
) -> EscapeReport:
    """Check g(d) != A_T(d, d) for every d in [start, start + n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = pmap(partial(diagonal_row, diag.budget_policy), range(start, start + n), workers)
    violations = [r.d for r in rows if r.g == r.a_dd]
    return EscapeReport(n, violations, rows, _max_ratio(rows))


def g_cost_profile(
    diag: DiagonalDecider, n: int, workers: int = 1, start: int = 0
) -> Tuple[List[Tuple[int, int, int]], Fraction]:
    """Rows of (k, T(2|k|), cost of g(k)) and max cost / T(2|k|)^2."""
    rows = verify_escape(diag, n, workers, start).rows
    return [(r.d, r.budget, r.g_cost) for r in rows], _max_ratio(rows)


def _max_ratio(rows: List[DiagonalRow]) -> Fraction:
    return max(Fraction(r.g_cost, r.budget * r.budget) for r in rows)


CSV_COLUMNS = ("d", "A_T(d,d)", "g(d)", "budget", "g_cost", "timed_out")


def report_csv(report: EscapeReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.rows:
        w.writerow((r.d, r.a_dd, r.g, r.budget, r.g_cost, int(r.timed_out)))
    return buf.getvalue()


def report_summary(report: EscapeReport, policy: BudgetPolicy) -> dict:
    return {
        "checked": report.checked,
        "violations": report.violations,
        "budget_poly": [policy.a, policy.b, policy.c],
        "timeouts": sum(r.timed_out for r in report.rows),
        "max_cost_ratio": float(report.max_cost_ratio),
        "max_cost_ratio_exact": str(report.max_cost_ratio),
        "envelope_ok": report.max_cost_ratio <= 1,
    }


def report_json(report: EscapeReport, policy: BudgetPolicy) -> str:
    return json.dumps(report_summary(report, policy), indent=2, sort_keys=True) + "\n"
