"""Halting statistics over the enumeration and failure rates of budgeted prediction.

Every machine in a population is run once, up to the largest budget of
interest, and its first-halt step is recorded.  Fractions for smaller
budgets are read off those records.  True halting is undecidable, so the
"truth" any predictor is scored against is the run at a reference budget.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence, Tuple

from . import vm
from ._batch import pmap
from .enumeration import index_to_bits, machine_for_index


class InputPolicy(str, Enum):
    EMPTY = "empty"
    OWN_INDEX = "own-index"

    def input_for(self, d: int) -> str:
        return "" if self is InputPolicy.EMPTY else index_to_bits(d)


@dataclass(frozen=True)
class HaltRecord:
    index: int
    halted: bool
    first_halt_step: Optional[int]
    value: Optional[int]

    def verdict(self, budget: int) -> int:
        """Silence-means-No answer of this machine at ``budget``."""
        if self.halted and self.first_halt_step <= budget:
            return self.value
        return 0


def halt_record(policy: InputPolicy, max_budget: int, d: int) -> HaltRecord:
    out = vm.run(machine_for_index(d), policy.input_for(d), max_budget)
    if out.value is None:
        return HaltRecord(d, False, None, None)
    return HaltRecord(d, True, out.steps, out.value)


def collect(
    indices: Sequence[int],
    max_budget: int,
    input_policy: InputPolicy = InputPolicy.OWN_INDEX,
    workers: int = 1,
) -> List[HaltRecord]:
    return pmap(partial(halt_record, InputPolicy(input_policy), max_budget), list(indices), workers)


@dataclass
class HaltingCurve:
    population: Tuple[int, int]  # (start, n)
    input_policy: InputPolicy
    points: List[Tuple[int, Fraction]]
    records: List[HaltRecord]


def _population(n: int, start: int, indices: Optional[Sequence[int]]) -> Sequence[int]:
    if indices is not None:
        return indices
    if n < 1:
        raise ValueError("n must be >= 1")
    return range(start, start + n)


def curve_points(records: Sequence[HaltRecord], budgets: Sequence[int]) -> List[Tuple[int, Fraction]]:
    n = len(records)
    return [
        (b, Fraction(sum(1 for r in records if r.halted and r.first_halt_step <= b), n))
        for b in budgets
    ]


def halting_curve(
    n: int,
    budgets: Sequence[int],
    input_policy: InputPolicy = InputPolicy.OWN_INDEX,
    *,
    start: int = 0,
    indices: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> HaltingCurve:
    budgets = list(budgets)
    if not budgets or budgets[0] < 1 or any(x >= y for x, y in zip(budgets, budgets[1:])):
        raise ValueError("budgets must be positive and strictly ascending")
    pop = _population(n, start, indices)
    records = collect(pop, budgets[-1], input_policy, workers)
    return HaltingCurve((start, len(pop)), InputPolicy(input_policy), curve_points(records, budgets), records)


@dataclass(frozen=True)
class PredictorScore:
    predictor_budget: int
    reference_budget: int
    disagreements: int
    n: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.disagreements, self.n)


def score(records: Sequence[HaltRecord], b_p: int, b_ref: int) -> PredictorScore:
    if b_ref <= b_p:
        raise ValueError("reference budget must exceed predictor budget")
    bad = sum(1 for r in records if r.verdict(b_p) != r.verdict(b_ref))
    return PredictorScore(b_p, b_ref, bad, len(records))


def predictor_failure(
    n: int,
    b_p: int,
    b_ref: int,
    *,
    start: int = 0,
    indices: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> PredictorScore:
    """Fraction of own-index decisions the budget-``b_p`` answer gets wrong,
    relative to the budget-``b_ref`` answer."""
    records = collect(_population(n, start, indices), b_ref, InputPolicy.OWN_INDEX, workers)
    return score(records, b_p, b_ref)


def records_csv(records: Sequence[HaltRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("index", "halted", "first_halt_step", "value"))
    for r in records:
        w.writerow((
            r.index,
            int(r.halted),
            "" if r.first_halt_step is None else r.first_halt_step,
            "" if r.value is None else r.value,
        ))
    return buf.getvalue()


def curve_summary(curve: HaltingCurve, failures: Sequence[PredictorScore] = ()) -> dict:
    start, n = curve.population
    return {
        "population": {"start": start, "n": n},
        "input_policy": curve.input_policy.value,
        "points": [
            {"budget": b, "fraction": float(f), "fraction_exact": str(f)} for b, f in curve.points
        ],
        "predictor_failure": [
            {
                "predictor_budget": s.predictor_budget,
                "relative_to_budget": s.reference_budget,
                "disagreements": s.disagreements,
                "fraction": float(s.fraction),
            }
            for s in failures
        ],
    }


def curve_json(curve: HaltingCurve, failures: Sequence[PredictorScore] = ()) -> str:
    return json.dumps(curve_summary(curve, failures), indent=2, sort_keys=True) + "\n"
