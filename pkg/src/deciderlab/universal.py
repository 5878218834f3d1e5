"""Two-input universal decider d(d', k) with an explicit host cost model.

Straight mode (d' = 0) runs the decider's own machine on k.  Simulation mode
interprets the machine named by d' from its description: the host pays the
length of that description once to decode it, and then ``1 + row_scan`` per
simulated step, where ``row_scan`` is the 1-based position of the matching
row in the state-major description (the cost of finding it on a description
tape).  Budgets always count simulated steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import vm
from .enumeration import bit_length, index_to_bits, machine_for_index

DEFAULT_HEADROOM = 4


@dataclass(frozen=True)
class BudgetPolicy:
    """T(n) = a*n^2 + b*n + c."""

    a: int = 1
    b: int = 0
    c: int = 100

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 0 or self.a + self.b < 1:
            raise ValueError(f"T(n) must be monotonically increasing, got {self}")

    def __call__(self, n: int) -> int:
        # T(0) may be 0 when c = 0; run() needs at least one step
        return max(1, self.a * n * n + self.b * n + self.c)

    @classmethod
    def parse(cls, text: str) -> "BudgetPolicy":
        a, b, c = (int(x) for x in text.split(","))
        return cls(a, b, c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class CostedDecision:
    value: Optional[int]
    simulated_steps: int
    host_steps: int

    @property
    def decided(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class UniversalDecider:
    self_index: int
    budget_policy: BudgetPolicy = field(default_factory=BudgetPolicy)

    def __post_init__(self) -> None:
        # index 0 is the straight-mode marker and cannot name a simulated decider
        if self.self_index < 1:
            raise ValueError("self_index must be >= 1")

    @property
    def machine(self) -> vm.MachineDescription:
        return machine_for_index(self.self_index)


def decode_cost(d_prime: int) -> int:
    return len(index_to_bits(d_prime))


def simulate(d_prime: int, k: str, budget: int) -> CostedDecision:
    """Interpret decider ``d_prime`` on ``k`` and charge host steps."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    vm.validate_bits(k)
    rows = machine_for_index(d_prime).transitions
    host = decode_cost(d_prime)
    tape = {}
    for i, c in enumerate(k):
        tape[i] = vm.Symbol.ONE if c == "1" else vm.Symbol.ZERO
    head = 0
    state = 0
    for n in range(1, budget + 1):
        pos = 3 * state + tape.get(head, vm.Symbol.BLANK)
        row = rows[pos]
        host += 2 + pos
        if row.halts:
            return CostedDecision(vm.HALT_VALUE[row.next], n, host)
        if row.write is vm.Symbol.BLANK:
            tape.pop(head, None)
        else:
            tape[head] = row.write
        head += row.move
        state = row.next
    return CostedDecision(None, budget, host)


def decide(u: UniversalDecider, d_prime: int, k: str, budget: int) -> CostedDecision:
    if d_prime == 0:
        out = vm.run(u.machine, k, budget)
        return CostedDecision(out.value, out.steps, out.steps)
    return simulate(d_prime, k, budget)


def time_limit(u: UniversalDecider, d_prime: int, k: str) -> int:
    return u.budget_policy(bit_length(u.self_index) + bit_length(d_prime) + len(k))


def decide_time_limited(u: UniversalDecider, d_prime: int, k: str) -> "tuple[int, CostedDecision]":
    """d_T(d', k): silence within T(|d| + |d'| + |k|) simulated steps means 0."""
    detail = decide(u, d_prime, k, time_limit(u, d_prime, k))
    return (0 if detail.value is None else detail.value), detail


def self_simulate(u: UniversalDecider, k: str, budget: int) -> CostedDecision:
    return decide(u, u.self_index, k, budget)


@dataclass(frozen=True)
class OverheadReport:
    direct: CostedDecision
    selfsim: CostedDecision

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.direct.decided and self.selfsim.decided:
            return Fraction(self.selfsim.host_steps, self.direct.host_steps)
        return None


def overhead_report(
    u: UniversalDecider, k: str, budget: int, headroom: int = DEFAULT_HEADROOM
) -> OverheadReport:
    direct = decide(u, 0, k, budget)
    selfsim = self_simulate(u, k, budget * headroom)
    return OverheadReport(direct, selfsim)


def sample_pairs(
    count: int, seed: int, d_range: "tuple[int, int]" = (0, 10**4), max_len: int = 6
) -> "list[tuple[int, str]]":
    """Seeded (d, k) pairs with d in ``d_range`` and |k| <= ``max_len``."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        d = rng.randrange(*d_range)
        n = rng.randint(0, max_len)
        pairs.append((d, "".join(rng.choice("01") for _ in range(n))))
    return pairs


@dataclass(frozen=True)
class FidelityResult:
    d: int
    k: str
    direct: vm.RunOutcome
    simulated: CostedDecision

    @property
    def agrees(self) -> bool:
        return (
            self.simulated.value == self.direct.value
            and self.simulated.simulated_steps == self.direct.steps
        )


def fidelity_check(
    pairs: "list[tuple[int, str]]",
    policy: Optional[BudgetPolicy] = None,
    headroom: int = DEFAULT_HEADROOM,
) -> "list[FidelityResult]":
    """Simulation against direct run for every pair the direct run decides."""
    policy = policy or BudgetPolicy()
    out = []
    for d, k in pairs:
        budget = policy(bit_length(d) + len(k))
        direct = vm.run(machine_for_index(d), k, budget)
        if direct.decided:
            out.append(FidelityResult(d, k, direct, simulate(d, k, budget * headroom)))
    return out
