"""The four-question free-will self-test.

    Q1  Am I a decider?
    Q2  Do I make my decisions using recursive reasoning?
    Q3  Can I model and simulate, at least partially, my own behavior and
        that of other deciders?
    Q4  Can I predict my own decisions beforehand?

Yes to Q1-Q3 and No to Q4 means the testee is likely to believe it has free
will; Yes to all four means it is lying.  Any earlier No stops the test at
that question.

:func:`administer` takes a profile's declared answers at face value.
:func:`administer_empirical` audits an agent that is realized as a machine:
Q3 is checked by asking it what other deciders decide and comparing with
direct runs, and Q4 by timing its self-simulation against simply deciding.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from . import vm
from .enumeration import bit_length, index_of, index_to_bits, machine_for_index
from .universal import (
    DEFAULT_HEADROOM,
    BudgetPolicy,
    CostedDecision,
    UniversalDecider,
    overhead_report,
    simulate,
)
from .zoo import IMMEDIATE_ACCEPT, SCAN_ACCEPT, THERMOSTAT

QUESTIONS = (
    "Am I a decider?",
    "Do I make my decisions using recursive reasoning?",
    "Can I model and simulate, at least partially, my own behavior and that of other deciders?",
    "Can I predict my own decisions beforehand?",
)

Answers = Tuple[bool, bool, bool, bool]


class AgentKind(str, Enum):
    THERMOSTAT = "Thermostat"
    FINITE_AUTOMATON = "FiniteAutomaton"
    UNIVERSAL_MACHINE = "UniversalMachine"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class AgentProfile:
    name: str
    kind: AgentKind
    is_decider: bool
    recursive_reasoning: bool
    self_model: bool
    claims_self_prediction: bool
    machine: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AgentKind(self.kind))
        if self.kind is AgentKind.THERMOSTAT:
            if self.machine is None or machine_for_index(self.machine).state_count != 2:
                raise ValueError("a thermostat must embed a two-state automaton")

    @property
    def answers(self) -> Answers:
        return (self.is_decider, self.recursive_reasoning, self.self_model, self.claims_self_prediction)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AgentProfile":
        return cls(**d)


@dataclass(frozen=True)
class Outcome:
    kind: str  # BelievesFree | NotAttributed | Lying
    failed_question: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "NotAttributed":
            return f"NotAttributed(Q{self.failed_question})"
        return self.kind


BELIEVES_FREE = Outcome("BelievesFree")
LYING = Outcome("Lying")


def verdict(answers: Answers) -> Outcome:
    for i, a in enumerate(answers[:3], 1):
        if not a:
            return Outcome("NotAttributed", i)
    return LYING if answers[3] else BELIEVES_FREE


@dataclass
class TestVerdict:
    answers: Answers
    outcome: Outcome
    evidence: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "answers": ["Yes" if a else "No" for a in self.answers],
            "outcome": str(self.outcome),
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def transcript(self, name: str) -> str:
        lines = [f"Self-test for {name}"]
        for i, (q, a) in enumerate(zip(QUESTIONS, self.answers), 1):
            lines.append(f"  Q{i}: {q} {'Yes' if a else 'No'}")
        lines.append(f"Outcome: {self.outcome}")
        return "\n".join(lines) + "\n"


def administer(profile: AgentProfile) -> TestVerdict:
    return TestVerdict(profile.answers, verdict(profile.answers))


def _costed(c: CostedDecision) -> dict:
    return {"value": c.value, "simulated_steps": c.simulated_steps, "host_steps": c.host_steps}


def _agent_answer(profile: AgentProfile, d_prime: int, k: str, budget: int) -> Tuple[Optional[int], Optional[int]]:
    """What the agent says decider ``d_prime`` decides on ``k``, and in how many steps.

    Only a universal agent can read the description of ``d_prime``; any other
    agent has a single tape holding ``k`` and just runs its own table on it.
    """
    if profile.kind is AgentKind.UNIVERSAL_MACHINE:
        out = simulate(profile.machine if d_prime == 0 else d_prime, k, budget)
        return out.value, out.simulated_steps
    out = vm.run(machine_for_index(profile.machine), k, budget)
    return out.value, None


def fidelity_evidence(
    profile: AgentProfile,
    sample: Sequence[Tuple[int, str]],
    policy: BudgetPolicy,
    headroom: int = DEFAULT_HEADROOM,
) -> dict:
    decided = agree = 0
    for d_prime, k in sample:
        ref = machine_for_index(profile.machine if d_prime == 0 else d_prime)
        budget = policy(bit_length(d_prime) + len(k))
        direct = vm.run(ref, k, budget)
        if not direct.decided:
            continue
        decided += 1
        value, steps = _agent_answer(profile, d_prime, k, budget * headroom)
        if value == direct.value and steps in (None, direct.steps):
            agree += 1
    if decided == 0:
        status = "inconclusive"
    else:
        status = "pass" if agree == decided else "fail"
    return {
        "pairs": len(sample),
        "decided_pairs": decided,
        "agreements": agree,
        "fidelity": f"{agree}/{decided}" if decided else None,
        "mode": "universal" if profile.kind is AgentKind.UNIVERSAL_MACHINE else "plain",
        "status": status,
    }


def administer_empirical(
    profile: AgentProfile,
    sample: Sequence[Tuple[int, str]],
    challenge: str,
    policy: Optional[BudgetPolicy] = None,
    headroom: int = DEFAULT_HEADROOM,
) -> TestVerdict:
    if profile.machine is None:
        raise ValueError("empirical mode needs an agent realized as a machine")
    if not sample:
        raise ValueError("sample must be non-empty")
    policy = policy or BudgetPolicy()
    q3_ev = fidelity_evidence(profile, sample, policy, headroom)
    # evidence can withdraw a claimed capability, never grant an undeclared one
    q3 = profile.self_model and q3_ev["status"] == "pass"

    u = UniversalDecider(profile.machine, policy)
    budget = policy(2 * bit_length(profile.machine) + len(challenge))
    rep = overhead_report(u, challenge, budget, headroom)
    q4 = rep.selfsim.host_steps < rep.direct.host_steps
    q4_ev = {
        "challenge": challenge,
        "budget": budget,
        "direct": _costed(rep.direct),
        "selfsim": _costed(rep.selfsim),
        "ratio": None if rep.ratio is None else str(rep.ratio),
    }
    answers = (profile.is_decider, profile.recursive_reasoning, q3, q4)
    return TestVerdict(answers, verdict(answers), {"q3": q3_ev, "q4": q4_ev})


def builtin_profiles() -> Dict[str, AgentProfile]:
    return {
        "thermostat": AgentProfile(
            "thermostat", AgentKind.THERMOSTAT, True, True, False, False, index_of(THERMOSTAT)
        ),
        "os": AgentProfile(
            "os", AgentKind.UNIVERSAL_MACHINE, True, True, True, False, index_of(SCAN_ACCEPT)
        ),
        "cheater": AgentProfile(
            "cheater", AgentKind.FINITE_AUTOMATON, True, True, True, True, index_of(IMMEDIATE_ACCEPT)
        ),
    }


def own_index_challenge(profile: AgentProfile) -> str:
    return index_to_bits(profile.machine)
