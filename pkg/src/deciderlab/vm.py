"""Deterministic single-tape Turing machines with exact step accounting.

The tape alphabet is {0, 1, _}.  A machine halts only by taking a transition
whose target is ACCEPT (decision 1) or REJECT (decision 0).  One step is one
transition application.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union


class Symbol(IntEnum):
    ZERO = 0
    ONE = 1
    BLANK = 2

    def to_char(self) -> str:
        return "01_"[self]

    @staticmethod
    def from_char(ch: str) -> "Symbol":
        return Symbol("01_".index(ch))


class Move(IntEnum):
    LEFT = -1
    RIGHT = 1

    def to_char(self) -> str:
        return "L" if self is Move.LEFT else "R"


class Halt(IntEnum):
    ACCEPT = -1
    REJECT = -2


#: ACCEPT -> 1, REJECT -> 0
HALT_VALUE = {Halt.ACCEPT: 1, Halt.REJECT: 0}

Target = Union[int, Halt]


@dataclass(frozen=True)
class TransitionTarget:
    next: Target
    write: Symbol
    move: Move

    @property
    def halts(self) -> bool:
        return self.next < 0

    def __str__(self) -> str:
        nxt = self.next.name if self.halts else f"q{self.next}"
        return f"{nxt} {self.write.to_char()} {self.move.to_char()}"


@dataclass(frozen=True)
class MachineDescription:
    """Transition table of a machine with ``state_count`` states.

    ``transitions`` is flat and state-major: the entry for (state, symbol)
    lives at ``3 * state + symbol``.
    """

    state_count: int
    transitions: Tuple[TransitionTarget, ...]
    start_state: int = 0

    def __post_init__(self) -> None:
        if self.state_count < 1:
            raise ValueError("state_count must be >= 1")
        if len(self.transitions) != 3 * self.state_count:
            raise ValueError(
                f"expected {3 * self.state_count} transitions, got {len(self.transitions)}"
            )
        if not 0 <= self.start_state < self.state_count:
            raise ValueError(f"start_state {self.start_state} out of range")
        for t in self.transitions:
            if not t.halts and not 0 <= t.next < self.state_count:
                raise ValueError(f"transition target q{t.next} out of range")
        object.__setattr__(self, "_flat", _flatten(self.transitions))

    @classmethod
    def from_rows(cls, rows: Sequence[Tuple], start_state: int = 0) -> "MachineDescription":
        """Build from ``(next, write, move)`` triples in state-major order."""
        ts = tuple(TransitionTarget(_as_target(n), Symbol(w), Move(mv)) for n, w, mv in rows)
        return cls(len(ts) // 3, ts, start_state)

    def rule(self, state: int, symbol: Symbol) -> TransitionTarget:
        return self.transitions[3 * state + symbol]


def _as_target(n: Target) -> Target:
    return Halt(n) if n < 0 else int(n)


def _flatten(transitions: Sequence[TransitionTarget]) -> Tuple[Tuple[int, int, int], ...]:
    return tuple((int(t.next), int(t.write), int(t.move)) for t in transitions)


@dataclass
class TapeConfiguration:
    """Sparse tape (only non-blank cells stored), head position and state."""

    tape: Dict[int, Symbol] = field(default_factory=dict)
    head: int = 0
    state: int = 0

    def read(self, cell: int) -> Symbol:
        return self.tape.get(cell, Symbol.BLANK)

    def nonblank_cells(self) -> Tuple[int, ...]:
        return tuple(sorted(self.tape))


@dataclass(frozen=True)
class RunOutcome:
    """``value`` is 0 or 1 once decided; ``None`` means still running at the budget."""

    value: Optional[int]
    steps: int

    @property
    def decided(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is None:
            return f"StillRunning at {self.steps}"
        unit = "step" if self.steps == 1 else "steps"
        return f"Decided {self.value} in {self.steps} {unit}"


@dataclass(frozen=True)
class Decided:
    value: int


def validate_bits(bits: str) -> str:
    if any(c not in "01" for c in bits):
        raise ValueError(f"input must be a bit string, got {bits!r}")
    return bits


def initial_configuration(machine: MachineDescription, input: str) -> TapeConfiguration:
    validate_bits(input)
    tape = {i: Symbol(int(c)) for i, c in enumerate(input)}
    return TapeConfiguration(tape, 0, machine.start_state)


def step(
    machine: MachineDescription, config: TapeConfiguration
) -> Union[TapeConfiguration, Decided]:
    """Apply one transition.  Returns a fresh configuration or the decision."""
    t = machine.rule(config.state, config.read(config.head))
    tape = dict(config.tape)
    if t.write is Symbol.BLANK:
        tape.pop(config.head, None)
    else:
        tape[config.head] = t.write
    if t.halts:
        return Decided(HALT_VALUE[t.next])
    return TapeConfiguration(tape, config.head + t.move, int(t.next))


def trace(
    machine: MachineDescription, input: str, budget: int
) -> Iterator[Union[TapeConfiguration, Decided]]:
    """Yield the initial configuration and then every successor, up to ``budget`` steps."""
    config: Union[TapeConfiguration, Decided] = initial_configuration(machine, input)
    yield config
    for _ in range(budget):
        config = step(machine, config)
        yield config
        if isinstance(config, Decided):
            return


def run(machine: MachineDescription, input: str, budget: int) -> RunOutcome:
    """Run for at most ``budget`` steps.

    Same semantics as iterating :func:`step`, with a tight inner loop since
    every experiment in the package bottoms out here.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    validate_bits(input)
    flat = machine._flat
    tape = {i: int(c) for i, c in enumerate(input)}
    get = tape.get
    head = 0
    state = machine.start_state
    for n in range(1, budget + 1):
        nxt, write, move = flat[3 * state + get(head, 2)]
        if nxt < 0:
            return RunOutcome(1 if nxt == -1 else 0, n)
        if write == 2:
            tape.pop(head, None)
        else:
            tape[head] = write
        head += move
        state = nxt
    return RunOutcome(None, budget)
