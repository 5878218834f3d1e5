"""A handful of named machines used across experiments, tests and the CLI."""

from __future__ import annotations

from .vm import Halt, MachineDescription, Move, Symbol

A, R = Halt.ACCEPT, Halt.REJECT
L_, R_ = Move.LEFT, Move.RIGHT
SYMBOLS = (Symbol.ZERO, Symbol.ONE, Symbol.BLANK)


def _uniform(next_, write=None, move=R_) -> MachineDescription:
    # write=None keeps the symbol that was read
    return MachineDescription.from_rows(
        [(next_, s if write is None else write, move) for s in SYMBOLS]
    )


#: 1 state, every rule rejects.  Decode target of every malformed encoding.
TRIVIAL_REJECTOR = _uniform(R)

#: 1 state, every rule accepts, so it decides 1 in exactly one step.
IMMEDIATE_ACCEPT = _uniform(A, write=Symbol.ONE)

#: Runs right forever on any input.
SELF_LOOP = _uniform(0)

#: Walks right over its input and accepts at the first blank: |k|+1 steps.
SCAN_ACCEPT = MachineDescription.from_rows(
    [(0, Symbol.ZERO, R_), (0, Symbol.ONE, R_), (A, Symbol.BLANK, R_)]
)

#: Two hand-traced steps on the empty tape: q0 writes 1 and moves on, q1 accepts.
TWO_STEP_ACCEPT = MachineDescription.from_rows(
    [
        (R, Symbol.ZERO, R_), (R, Symbol.ONE, R_), (1, Symbol.ONE, R_),
        (R, Symbol.ZERO, R_), (R, Symbol.ONE, R_), (A, Symbol.ONE, R_),
    ]
)

#: q0 "OK", q1 "too cold".  Input bit 1 means the temperature is below the
#: setting; the decision is 1 for "turn on furnace".
THERMOSTAT = MachineDescription.from_rows(
    [
        (R, Symbol.ZERO, R_), (1, Symbol.ONE, R_), (R, Symbol.BLANK, R_),
        (A, Symbol.ZERO, R_), (A, Symbol.ONE, R_), (A, Symbol.BLANK, R_),
    ]
)


def delay_then_accept(delay: int) -> MachineDescription:
    """Counts ``delay`` right moves through fresh states, then accepts.

    Decides 1 in exactly ``delay + 1`` steps on every input.
    """
    rows = []
    for q in range(delay):
        rows += [(q + 1, s, R_) for s in SYMBOLS]
    rows += [(A, s, R_) for s in SYMBOLS]
    return MachineDescription.from_rows(rows)


NAMED = {
    "trivial-rejector": TRIVIAL_REJECTOR,
    "immediate-accept": IMMEDIATE_ACCEPT,
    "self-loop": SELF_LOOP,
    "scan-accept": SCAN_ACCEPT,
    "two-step-accept": TWO_STEP_ACCEPT,
    "thermostat": THERMOSTAT,
}
