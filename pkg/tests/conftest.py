import random

import pytest
from hypothesis import strategies as st

from deciderlab.vm import Halt, MachineDescription, Move, Symbol, TransitionTarget


def targets(m):
    return list(range(m)) + [Halt.ACCEPT, Halt.REJECT]


@st.composite
def machines(draw, max_states=4):
    m = draw(st.integers(1, max_states))
    rows = draw(st.lists(
        st.tuples(st.sampled_from(targets(m)), st.sampled_from(list(Symbol)), st.sampled_from(list(Move))),
        min_size=3 * m, max_size=3 * m,
    ))
    return MachineDescription(m, tuple(TransitionTarget(*r) for r in rows))


def random_machine(rng: random.Random, max_states: int) -> MachineDescription:
    m = rng.randint(1, max_states)
    ts = targets(m)
    return MachineDescription(m, tuple(
        TransitionTarget(rng.choice(ts), rng.choice(list(Symbol)), rng.choice(list(Move)))
        for _ in range(3 * m)
    ))


bitstrings = st.text(alphabet="01", max_size=8)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    def record(criterion, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
