import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deciderlab import vm
from deciderlab.vm import Decided, MachineDescription, Move, Symbol, TapeConfiguration
from deciderlab.zoo import IMMEDIATE_ACCEPT, SELF_LOOP, TRIVIAL_REJECTOR, TWO_STEP_ACCEPT

from conftest import bitstrings, machines

ACCEPT_BLANK_ONLY = MachineDescription.from_rows(
    [(vm.Halt.REJECT, 0, 1), (vm.Halt.REJECT, 1, 1), (vm.Halt.ACCEPT, Symbol.ONE, Move.RIGHT)]
)
REJECT_BLANK_ONLY = MachineDescription.from_rows(
    [(vm.Halt.ACCEPT, 0, 1), (vm.Halt.ACCEPT, 1, 1), (vm.Halt.REJECT, Symbol.BLANK, Move.LEFT)]
)


def run_by_stepping(machine, k, budget):
    # reference semantics for run(): literally iterate step()
    config = vm.initial_configuration(machine, k)
    for n in range(1, budget + 1):
        config = vm.step(machine, config)
        if isinstance(config, Decided):
            return vm.RunOutcome(config.value, n)
    return vm.RunOutcome(None, budget)


class TestInitialConfiguration:
    def test_empty_input(self):
        c = vm.initial_configuration(IMMEDIATE_ACCEPT, "")
        assert c.tape == {} and c.head == 0 and c.state == 0

    def test_bits_written_from_cell_zero(self):
        c = vm.initial_configuration(IMMEDIATE_ACCEPT, "101")
        assert [c.read(i) for i in range(-1, 4)] == [
            Symbol.BLANK, Symbol.ONE, Symbol.ZERO, Symbol.ONE, Symbol.BLANK
        ]
        assert c.head == 0

    def test_start_state_copied(self):
        rows = [(vm.Halt.REJECT, s, Move.RIGHT) for s in range(3)] * 3
        m = MachineDescription.from_rows(rows, start_state=2)
        assert vm.initial_configuration(m, "0").state == 2

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            vm.initial_configuration(IMMEDIATE_ACCEPT, "012")


class TestMachineInvariants:
    def test_table_must_be_total(self):
        with pytest.raises(ValueError):
            MachineDescription(1, TRIVIAL_REJECTOR.transitions[:2])

    def test_target_in_range(self):
        with pytest.raises(ValueError):
            MachineDescription.from_rows([(1, 0, 1)] * 3)

    def test_at_least_one_state(self):
        with pytest.raises(ValueError):
            MachineDescription(0, ())


class TestStep:
    def test_immediate_accept(self):
        assert vm.step(ACCEPT_BLANK_ONLY, vm.initial_configuration(ACCEPT_BLANK_ONLY, "")) == Decided(1)

    def test_immediate_reject(self):
        assert vm.step(REJECT_BLANK_ONLY, vm.initial_configuration(REJECT_BLANK_ONLY, "")) == Decided(0)

    def test_two_state_hand_trace(self):
        c = vm.step(TWO_STEP_ACCEPT, vm.initial_configuration(TWO_STEP_ACCEPT, ""))
        assert c == TapeConfiguration({0: Symbol.ONE}, 1, 1)
        assert vm.step(TWO_STEP_ACCEPT, c) == Decided(1)

    def test_step_does_not_mutate_its_argument(self):
        c = vm.initial_configuration(SELF_LOOP, "01")
        before = TapeConfiguration(dict(c.tape), c.head, c.state)
        vm.step(SELF_LOOP, c)
        assert c == before


class TestRun:
    def test_immediate_accept(self):
        assert vm.run(IMMEDIATE_ACCEPT, "", 100) == vm.RunOutcome(1, 1)

    def test_two_step(self):
        assert vm.run(TWO_STEP_ACCEPT, "", 100) == vm.RunOutcome(1, 2)

    def test_self_loop_exhausts_budget(self):
        out = vm.run(SELF_LOOP, "", 50)
        assert out == vm.RunOutcome(None, 50) and not out.decided

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            vm.run(IMMEDIATE_ACCEPT, "", 0)

    def test_str(self):
        assert str(vm.RunOutcome(1, 1)) == "Decided 1 in 1 step"
        assert str(vm.RunOutcome(0, 3)) == "Decided 0 in 3 steps"
        assert str(vm.RunOutcome(None, 50)) == "StillRunning at 50"

    @pytest.mark.parametrize("length", range(9))
    def test_immediate_accept_one_step_on_every_input(self, length):
        for bits in itertools.product("01", repeat=length):
            assert vm.run(IMMEDIATE_ACCEPT, "".join(bits), 5) == vm.RunOutcome(1, 1)

    @settings(max_examples=300)
    @given(machines(), bitstrings, st.integers(1, 60))
    def test_matches_stepping(self, m, k, budget):
        assert vm.run(m, k, budget) == run_by_stepping(m, k, budget)

    @given(machines(), bitstrings, st.integers(1, 60))
    def test_deterministic(self, m, k, budget):
        assert vm.run(m, k, budget) == vm.run(m, k, budget)

    @settings(max_examples=300)
    @given(machines(), bitstrings, st.integers(1, 40), st.integers(0, 200))
    def test_budget_monotone(self, m, k, b1, extra):
        first = vm.run(m, k, b1)
        if first.decided:
            assert vm.run(m, k, b1 + extra) == first
        assert first.steps <= b1

    @settings(max_examples=200)
    @given(machines(), bitstrings, st.integers(1, 40))
    def test_tape_locality(self, m, k, budget):
        for s, config in enumerate(vm.trace(m, k, budget)):
            if isinstance(config, Decided):
                break
            assert all(-s <= cell <= len(k) + s for cell in config.tape)
            assert all(v != Symbol.BLANK for v in config.tape.values())
