import random
import re
from pathlib import Path

import pytest
from hypothesis import given, settings

from deciderlab import machinefile as mf
from deciderlab.vm import MachineDescription
from deciderlab.zoo import IMMEDIATE_ACCEPT, SELF_LOOP, THERMOSTAT, TRIVIAL_REJECTOR, TWO_STEP_ACCEPT

from conftest import machines, random_machine

CORPUS = Path(__file__).parent / "data" / "tmm"
EXPECTED_VALID = {
    "immediate_accept.tmm": IMMEDIATE_ACCEPT,
    "self_loop.tmm": SELF_LOOP,
    "thermostat.tmm": THERMOSTAT,
    "two_step.tmm": TWO_STEP_ACCEPT,
    "crlf_rejector.tmm": TRIVIAL_REJECTOR,
}


def expectations(path):
    return [
        (int(m.group(1)), m.group(2))
        for m in re.finditer(r"^# expect: (\d+) (.+)$", path.read_text(), re.M)
    ]


@pytest.mark.parametrize("name", sorted(EXPECTED_VALID))
def test_valid_corpus(name):
    assert mf.read(CORPUS / "valid" / name) == EXPECTED_VALID[name]


def test_corpus_complete():
    assert sorted(p.name for p in (CORPUS / "valid").glob("*.tmm")) == sorted(EXPECTED_VALID)


@pytest.mark.parametrize("path", sorted((CORPUS / "invalid").glob("*.tmm")), ids=lambda p: p.stem)
def test_invalid_corpus(path):
    with pytest.raises(mf.MachinefileError) as info:
        mf.read(path)
    errors = info.value.errors
    nlines = len(path.read_text().splitlines())
    assert errors and all(1 <= e.line <= nlines and e.column >= 1 for e in errors)
    expected = expectations(path)
    assert expected, "fixture lacks '# expect:' lines"
    for line, message in expected:
        assert any(e.line == line and message in e.message for e in errors), (line, message, errors)


def test_missing_rule_message():
    src = "machine m\nstates q0\nq0 0 -> ACCEPT 1 R\nq0 _ -> ACCEPT 1 R\n"
    with pytest.raises(mf.MachinefileError) as info:
        mf.parse(src)
    [err] = info.value.errors
    assert err.message == "missing rule q0/1" and err.line == 2


def test_unknown_state_location():
    src = "machine m\nstates q0\nq0 0 -> qX 1 R\nq0 1 -> ACCEPT 1 R\nq0 _ -> ACCEPT 1 R\n"
    with pytest.raises(mf.MachinefileError) as info:
        mf.parse(src)
    [err] = info.value.errors
    assert (err.line, err.column, err.message, err.token) == (3, 9, "unknown state qX", "qX")


def test_reserved_state_names():
    with pytest.raises(mf.MachinefileError, match="bad state name ACCEPT"):
        mf.parse("machine m\nstates ACCEPT\n")


def test_document_fields():
    doc = mf.parse((CORPUS / "valid" / "thermostat.tmm").read_text())
    assert doc.name == "thermostat" and doc.states == ["ok", "cold"] and len(doc.rules) == 6
    assert doc.spans == {"machine": 2, "states": 3}


def test_serialize_canonical():
    assert mf.serialize(TRIVIAL_REJECTOR, "tr") == (
        "machine tr\nstates q0\n"
        "q0 0 -> REJECT 0 R\nq0 1 -> REJECT 1 R\nq0 _ -> REJECT _ R\n"
    )


def test_serialize_needs_start_zero():
    m = MachineDescription(2, TRIVIAL_REJECTOR.transitions * 2, start_state=1)
    with pytest.raises(ValueError):
        mf.serialize(m)


@pytest.mark.parametrize("m", [TRIVIAL_REJECTOR, IMMEDIATE_ACCEPT, THERMOSTAT, TWO_STEP_ACCEPT])
def test_round_trip_named(m):
    assert mf.load(mf.serialize(m)) == m


def test_crlf_equivalent():
    src = mf.serialize(THERMOSTAT)
    assert mf.load(src.replace("\n", "\r\n")) == mf.load(src) == THERMOSTAT


@settings(max_examples=500)
@given(machines(max_states=6))
def test_round_trip_property(m):
    assert mf.load(mf.serialize(m)) == m


def test_round_trip_random_four_state():
    rng = random.Random(4)
    for _ in range(200):
        m = random_machine(rng, 4)
        assert mf.load(mf.serialize(m)) == m
