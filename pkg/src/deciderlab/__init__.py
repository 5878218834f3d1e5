"""Deciders as enumerable Turing machines: time-limited decisions, universal
self-simulation with a host cost model, diagonalization, halting statistics
and the four-question free-will self-test."""

from .enumeration import (
    DeciderIndex,
    bits_to_index,
    bits_to_machine,
    encode_machine,
    index_of,
    index_to_bits,
    machine_for_index,
)
from .universal import BudgetPolicy, CostedDecision, UniversalDecider
from .vm import Halt, MachineDescription, Move, RunOutcome, Symbol, TransitionTarget, run

__version__ = "0.1.0"

__all__ = [
    "BudgetPolicy",
    "CostedDecision",
    "DeciderIndex",
    "Halt",
    "MachineDescription",
    "Move",
    "RunOutcome",
    "Symbol",
    "TransitionTarget",
    "UniversalDecider",
    "bits_to_index",
    "bits_to_machine",
    "encode_machine",
    "index_of",
    "index_to_bits",
    "machine_for_index",
    "run",
]
