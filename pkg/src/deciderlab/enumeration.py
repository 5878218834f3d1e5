"""Total enumeration of deciders: natural number <-> bit string <-> machine.

Indices map to bit strings in shortlex order ("", "0", "1", "00", ...).  A
bit string encodes a machine as

    header   Elias-gamma code of the state count m
    rows     3*m rows, state-major, symbol order 0, 1, _; each row is
               target  ceil(log2(m+2)) bits: 0..m-1 state, m ACCEPT, m+1 REJECT
               write   2 bits: 00 -> 0, 01 -> 1, 10 -> _   (11 is malformed)
               move    1 bit:  0 -> L, 1 -> R

The start state is always 0.  Any string that does not parse exactly (short,
trailing bits, out-of-range target, write code 11) decodes to the trivial
rejector, so every index names a decider.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .vm import Halt, MachineDescription, Move, Symbol, TransitionTarget
from .zoo import TRIVIAL_REJECTOR


@dataclass(frozen=True, order=True)
class DeciderIndex:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("decider index must be non-negative")

    @property
    def bits(self) -> str:
        return index_to_bits(self.value)

    @property
    def bit_length(self) -> int:
        return bit_length(self.value)


def bit_length(d: int) -> int:
    """|d|: length of the shortlex string for d, i.e. floor(log2(d+1))."""
    return (d + 1).bit_length() - 1


def index_to_bits(d: int) -> str:
    if d < 0:
        raise ValueError("index must be non-negative")
    return bin(d + 1)[3:]


def bits_to_index(bits: str) -> int:
    if any(c not in "01" for c in bits):
        raise ValueError(f"not a bit string: {bits!r}")
    return int("1" + bits, 2) - 1


def target_width(m: int) -> int:
    return (m + 1).bit_length()  # == ceil(log2(m + 2))


def gamma_encode(n: int) -> str:
    if n < 1:
        raise ValueError("Elias gamma encodes positive integers only")
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


def encode_machine(m: MachineDescription) -> str:
    if m.start_state != 0:
        raise ValueError("the encoding fixes the start state to 0")
    n = m.state_count
    w = target_width(n)
    out = [gamma_encode(n)]
    for t in m.transitions:
        if t.next == Halt.ACCEPT:
            code = n
        elif t.next == Halt.REJECT:
            code = n + 1
        else:
            code = int(t.next)
        out.append(format(code, f"0{w}b"))
        out.append(format(int(t.write), "02b"))
        out.append("1" if t.move == Move.RIGHT else "0")
    return "".join(out)


def decode(bits: str) -> Optional[MachineDescription]:
    """Strict decoder: the machine, or ``None`` if ``bits`` is malformed."""
    zeros = 0
    while zeros < len(bits) and bits[zeros] == "0":
        zeros += 1
    end = 2 * zeros + 1
    if end > len(bits):
        return None
    m = int(bits[zeros:end], 2)
    w = target_width(m)
    row = w + 3
    if len(bits) - end != 3 * m * row:
        return None
    transitions = []
    pos = end
    for _ in range(3 * m):
        code = int(bits[pos:pos + w], 2)
        write = int(bits[pos + w:pos + w + 2], 2)
        move = bits[pos + w + 2]
        pos += row
        if code > m + 1 or write == 3:
            return None
        if code == m:
            nxt = Halt.ACCEPT
        elif code == m + 1:
            nxt = Halt.REJECT
        else:
            nxt = code
        transitions.append(
            TransitionTarget(nxt, Symbol(write), Move.RIGHT if move == "1" else Move.LEFT)
        )
    return MachineDescription(m, tuple(transitions), 0)


def bits_to_machine(bits: str) -> MachineDescription:
    machine = decode(bits)
    return TRIVIAL_REJECTOR if machine is None else machine


@lru_cache(maxsize=1 << 16)
def machine_for_index(d: int) -> MachineDescription:
    return bits_to_machine(index_to_bits(d))


def is_fallback(d: int) -> bool:
    """True when index ``d`` is malformed and names the rejector by default."""
    return decode(index_to_bits(d)) is None


def index_of(m: MachineDescription) -> int:
    """The unique index whose bit string is the canonical encoding of ``m``."""
    return bits_to_index(encode_machine(m))


def first_valid_index(start: int = 0) -> int:
    """Smallest d >= start whose bit string is a well-formed encoding."""
    d = start
    while is_fallback(d):
        d += 1
    return d


#: Shortest well-formed encoding: header "1" plus three 5-bit rows.
MIN_ENCODING_LENGTH = 16

#: Indices whose bit strings are 16 bits with header "1": every one-state
#: machine lives here (5832 of these 32768 strings are well formed).
ONE_STATE_RANGE = (98303, 131071)
