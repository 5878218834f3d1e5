"""``.tmm`` machine files: a small line-oriented text format for machines.

::

    # comment
    machine flipper
    states q0 q1            # first name is the start state
    q0 0 -> q1 1 R
    q0 1 -> ACCEPT 1 R
    ...

Every (state, symbol) pair needs exactly one rule.  The parser reports all
problems it finds in one pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .vm import Halt, MachineDescription, Move, Symbol, TransitionTarget

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")
HALTS = {"ACCEPT": Halt.ACCEPT, "REJECT": Halt.REJECT}
MOVES = {"L": Move.LEFT, "R": Move.RIGHT}
SYMBOL_CHARS = "01_"
RESERVED = {"machine", "states", *HALTS}


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str
    token: str = ""

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class MachinefileError(ValueError):
    def __init__(self, errors: List[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


@dataclass(frozen=True)
class Rule:
    state: str
    symbol: Symbol
    target: str
    write: Symbol
    move: Move
    line: int
    state_col: int = 1
    target_col: int = 1


@dataclass
class MachinefileDocument:
    name: str
    states: List[str]
    rules: List[Rule]
    spans: Dict[str, int] = field(default_factory=dict)  # header keyword -> line

    def to_machine(self) -> MachineDescription:
        ids = {s: i for i, s in enumerate(self.states)}
        table: Dict[Tuple[int, int], TransitionTarget] = {}
        for r in self.rules:
            nxt = HALTS[r.target] if r.target in HALTS else ids[r.target]
            table[ids[r.state], r.symbol] = TransitionTarget(nxt, r.write, r.move)
        return MachineDescription(
            len(self.states),
            tuple(table[q, s] for q in range(len(self.states)) for s in Symbol),
            0,
        )


def _tokens(line: str) -> List[Tuple[int, str]]:
    """Whitespace-separated tokens with 1-based columns, comments stripped."""
    line = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def parse(text: str) -> MachinefileDocument:
    """Parse a machine file, raising :class:`MachinefileError` listing every problem."""
    errors: List[ParseError] = []
    name: Optional[str] = None
    states: List[str] = []
    rules: List[Rule] = []
    spans: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        col, head = toks[0]
        if head == "machine":
            if "machine" in spans:
                errors.append(ParseError(lineno, col, "duplicate machine header", head))
            spans["machine"] = lineno
            if len(toks) != 2 or not IDENT.match(toks[1][1]):
                bad = toks[1] if len(toks) > 1 else (col, head)
                errors.append(ParseError(lineno, bad[0], "expected 'machine <identifier>'", bad[1]))
            else:
                name = toks[1][1]
        elif head == "states":
            if "states" in spans:
                errors.append(ParseError(lineno, col, "duplicate states header", head))
                continue
            spans["states"] = lineno
            if len(toks) == 1:
                errors.append(ParseError(lineno, col, "expected at least one state name", head))
            for c, s in toks[1:]:
                if not IDENT.match(s) or s in RESERVED:
                    errors.append(ParseError(lineno, c, f"bad state name {s}", s))
                elif s in states:
                    errors.append(ParseError(lineno, c, f"duplicate state {s}", s))
                else:
                    states.append(s)
        else:
            rule = _parse_rule(lineno, toks, errors)
            if rule is not None:
                rules.append(rule)

    if "machine" not in spans:
        errors.append(ParseError(1, 1, "missing 'machine' header"))
    if "states" not in spans:
        errors.append(ParseError(1, 1, "missing 'states' header"))

    declared = set(states)
    seen: Dict[Tuple[str, Symbol], int] = {}
    for r in rules:
        if r.state not in declared:
            errors.append(ParseError(r.line, r.state_col, f"unknown state {r.state}", r.state))
        if r.target not in declared and r.target not in HALTS:
            errors.append(ParseError(r.line, r.target_col, f"unknown state {r.target}", r.target))
        key = (r.state, r.symbol)
        if key in seen:
            errors.append(ParseError(
                r.line, r.state_col,
                f"duplicate rule {r.state}/{r.symbol.to_char()} (first on line {seen[key]})",
                r.state,
            ))
        else:
            seen[key] = r.line
    states_line = spans.get("states", 1)
    for q in states:
        for s in Symbol:
            if (q, s) not in seen:
                errors.append(ParseError(states_line, 1, f"missing rule {q}/{s.to_char()}", q))

    if errors:
        errors.sort(key=lambda e: (e.line, e.column))
        raise MachinefileError(errors)
    return MachinefileDocument(name, states, rules, spans)


def _parse_rule(lineno: int, toks: List[Tuple[int, str]], errors: List[ParseError]) -> Optional[Rule]:
    if len(toks) != 6 or toks[2][1] != "->":
        col, tok = toks[0]
        errors.append(ParseError(
            lineno, col, "expected '<state> <symbol> -> <target> <write> <move>'", tok
        ))
        return None
    (c_st, state), (c_sym, sym), _, (c_t, target), (c_w, write), (c_m, move) = toks
    ok = True
    if len(sym) != 1 or sym not in SYMBOL_CHARS:
        errors.append(ParseError(lineno, c_sym, f"bad symbol {sym}", sym))
        ok = False
    if len(write) != 1 or write not in SYMBOL_CHARS:
        errors.append(ParseError(lineno, c_w, f"bad symbol {write}", write))
        ok = False
    if move not in MOVES:
        errors.append(ParseError(lineno, c_m, f"bad move {move}", move))
        ok = False
    if not ok:
        return None
    return Rule(
        state, Symbol.from_char(sym), target, Symbol.from_char(write), MOVES[move],
        lineno, c_st, c_t,
    )


def load(text: str) -> MachineDescription:
    return parse(text).to_machine()


def read(path) -> MachineDescription:
    with open(path, encoding="utf-8", newline="") as fh:
        return load(fh.read())


def serialize(m: MachineDescription, name: str = "machine") -> str:
    """Canonical source: states q0..q{m-1}, rules state-major in symbol order 0, 1, _."""
    if m.start_state != 0:
        raise ValueError("the format names the start state first; relabel so it is q0")
    lines = [f"machine {name}", "states " + " ".join(f"q{i}" for i in range(m.state_count))]
    for q in range(m.state_count):
        for s in Symbol:
            lines.append(f"q{q} {s.to_char()} -> {m.rule(q, s)}")
    return "\n".join(lines) + "\n"
