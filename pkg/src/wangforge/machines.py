"""Turing machines, elementary cellular automata and cyclic tag systems."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import InvalidRequest

__all__ = [
    "TuringMachine",
    "TmConfig",
    "Halted",
    "TmTrace",
    "tm_step",
    "tm_run",
    "EcaRule",
    "eca_rule_table",
    "eca_step",
    "eca_run",
    "Permutivity",
    "permutivity",
    "TagSystem",
    "TagState",
    "TagHalted",
    "TagTrace",
    "tag_step",
    "tag_run",
]

# --------------------------------------------------------------------------- Turing machines

_FORBIDDEN = set("(),")


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic single-tape machine given as 5-tuples ``(s, q, s2, q2, move)``.

    ``halt`` names the halting state; it never appears as a source state.
    """

    symbols: tuple[str, ...]
    blank: str
    states: tuple[str, ...]
    start: str
    rules: tuple[tuple[str, str, str, str, str], ...]
    halt: str = "HALT"
    program: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        states = tuple(self.states)
        if self.halt not in states:
            states = states + (self.halt,)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rules", tuple(tuple(r) for r in self.rules))
        if self.blank not in self.symbols:
            raise InvalidRequest(f"blank {self.blank!r} is not a tape symbol")
        if self.start not in states or self.start == self.halt:
            raise InvalidRequest(f"start state {self.start!r} must be a non-halting state")
        for name in self.symbols + states:
            if not name or _FORBIDDEN & set(name):
                raise InvalidRequest(f"symbol/state name {name!r} may not be empty or contain ( ) ,")
        program = {}
        for rule in self.rules:
            if len(rule) != 5:
                raise InvalidRequest(f"rule {rule!r} is not a 5-tuple")
            s, q, s2, q2, move = rule
            if s not in self.symbols or s2 not in self.symbols:
                raise InvalidRequest(f"rule {rule!r} uses an unknown symbol")
            if q not in states or q2 not in states:
                raise InvalidRequest(f"rule {rule!r} uses an unknown state")
            if q == self.halt:
                raise InvalidRequest("the halting state cannot have outgoing rules")
            if move not in ("L", "R"):
                raise InvalidRequest(f"move must be L or R, got {move!r}")
            if (s, q) in program:
                raise InvalidRequest(f"two rules for symbol {s!r} in state {q!r}")
            program[(s, q)] = (s2, q2, move)
        object.__setattr__(self, "program", program)

    @property
    def working_states(self) -> tuple[str, ...]:
        return tuple(q for q in self.states if q != self.halt)

    def to_dict(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "blank": self.blank,
            "states": list(self.states),
            "start": self.start,
            "rules": [list(r) for r in self.rules],
            "halt": self.halt,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> TuringMachine:
        try:
            return cls(
                tuple(doc["symbols"]),
                doc["blank"],
                tuple(doc["states"]),
                doc["start"],
                tuple(tuple(r) for r in doc["rules"]),
                doc.get("halt", "HALT"),
            )
        except KeyError as exc:
            raise InvalidRequest(f"machine description lacks {exc.args[0]!r}") from None

    @classmethod
    def from_json(cls, text: str) -> TuringMachine:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TmConfig:
    """Tape contents (non-blank cells only), head position, state and step count."""

    tape: tuple[tuple[int, str], ...]
    head: int
    state: str
    step: int = 0
    blank: str = "B"

    @classmethod
    def initial(cls, tm: TuringMachine, word: Iterable[str] = ()) -> TmConfig:
        return cls.from_cells(dict(enumerate(word)), 0, tm.start, 0, tm.blank)

    @classmethod
    def from_cells(cls, cells: Mapping[int, str], head: int, state: str, step: int, blank: str) -> TmConfig:
        tape = tuple(sorted((p, s) for p, s in cells.items() if s != blank))
        return cls(tape, head, state, step, blank)

    def read(self, pos: int) -> str:
        return dict(self.tape).get(pos, self.blank)

    def window(self, lo: int, hi: int) -> str:
        """Tape cells ``lo..hi-1`` joined (symbols are assumed single-character)."""
        cells = dict(self.tape)
        return "".join(cells.get(p, self.blank) for p in range(lo, hi))

    def restrict(self, lo: int, hi: int) -> TmConfig:
        return TmConfig(tuple((p, s) for p, s in self.tape if lo <= p < hi), self.head, self.state, self.step, self.blank)


@dataclass(frozen=True)
class Halted:
    """Terminal outcome; ``stuck`` marks a missing rule rather than a halting transition."""

    config: TmConfig
    stuck: bool = False


def tm_step(tm: TuringMachine, c: TmConfig) -> TmConfig | Halted:
    if c.state == tm.halt:
        raise InvalidRequest("configuration is already halted")
    rule = tm.program.get((c.read(c.head), c.state))
    if rule is None:
        return Halted(c, stuck=True)
    s2, q2, move = rule
    cells = dict(c.tape)
    cells[c.head] = s2
    nxt = TmConfig.from_cells(cells, c.head + (1 if move == "R" else -1), q2, c.step + 1, c.blank)
    return Halted(nxt) if q2 == tm.halt else nxt


@dataclass(frozen=True)
class TmTrace:
    configs: tuple[TmConfig, ...]
    halted: bool
    stuck: bool = False

    @property
    def steps(self) -> int:
        return self.configs[-1].step


def tm_run(tm: TuringMachine, word: Iterable[str], max_steps: int) -> TmTrace:
    """Configurations c0..ck, stopping at a halt or after ``max_steps`` transitions."""
    if max_steps < 1:
        raise InvalidRequest("max_steps must be at least 1")
    word = tuple(word)
    for s in word:
        if s not in tm.symbols:
            raise InvalidRequest(f"input symbol {s!r} is not a tape symbol")
    c = TmConfig.initial(tm, word)
    configs = [c]
    for _ in range(max_steps):
        nxt = tm_step(tm, c)
        if isinstance(nxt, Halted):
            if nxt.stuck:
                return TmTrace(tuple(configs), True, True)
            configs.append(nxt.config)
            return TmTrace(tuple(configs), True)
        configs.append(nxt)
        c = nxt
    return TmTrace(tuple(configs), False)


# --------------------------------------------------------------------------- ECA


@dataclass(frozen=True)
class EcaRule:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= 255:
            raise InvalidRequest(f"ECA rule must be an integer 0..255, got {self.n!r}")

    def table(self, a: int, b: int, c: int) -> int:
        return (self.n >> (4 * a + 2 * b + c)) & 1


def _rule(rule) -> EcaRule:
    return rule if isinstance(rule, EcaRule) else EcaRule(int(rule))


def eca_rule_table(rule) -> dict[str, int]:
    """Neighbourhood string (``"111"`` .. ``"000"``) to output bit, highest first."""
    r = _rule(rule)
    return {f"{k:03b}": r.table(k >> 2, (k >> 1) & 1, k & 1) for k in range(7, -1, -1)}


def _bits(row: str) -> list[int]:
    if not row or set(row) - {"0", "1"}:
        raise InvalidRequest(f"row must be a non-empty bit string, got {row!r}")
    return [int(ch) for ch in row]


def eca_step(rule, row: str, boundary: str = "zero") -> str:
    """One synchronous update; ``boundary`` is ``"zero"`` (padding) or ``"wrap"``."""
    r = _rule(rule)
    cells = _bits(row)
    n = len(cells)
    if boundary == "zero":
        padded = [0] + cells + [0]
    elif boundary == "wrap":
        padded = [cells[-1]] + cells + [cells[0]]
    else:
        raise InvalidRequest(f"unknown boundary policy {boundary!r}")
    return "".join(str(r.table(padded[i], padded[i + 1], padded[i + 2])) for i in range(n))


def eca_run(rule, row: str, steps: int, boundary: str = "zero") -> list[str]:
    """``steps`` rows of the space-time diagram, the initial row first."""
    if steps < 1:
        raise InvalidRequest("steps must be at least 1")
    rows = [row]
    _bits(row)
    for _ in range(steps - 1):
        rows.append(eca_step(rule, rows[-1], boundary))
    return rows


class Permutivity(Enum):
    LEFTMOST = "Leftmost"
    RIGHTMOST = "Rightmost"
    BOTH = "Both"
    NEITHER = "Neither"

    @property
    def chaotic(self) -> bool:
        return self is not Permutivity.NEITHER


def permutivity(rule) -> Permutivity:
    r = _rule(rule)
    pairs = [(x, y) for x in (0, 1) for y in (0, 1)]
    left = all(r.table(0, b, c) != r.table(1, b, c) for b, c in pairs)
    right = all(r.table(a, b, 0) != r.table(a, b, 1) for a, b in pairs)
    if left and right:
        return Permutivity.BOTH
    if left:
        return Permutivity.LEFTMOST
    if right:
        return Permutivity.RIGHTMOST
    return Permutivity.NEITHER


# --------------------------------------------------------------------------- cyclic tag systems


@dataclass(frozen=True)
class TagSystem:
    productions: tuple[str, ...]

    def __post_init__(self):
        prods = tuple(self.productions)
        if not prods:
            raise InvalidRequest("a cyclic tag system needs at least one production")
        for p in prods:
            if set(p) - {"0", "1"}:
                raise InvalidRequest(f"production {p!r} is not a bit string")
        object.__setattr__(self, "productions", prods)


@dataclass(frozen=True)
class TagState:
    i: int
    d: str


@dataclass(frozen=True)
class TagHalted:
    state: TagState


def tag_step(system: TagSystem, st: TagState) -> TagState | TagHalted:
    if not st.d:
        return TagHalted(st)
    head, rest = st.d[0], st.d[1:]
    if head == "1":
        rest += system.productions[st.i]
    return TagState((st.i + 1) % len(system.productions), rest)


@dataclass(frozen=True)
class TagTrace:
    states: tuple[TagState, ...]
    halted: bool

    @property
    def data(self) -> list[str]:
        return [s.d for s in self.states]


def tag_run(system, d0: str, max_steps: int) -> TagTrace:
    """Up to ``max_steps`` states, the initial one first; halts once the data string is empty."""
    if not isinstance(system, TagSystem):
        system = TagSystem(tuple(system))
    if set(d0) - {"0", "1"}:
        raise InvalidRequest(f"data string {d0!r} is not a bit string")
    if max_steps < 1:
        raise InvalidRequest("max_steps must be at least 1")
    states = [TagState(0, d0)]
    while len(states) < max_steps:
        nxt = tag_step(system, states[-1])
        if isinstance(nxt, TagHalted):
            return TagTrace(tuple(states), True)
        states.append(nxt)
    return TagTrace(tuple(states), not states[-1].d)
