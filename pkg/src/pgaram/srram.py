"""The semi-realistic RAM instruction set.

Instructions are written ``binop:src1:src2:dst``, ``unop:src1:dst`` or
``cmpop:src1:src2``, where an operand is ``#i`` (immediate), ``i`` (direct)
or ``@i`` (indirect) and a destination is never immediate.  Every
instruction is a basic RAM instruction: either it always replies 1 and
writes one register, or it compares two values and leaves memory alone.
"""

import random
import re
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Union

from . import bits
from .bits import BitString, bton, ntob
from .memory import EMPTY_STATE, MemoryState

BINOPS = tuple(bits.BINARY_OPS)
UNOPS = tuple(bits.UNARY_OPS)
CMPOPS = ("eq", "gt")


@dataclass(frozen=True)
class Imm:
    index: int

    def __str__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class Dir:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class Ind:
    index: int

    def __str__(self):
        return f"@{self.index}"


Src = Union[Imm, Dir, Ind]
Dst = Union[Dir, Ind]


def val(state: MemoryState, s: Src) -> BitString:
    """Value of source operand ``s`` in ``state``."""
    if isinstance(s, Imm):
        return ntob(s.index)
    if isinstance(s, Dir):
        return state[s.index]
    return state[bton(state[s.index])]


def reg(state: MemoryState, d: Dst) -> int:
    """Register number designated by destination ``d`` in ``state``."""
    if isinstance(d, Dir):
        return d.index
    if isinstance(d, Ind):
        return bton(state[d.index])
    raise TypeError(f"not a destination: {d!r}")


class SrramInstruction:
    """Common behaviour of the three instruction forms."""

    __slots__ = ()
    op: str

    def reply(self, state: MemoryState) -> int:
        return 1

    def transform(self, state: MemoryState) -> MemoryState:
        return state

    def execute(self, state: MemoryState):
        """Return ``(reply, new_state)``."""
        return self.reply(state), self.transform(state)

    @property
    def sources(self) -> tuple:
        raise NotImplementedError


@dataclass(frozen=True)
class Binop(SrramInstruction):
    op: str
    s1: Src
    s2: Src
    d: Dst

    def __post_init__(self):
        if self.op not in bits.BINARY_OPS:
            raise ValueError(f"unknown binary operation {self.op!r}")
        _check_dst(self.d)

    def transform(self, state):
        result = bits.BINARY_OPS[self.op](val(state, self.s1), val(state, self.s2))
        return state.write(reg(state, self.d), result)

    @property
    def sources(self):
        return (self.s1, self.s2)

    def __str__(self):
        return f"{self.op}:{self.s1}:{self.s2}:{self.d}"


@dataclass(frozen=True)
class Unop(SrramInstruction):
    op: str
    s1: Src
    d: Dst

    def __post_init__(self):
        if self.op not in bits.UNARY_OPS:
            raise ValueError(f"unknown unary operation {self.op!r}")
        _check_dst(self.d)

    def transform(self, state):
        result = bits.UNARY_OPS[self.op](val(state, self.s1))
        return state.write(reg(state, self.d), result)

    @property
    def sources(self):
        return (self.s1,)

    def __str__(self):
        return f"{self.op}:{self.s1}:{self.d}"


@dataclass(frozen=True)
class Cmp(SrramInstruction):
    op: str
    s1: Src
    s2: Src

    def __post_init__(self):
        if self.op not in CMPOPS:
            raise ValueError(f"unknown comparison {self.op!r}")

    def reply(self, state):
        a = bton(val(state, self.s1))
        b = bton(val(state, self.s2))
        return int(a == b) if self.op == "eq" else int(a > b)

    @property
    def sources(self):
        return (self.s1, self.s2)

    def __str__(self):
        return f"{self.op}:{self.s1}:{self.s2}"


def _check_dst(d):
    if isinstance(d, Imm):
        raise ImmediateDestinationError(f"immediate destination {d}")
    if not isinstance(d, (Dir, Ind)):
        raise TypeError(f"not a destination: {d!r}")


def step(instr: SrramInstruction, state: MemoryState):
    """Execute one instruction: ``(reply, new_state)``."""
    return instr.execute(state)


# text form


class InstructionParseError(ValueError):
    """Base class for errors in the ``op:arg:arg`` token syntax."""


class MalformedInstructionError(InstructionParseError):
    pass


class ArityError(InstructionParseError):
    pass


class ImmediateDestinationError(InstructionParseError):
    pass


_ARG = re.compile(r"([#@]?)(\d+)\Z")


def _parse_arg(text: str, token: str) -> Src:
    m = _ARG.match(text)
    if not m:
        raise MalformedInstructionError(f"bad operand {text!r} in {token!r}")
    mode, index = m.groups()
    return {"#": Imm, "": Dir, "@": Ind}[mode](int(index))


def parse_instruction(text: str) -> SrramInstruction:
    """Parse ``OP:ARG:ARG[:ARG]``, e.g. ``add:#3:5:@2``."""
    token = text.strip()
    op, *fields = token.split(":")
    if op in BINOPS:
        arity = 3
    elif op in UNOPS:
        arity = 2
    elif op in CMPOPS:
        arity = 2
    else:
        raise MalformedInstructionError(f"unknown operation {op!r} in {token!r}")
    if len(fields) != arity:
        raise ArityError(f"{op} takes {arity} operands, got {len(fields)} in {token!r}")
    args = [_parse_arg(f, token) for f in fields]
    if op in CMPOPS:
        return Cmp(op, *args)
    if isinstance(args[-1], Imm):
        raise ImmediateDestinationError(f"immediate destination in {token!r}")
    if op in BINOPS:
        return Binop(op, *args)
    return Unop(op, *args)


def print_instruction(instr: SrramInstruction) -> str:
    return str(instr)


# conditions on basic RAM instructions


def OFUNC(state: MemoryState) -> int:
    return 1


def IFUNC(state: MemoryState) -> MemoryState:
    return state


class ConditionReport(NamedTuple):
    ok: bool
    condition: Optional[str] = None
    witness: Optional[MemoryState] = None
    registers: tuple = ()
    trials: int = 0

    def __str__(self):
        if self.ok:
            return f"no violation found in {self.trials} trials"
        regs = ", ".join(map(str, self.registers))
        return f"condition ({self.condition}) violated at {self.witness!r} (registers {regs})"


def _random_bits(rng: random.Random, max_len: int) -> BitString:
    n = rng.randint(0, max_len)
    return "".join(rng.choice("01") for _ in range(n))


def _perturbations(state: MemoryState, i: int, rng: random.Random, window: int):
    current = state[i]
    seen = {current}
    pool = ["", "0", "1", _random_bits(rng, window), _random_bits(rng, window)]
    pool += [state[j] for j in range(window)]
    pool += [ntob(j) for j in range(window)]
    pool += [current + "0", bits.add(current, "1")]
    for w in pool:
        if w not in seen:
            seen.add(w)
            yield w


def _reply_sensitive(p, state, window, rng):
    reply = p(state)
    out = []
    for i in range(window):
        for w in _perturbations(state, i, rng, window):
            if p(state.write(i, w)) != reply:
                out.append(i)
                break
    return out


def _changed(q, state: MemoryState):
    after = q(state)
    keys = state.support() | after.support()
    return sorted(i for i in keys if state[i] != after[i])


def validate_conditions(
    p: Callable[[MemoryState], int] = OFUNC,
    q: Callable[[MemoryState], MemoryState] = IFUNC,
    trials: int = 1000,
    window: int = 4,
    seed: Optional[int] = None,
) -> ConditionReport:
    """Search randomly for a state refuting conditions (a), (b) or (c).

    Registers ``0..window-1`` are filled with random bit strings of length at
    most ``window``.  For each register a handful of alternative contents is
    tried to find the registers the reply depends on.  Finding nothing is not
    a proof that the conditions hold.
    """
    rng = random.Random(seed)
    check_reply = p is not OFUNC
    check_state = q is not IFUNC
    for trial in range(trials):
        state = MemoryState(
            (i, _random_bits(rng, window)) for i in range(window) if rng.random() < 0.8
        )
        sensitive = _reply_sensitive(p, state, window, rng) if check_reply else []
        if len(sensitive) > 1:
            return ConditionReport(False, "a", state, tuple(sensitive), trial + 1)
        changed = _changed(q, state) if check_state else []
        if len(changed) > 1:
            return ConditionReport(False, "b", state, tuple(changed), trial + 1)
        if sensitive and changed and not set(sensitive) & set(changed):
            return ConditionReport(False, "c", state, tuple(sensitive + changed), trial + 1)
    return ConditionReport(True, trials=trials)


# program classes


class ProgramClass(NamedTuple):
    is_srram: bool
    is_standard: bool
    is_successor: bool


def _srram_units(period):
    """Split a period into SRRAM units, or return None if it does not fit."""
    from .pga import Halt, Jump, Plain, PosTest

    units = []
    k = 0
    while k < len(period):
        u = period[k]
        if isinstance(u, (Jump, Halt)):
            units.append(u)
            k += 1
        elif isinstance(u, Plain) and isinstance(u.instr, (Binop, Unop)):
            units.append(u)
            k += 1
        elif (
            isinstance(u, PosTest)
            and isinstance(u.instr, Cmp)
            and k + 1 < len(period)
            and isinstance(period[k + 1], Jump)
        ):
            units.append(u)
            k += 2
        else:
            return None
    return units


def _standard_op(instr) -> bool:
    return instr.op in ("add", "sub", "mov", "eq", "gt")


def _successor_op(instr) -> bool:
    if instr.op == "add":
        return instr.s2 == Imm(1)
    return instr.op in ("mov", "eq", "gt")


def classify_program(seq) -> ProgramClass:
    """Recognise SRRAM, standard RAM and successor RAM programs.

    An SRRAM program is a repetition ``(t1; ...; tn)*`` whose units are a
    non-comparison instruction, a positive comparison test followed by a
    jump, a jump, or a halt.  The check is made on the canonical form, so
    any term denoting the same instruction sequence is classified alike.
    """
    from .pga import canonicalize

    canon = canonicalize(seq)
    if canon.prefix or not canon.period or _srram_units(canon.period) is None:
        return ProgramClass(False, False, False)
    instrs = [u.instr for u in canon.period if hasattr(u, "instr")]
    standard = all(_standard_op(i) for i in instrs)
    successor = all(_successor_op(i) for i in instrs)
    return ProgramClass(True, standard, successor)


__all__ = [
    "Imm", "Dir", "Ind", "Src", "Dst", "SrramInstruction", "Binop", "Unop", "Cmp",
    "val", "reg", "step", "parse_instruction", "print_instruction",
    "InstructionParseError", "MalformedInstructionError", "ArityError",
    "ImmediateDestinationError", "OFUNC", "IFUNC", "ConditionReport",
    "validate_conditions", "ProgramClass", "classify_program", "EMPTY_STATE",
]
