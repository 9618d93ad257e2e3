"""Instruction sequences as eventually periodic sequences of primitive instructions.

An :class:`InstructionSequence` is a finite ``prefix`` followed by a
``period`` repeated forever; an empty period means the sequence is finite.
Equality of the sequences denoted (the congruence generated by
associativity, ``(X^n)* = X*``, ``X*; Y = X*`` and ``(X;Y)* = X;(Y;X)*``)
is decided by comparing canonical forms.  :func:`jump_normalize`
additionally collapses chained jumps and shortens jumps.
"""

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

# basic instructions


class UnboundInstructionError(RuntimeError):
    """Raised when an opaque instruction without semantics is executed."""


@dataclass(frozen=True)
class Opaque:
    """A named basic instruction with caller-supplied semantics.

    ``p`` maps a memory state to the reply (0 or 1) and ``q`` maps it to the
    new state; a missing ``p`` always replies 1 and a missing ``q`` leaves
    the state unchanged.  Equality looks at the name only.
    """

    name: str
    p: Optional[Callable] = field(default=None, compare=False, repr=False)
    q: Optional[Callable] = field(default=None, compare=False, repr=False)

    def execute(self, state):
        if self.p is None and self.q is None:
            raise UnboundInstructionError(f"no semantics bound to basic instruction {self.name!r}")
        reply = 1 if self.p is None else int(self.p(state))
        new = state if self.q is None else self.q(state)
        return reply, new

    def __str__(self):
        return self.name


# primitive instructions


@dataclass(frozen=True)
class Plain:
    instr: object

    def __str__(self):
        return str(self.instr)


@dataclass(frozen=True)
class PosTest:
    instr: object

    def __str__(self):
        return f"+{self.instr}"


@dataclass(frozen=True)
class NegTest:
    instr: object

    def __str__(self):
        return f"-{self.instr}"


@dataclass(frozen=True)
class Jump:
    offset: int

    def __post_init__(self):
        if not isinstance(self.offset, int) or self.offset < 0:
            raise ValueError(f"jump offset must be a natural number, got {self.offset!r}")

    def __str__(self):
        return f"#{self.offset}"


@dataclass(frozen=True)
class Halt:
    def __str__(self):
        return "!"


HALT = Halt()

PrimitiveInstruction = Union[Plain, PosTest, NegTest, Jump, Halt]


@dataclass(frozen=True)
class InstructionSequence:
    prefix: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.prefix and not self.period:
            raise ValueError("instruction sequences are non-empty")

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def size(self) -> int:
        """Number of distinct positions (prefix plus one copy of the period)."""
        return len(self.prefix) + len(self.period)

    def position(self, k: int) -> Optional[int]:
        """Map an index into the unfolded sequence to a position, None past the end."""
        if k < len(self.prefix):
            return k
        if not self.period:
            return None
        return len(self.prefix) + (k - len(self.prefix)) % len(self.period)

    def __getitem__(self, k: int) -> PrimitiveInstruction:
        pos = self.position(k)
        if pos is None:
            raise IndexError(k)
        return (self.prefix + self.period)[pos]

    def unfold(self, n: int) -> list:
        """The first ``n`` instructions (fewer if the sequence is shorter)."""
        out = list(self.prefix[:n])
        if self.period:
            while len(out) < n:
                out.extend(self.period)
        return out[:n]

    def __str__(self):
        from .syntax import format_sequence

        return format_sequence(self)


def seq(*instrs: PrimitiveInstruction) -> InstructionSequence:
    """Finite sequence of the given instructions."""
    return InstructionSequence(instrs)


def cycle(*instrs: PrimitiveInstruction) -> InstructionSequence:
    """Repetition of the given instructions."""
    return repeat(InstructionSequence(instrs))


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def concat(s1: InstructionSequence, s2: InstructionSequence) -> InstructionSequence:
    if s1.period:
        return s1
    return InstructionSequence(s1.prefix + s2.prefix, s2.period)


def repeat(s: InstructionSequence) -> InstructionSequence:
    if s.period:
        return s
    return InstructionSequence((), _primitive_root(s.prefix))


def canonicalize(s: InstructionSequence) -> InstructionSequence:
    """Minimal prefix and primitive period for the same sequence.

    With a primitive period the minimal prefix also fixes the rotation of
    the period, so the result is unique.
    """
    prefix, period = list(s.prefix), _primitive_root(s.period)
    if period:
        period = list(period)
        while prefix and prefix[-1] == period[-1]:
            prefix.pop()
            period.insert(0, period.pop())
    return InstructionSequence(prefix, period)


def seq_equal(s1: InstructionSequence, s2: InstructionSequence) -> bool:
    return canonicalize(s1) == canonicalize(s2)


def _resolve_jump(s: InstructionSequence, pos: int):
    """Follow the jump chain starting at ``pos``.

    Returns ``("zero", None)`` when the chain reaches ``#0`` or loops,
    ``("at", p)`` when it lands on the non-jump position ``p``, and
    ``("past", k)`` when it leaves a finite sequence at unfolded index ``k``.
    """
    body = s.prefix + s.period
    seen = set()
    k = pos
    while True:
        p = s.position(k)
        if p is None:
            return "past", k
        u = body[p]
        if not isinstance(u, Jump):
            return "at", p
        if u.offset == 0 or p in seen:
            return "zero", None
        seen.add(p)
        k = p + u.offset


def _shortest_offset(s: InstructionSequence, pos: int, target: int) -> int:
    n = len(s.prefix)
    if target < n or pos < n:
        return target - pos
    return (target - pos) % len(s.period)


def _jump_pass(s: InstructionSequence) -> InstructionSequence:
    body = list(s.prefix + s.period)
    out = []
    for pos, u in enumerate(body):
        if isinstance(u, Jump) and u.offset:
            kind, where = _resolve_jump(s, pos)
            if kind == "zero":
                u = Jump(0)
            elif kind == "at":
                u = Jump(_shortest_offset(s, pos, where))
            else:
                u = Jump(where - pos)
        out.append(u)
    n = len(s.prefix)
    return InstructionSequence(out[:n], out[n:])


def jump_normalize(s: InstructionSequence) -> InstructionSequence:
    """Collapse jump chains and shorten jumps, on the canonical form.

    Chains ending in ``#0`` or looping become ``#0``; other jumps go straight
    to the first non-jump instruction of their chain by the shortest offset.
    The pass is repeated with re-canonicalisation until nothing changes.
    """
    current = canonicalize(s)
    while True:
        nxt = canonicalize(_jump_pass(current))
        if nxt == current:
            return current
        current = nxt


def struct_equal(s1: InstructionSequence, s2: InstructionSequence) -> bool:
    return jump_normalize(s1) == jump_normalize(s2)


def instructions(s: InstructionSequence) -> Iterable:
    """Basic instructions occurring in ``s``."""
    for u in s.prefix + s.period:
        if isinstance(u, (Plain, PosTest, NegTest)):
            yield u.instr
