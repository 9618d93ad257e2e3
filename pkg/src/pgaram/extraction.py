"""The thread produced by an instruction sequence under execution."""

from .pga import Halt, InstructionSequence, Jump, NegTest, Plain, PosTest
from .threads import DEAD, STOP, RegularThread, bisimilar, tau_normalize


def _landing(s: InstructionSequence, k: int):
    """Resolve unfolded index ``k`` to a non-jump position, or DEAD.

    Jumps are followed transitively.  ``#0``, running off the end of a
    finite sequence and a cycle of jumps all mean inaction.
    """
    body = s.prefix + s.period
    seen = set()
    while True:
        pos = s.position(k)
        if pos is None:
            return DEAD
        u = body[pos]
        if not isinstance(u, Jump):
            return pos
        if u.offset == 0 or pos in seen:
            return DEAD
        seen.add(pos)
        k = pos + u.offset


def extract(s: InstructionSequence) -> RegularThread:
    """One node per reachable position, plus shared S and D nodes."""
    body = s.prefix + s.period

    def label(key):
        if key is DEAD or key is STOP:
            return key
        u = body[key]
        if isinstance(u, Halt):
            return STOP
        nxt = _landing(s, key + 1)
        if isinstance(u, Plain):
            return u.instr, nxt, nxt
        skip = _landing(s, key + 2)
        if isinstance(u, PosTest):
            return u.instr, nxt, skip
        if isinstance(u, NegTest):
            return u.instr, skip, nxt
        raise TypeError(f"not a primitive instruction: {u!r}")

    thread = RegularThread.build(_landing(s, 0), label)
    return tau_normalize(thread)


def behaviourally_equivalent(s1: InstructionSequence, s2: InstructionSequence) -> bool:
    return bisimilar(extract(s1), extract(s2))
