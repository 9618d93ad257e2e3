"""Instruction sequences over RAM memories: program algebra, thread
extraction, SRRAM execution and its time and space measures."""

from .bits import bton, ntob
from .execution import (
    CostReport,
    Outcome,
    RunLimits,
    StepLimitExceeded,
    apply,
    boc_instr,
    boc_src,
    check_computes,
    polynomial,
    run,
    use,
)
from .extraction import behaviourally_equivalent, extract
from .memory import EMPTY_STATE, INOPERATIVE, MemoryState, Operative
from .pga import (
    HALT,
    InstructionSequence,
    Jump,
    NegTest,
    Opaque,
    Plain,
    PosTest,
    canonicalize,
    concat,
    jump_normalize,
    repeat,
    seq_equal,
    struct_equal,
)
from .srram import classify_program, parse_instruction, validate_conditions
from .syntax import format_sequence, parse_sequence
from .threads import DEAD, STOP, TAU, Branch, RegularThread, bisimilar, depth, proj

__version__ = "0.1.0"
