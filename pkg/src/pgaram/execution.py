"""Running threads against RAM memories, with time and space accounting.

:func:`apply` gives the memory a thread leaves behind, :func:`use` the
residual thread in which every executed basic action has become ``tau``.
:func:`run` does both for an instruction sequence and reports the uniform
step count, the bit-oriented cost and the peak space of the run.
"""

import enum
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence

from .bits import BitString, bton, nat_len
from .extraction import extract
from .memory import EMPTY_STATE, INOPERATIVE, MemoryState, Operative, RamMemory, with_inputs
from .pga import InstructionSequence
from .srram import Binop, Cmp, Imm, Ind, SrramInstruction, Src, Unop
from .threads import DEAD, STOP, TAU, Node, RegularThread, from_tree


class Outcome(enum.Enum):
    HALTED = "halted"
    DEAD = "dead"
    STEP_LIMIT = "step_limit"

    def __str__(self):
        return self.value


class UndefinedCostError(ValueError):
    """The bit-oriented cost is only defined for SRRAM instructions."""


class StepLimitExceeded(RuntimeError):
    """The run was cut off before it halted or became inactive."""

    def __init__(self, message, report: "CostReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class RunLimits:
    max_steps: int = 100_000
    max_total_bits: Optional[int] = None

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class CostReport:
    """Accounting for one run.

    When ``outcome`` is not HALTED the counts are lower bounds taken at the
    point where the run stopped.  ``bit_cost`` is None if an instruction
    without a bit-oriented cost was executed.
    """

    uniform_steps: int
    bit_cost: Optional[int]
    peak_space: int
    outcome: Outcome

    def as_dict(self) -> dict:
        return {
            "uniform_steps": self.uniform_steps,
            "bit_cost": self.bit_cost,
            "peak_space": self.peak_space,
            "outcome": self.outcome.value,
        }


class Configuration(NamedTuple):
    node: int
    memory: MemoryState


# bit-oriented cost


def boc_src(state: MemoryState, s: Src) -> int:
    cost = nat_len(s.index)
    if isinstance(s, Imm):
        return cost
    content = state[s.index]
    cost += len(content)
    if isinstance(s, Ind):
        cost += len(state[bton(content)])
    return cost


def boc_instr(state: MemoryState, instr) -> int:
    """Bit-oriented cost of executing ``instr`` in ``state``."""
    if isinstance(instr, Binop):
        a, b = boc_src(state, instr.s1), boc_src(state, instr.s2)
        return a * b if instr.op in ("mul", "div") else max(a, b)
    if isinstance(instr, Unop):
        return boc_src(state, instr.s1)
    if isinstance(instr, Cmp):
        return max(boc_src(state, instr.s1), boc_src(state, instr.s2))
    raise UndefinedCostError(f"no bit-oriented cost for {instr}")


def space(state: MemoryState, inputs=frozenset()) -> int:
    """Bits in use outside the input registers, register numbers included.

    Registers holding the empty string are not in use, except the output
    register 0, which is always counted.
    """
    used = set(state) | {0}
    return sum(nat_len(i) + len(state[i]) for i in used if i not in inputs)


def _total_bits(state: MemoryState) -> int:
    return sum(len(state[i]) for i in state)


# the engine


@dataclass
class _Run:
    outcome: Outcome
    memory: RamMemory
    state: Optional[MemoryState]
    steps: int = 0
    bit_cost: Optional[int] = 0
    peak_space: int = 0
    taus: int = 0
    tau_loop: Optional[int] = None
    inputs_written: bool = False
    trace: List[Configuration] = field(default_factory=list)
    reason: str = ""

    @property
    def report(self) -> CostReport:
        return CostReport(self.steps, self.bit_cost, self.peak_space, self.outcome)

    def residual(self) -> RegularThread:
        """The thread left by :func:`use`: taus ending in S, D or a tau loop."""
        nodes = [Node(TAU, k + 1, k + 1) for k in range(self.taus)]
        if self.tau_loop is not None:
            nodes[-1] = Node(TAU, self.tau_loop, self.tau_loop)
        else:
            nodes.append(STOP if self.outcome is Outcome.HALTED else DEAD)
        return RegularThread(nodes)


def _graph(t) -> RegularThread:
    return t if isinstance(t, RegularThread) else from_tree(t)


def _execute(t, memory: RamMemory, limits: RunLimits, inputs=frozenset(), trace=False) -> _Run:
    g = _graph(t)
    state = memory.state if memory.operative else None
    run = _Run(Outcome.STEP_LIMIT, INOPERATIVE, state)
    if state is not None:
        run.peak_space = space(state, inputs)
    node = 0
    if trace and state is not None:
        run.trace.append(Configuration(node, state))
    tau_seen = {}
    while True:
        lab = g.nodes[node]
        if lab is STOP:
            run.outcome = Outcome.HALTED
            run.memory = Operative(state) if state is not None else INOPERATIVE
            break
        if lab is DEAD:
            run.outcome = Outcome.DEAD
            break
        if lab.action is TAU:
            if node in tau_seen:
                # tau cycle: no basic action will ever be performed again
                run.outcome = Outcome.DEAD
                run.tau_loop = tau_seen[node]
                break
            tau_seen[node] = run.taus
            run.taus += 1
            node = lab.then
            continue
        if state is None:
            run.taus += 1
            run.outcome = Outcome.DEAD
            break
        if run.steps >= limits.max_steps:
            run.reason = f"step limit {limits.max_steps} reached"
            break
        action = lab.action
        if run.bit_cost is not None:
            if isinstance(action, SrramInstruction):
                run.bit_cost += boc_instr(state, action)
            else:
                run.bit_cost = None
        reply, new = action.execute(state)
        if inputs and not run.inputs_written:
            run.inputs_written = any(new[i] != state[i] for i in inputs)
        if new is not state:
            run.peak_space = max(run.peak_space, space(new, inputs))
        state = new
        run.state = state
        run.steps += 1
        run.taus += 1
        tau_seen.clear()
        node = lab.then if reply else lab.else_
        if trace:
            run.trace.append(Configuration(node, state))
        if limits.max_total_bits is not None and _total_bits(state) > limits.max_total_bits:
            run.reason = f"memory exceeds {limits.max_total_bits} bits"
            if g.nodes[node] is not STOP:
                break
    return run


def _checked(run: _Run) -> _Run:
    if run.outcome is Outcome.STEP_LIMIT:
        raise StepLimitExceeded(run.reason, run.report)
    return run


def apply(t, m: RamMemory, limits: RunLimits = RunLimits()) -> RamMemory:
    """Memory left after ``t`` acts on ``m``; inactivity gives INOPERATIVE."""
    return _checked(_execute(t, m, limits)).memory


def use(t, m: RamMemory, limits: RunLimits = RunLimits()) -> RegularThread:
    """Residual thread after ``m`` has answered every basic action of ``t``."""
    return _checked(_execute(t, m, limits)).residual()


def run(
    s: InstructionSequence,
    initial: MemoryState = EMPTY_STATE,
    limits: RunLimits = RunLimits(),
    inputs: int = 0,
    trace: bool = False,
):
    """Execute ``s`` from ``initial``.

    ``inputs`` is the number of input registers (1..n), excluded from the
    space measure.  Returns ``(memory, report, trace)``; on a step limit the
    memory is the operative state at the cut-off and the report says so.
    """
    r = _execute(extract(s), Operative(initial), limits, frozenset(range(1, inputs + 1)), trace)
    memory = r.memory
    if r.outcome is Outcome.STEP_LIMIT:
        memory = Operative(r.state)
    return memory, r.report, r.trace


# computing functions


class Case(NamedTuple):
    inputs: Sequence[BitString]
    expected: Optional[BitString]


@dataclass(frozen=True)
class CaseResult:
    case: Case
    verdict: str  # "pass", "fail" or "inconclusive"
    report: CostReport
    reasons: tuple = ()


@dataclass(frozen=True)
class CheckReport:
    results: tuple

    @property
    def verdict(self) -> str:
        verdicts = {r.verdict for r in self.results}
        if "fail" in verdicts:
            return "fail"
        if "inconclusive" in verdicts:
            return "inconclusive"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def polynomial(coefficients: Sequence[int]) -> Callable[[int], int]:
    """``n -> sum(c_i * n**i)``."""
    coefficients = tuple(coefficients)

    def bound(n: int) -> int:
        return sum(c * n**i for i, c in enumerate(coefficients))

    return bound


def check_case(
    s: InstructionSequence,
    case: Case,
    T: Optional[Callable[[int], int]] = None,
    S: Optional[Callable[[int], int]] = None,
    measure: str = "uniform",
    limits: RunLimits = RunLimits(),
) -> CaseResult:
    inputs, expected = case
    case = Case(tuple(inputs), expected)
    size = sum(len(w) for w in inputs)
    r = _execute(
        extract(s),
        Operative(with_inputs(inputs)),
        limits,
        frozenset(range(1, len(inputs) + 1)),
    )
    report = r.report
    if r.outcome is Outcome.STEP_LIMIT:
        return CaseResult(case, "inconclusive", report, (r.reason,))
    reasons = []
    if expected is None:
        if r.memory is not INOPERATIVE:
            reasons.append("expected no result but the program halted")
        return CaseResult(case, "fail" if reasons else "pass", report, tuple(reasons))
    if r.outcome is not Outcome.HALTED:
        reasons.append("program became inactive")
        return CaseResult(case, "fail", report, tuple(reasons))
    got = r.memory.state[0]
    if got != expected:
        reasons.append(f"register 0 holds {got!r}, expected {expected!r}")
    if T is not None:
        if measure == "uniform":
            time, label = report.uniform_steps, "uniform time"
        elif measure in ("bit", "bit_oriented"):
            time, label = report.bit_cost, "bit-oriented time"
        else:
            raise ValueError(f"unknown measure {measure!r}")
        if time is None:
            reasons.append("bit-oriented cost undefined for this program")
        elif time > T(size):
            reasons.append(f"{label} {time} exceeds bound {T(size)}")
    if S is not None:
        if report.peak_space > S(size):
            reasons.append(f"space {report.peak_space} exceeds bound {S(size)}")
        if r.inputs_written:
            reasons.append("an input register was changed")
    return CaseResult(case, "fail" if reasons else "pass", report, tuple(reasons))


def check_computes(
    s: InstructionSequence,
    cases,
    T: Optional[Callable[[int], int]] = None,
    S: Optional[Callable[[int], int]] = None,
    measure: str = "uniform",
    limits: RunLimits = RunLimits(),
) -> CheckReport:
    """Check that ``s`` computes a function on the given cases.

    Each case is ``(inputs, expected)`` with ``expected`` None where the
    function is undefined.  A case that hits the step limit is
    inconclusive, never a pass.
    """
    results = tuple(check_case(s, Case(*c), T, S, measure, limits) for c in cases)
    return CheckReport(results)
