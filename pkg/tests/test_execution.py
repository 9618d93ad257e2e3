import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgaram.execution import (
    CostReport,
    Outcome,
    RunLimits,
    StepLimitExceeded,
    UndefinedCostError,
    apply,
    boc_instr,
    boc_src,
    check_computes,
    polynomial,
    run,
    space,
    use,
)
from pgaram.extraction import extract
from pgaram.memory import EMPTY_STATE, INOPERATIVE, MemoryState, Operative
from pgaram.pga import InstructionSequence, Opaque, Plain, seq
from pgaram.srram import Dir, Imm, Ind, parse_instruction
from pgaram.syntax import parse_sequence
from pgaram.threads import DEAD, STOP, TAU, Branch, depth, proj, unfold

import oracles
from strategies import A, random_memory, random_program, random_srram

P = parse_sequence
I = parse_instruction


def as_memory(regs):
    return INOPERATIVE if regs is None else Operative(MemoryState(regs))


def test_apply_examples():
    s = MemoryState({4: "1"})
    assert apply(STOP, Operative(s)) == Operative(s)
    assert apply(extract(P("mov:#1:0 ; !")), Operative(EMPTY_STATE)) == Operative({0: "1"})
    assert apply(DEAD, Operative(s)) is INOPERATIVE


def test_use_examples():
    assert unfold(use(STOP, Operative(EMPTY_STATE))) is STOP
    got = use(Branch(I("eq:#0:#0"), STOP, DEAD), Operative(EMPTY_STATE))
    assert unfold(got) is Branch(TAU, STOP, STOP)
    assert unfold(use(Branch(A, STOP, STOP), INOPERATIVE)) is Branch(TAU, DEAD, DEAD)


def test_use_of_tau_loop():
    t = use(extract(P("(mov:1:0 ; #0)*")), Operative(EMPTY_STATE))
    assert unfold(t) is Branch(TAU, DEAD, DEAD)


def test_boc_examples():
    assert boc_src(EMPTY_STATE, Imm(5)) == 3
    assert boc_src(MemoryState({3: "11"}), Dir(3)) == 4
    assert boc_src(EMPTY_STATE, Dir(0)) == 1
    assert boc_src(MemoryState({1: "01", 2: "111"}), Ind(1)) == 1 + 2 + 3
    assert boc_instr(EMPTY_STATE, I("add:#1:#1:0")) == 1
    assert boc_instr(MemoryState({1: "11"}), I("mul:1:1:0")) == 9
    assert boc_instr(EMPTY_STATE, I("not:#0:0")) == 1
    with pytest.raises(UndefinedCostError):
        boc_instr(EMPTY_STATE, A)


def test_space():
    s = MemoryState({0: "110", 1: "1", 4: "01"})
    assert space(s) == 4 + 2 + 5
    assert space(s, frozenset({1})) == 4 + 5
    assert space(EMPTY_STATE) == 1
    assert space(MemoryState({5: "1"})) == 1 + 3 + 1


def test_run_examples():
    mem, report, _ = run(P("(mov:1:0 ; !)*"), MemoryState({1: "10"}))
    assert mem == Operative({0: "10", 1: "10"})
    assert (report.uniform_steps, report.bit_cost, report.outcome) == (1, 3, Outcome.HALTED)

    mem, report, _ = run(P("(#0)*"))
    assert mem is INOPERATIVE
    assert (report.outcome, report.uniform_steps) == (Outcome.DEAD, 0)

    mem, report, _ = run(P("+eq:#0:#0 ; ! ; !"))
    assert report == CostReport(1, 1, 1, Outcome.HALTED)


def test_run_trace():
    _, report, trace = run(P("(add:0:#1:0 ; -gt:0:#2 ; #2 ; !)*"), trace=True)
    # count to three, testing after each increment
    assert report.outcome is Outcome.HALTED and report.uniform_steps == 6
    assert len(trace) == report.uniform_steps + 1
    assert trace[0].memory == EMPTY_STATE
    assert trace[-1].memory == MemoryState({0: "11"})


def test_opaque_action_has_no_bit_cost():
    inc = Opaque("inc", q=lambda m: m.write(0, "1"))
    mem, report, _ = run(seq(Plain(inc), *P("!").prefix))
    assert mem == Operative({0: "1"})
    assert report.bit_cost is None and report.uniform_steps == 1


def test_step_limit():
    loop = P("(add:0:#1:0)*")
    mem, report, _ = run(loop, limits=RunLimits(max_steps=50))
    assert report.outcome is Outcome.STEP_LIMIT and report.uniform_steps == 50
    assert mem == Operative({0: "010011"})  # 50, lsb first
    with pytest.raises(StepLimitExceeded) as info:
        apply(extract(loop), Operative(EMPTY_STATE), RunLimits(max_steps=7))
    assert info.value.report.uniform_steps == 7
    with pytest.raises(StepLimitExceeded):
        use(extract(loop), Operative(EMPTY_STATE), RunLimits(max_steps=7))
    with pytest.raises(ValueError):
        RunLimits(max_steps=0)


def test_memory_budget():
    grow = P("(shl:0:0 ; add:0:#1:0)*")
    _, report, _ = run(grow, limits=RunLimits(max_total_bits=20))
    assert report.outcome is Outcome.STEP_LIMIT


def test_check_computes_examples():
    ident = P("(mov:1:0 ; !)*")
    res = check_computes(ident, [(["110"], "110")], T=polynomial([1]), S=polynomial([1, 1]))
    assert res.passed
    assert res.results[0].report.peak_space == 4
    assert check_computes(P("(#0)*"), [(["1"], None)]).passed
    doubling = check_computes(P("(shl:1:0 ; !)*"), [(["1"], "01")])
    assert doubling.passed


def test_check_computes_failures():
    ident = P("(mov:1:0 ; !)*")
    assert check_computes(ident, [(["110"], "111")]).verdict == "fail"
    assert check_computes(ident, [(["110"], "110")], T=polynomial([0])).verdict == "fail"
    assert check_computes(ident, [(["110"], None)]).verdict == "fail"
    assert check_computes(P("(#0)*"), [(["1"], "1")]).verdict == "fail"
    # writes its input register
    clobber = P("(mov:1:0 ; mov:#0:1 ; !)*")
    res = check_computes(clobber, [(["1"], "1")], S=polynomial([10]))
    assert res.verdict == "fail"
    assert any("input" in r for r in res.results[0].reasons)


def test_check_computes_inconclusive():
    loop = P("(add:0:#1:0)*")
    res = check_computes(loop, [([""], None)], limits=RunLimits(max_steps=100))
    assert res.verdict == "inconclusive" and not res.passed


def test_polynomial():
    assert polynomial([1, 2, 3])(2) == 1 + 4 + 12
    assert polynomial([])(5) == 0


@given(st.integers(0, 10**6))
def test_repetition_free_agrees_with_axioms(seed):
    rng = random.Random(seed)
    xs, regs = random_program(rng), random_memory(rng)
    term = oracles.te(xs)
    t = extract(InstructionSequence(xs))
    m = Operative(MemoryState(regs))
    assert apply(t, m) == as_memory(oracles.apply(term, regs))
    assert oracles.tree_of(unfold(use(t, m))) == oracles.use(term, regs)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_monotone_in_step_limit(seed):
    rng = random.Random(seed)
    s, regs = random_srram(rng), random_memory(rng)
    mem1, r1, _ = run(s, MemoryState(regs), RunLimits(max_steps=40))
    mem2, r2, _ = run(s, MemoryState(regs), RunLimits(max_steps=400))
    if r1.outcome is not Outcome.STEP_LIMIT:
        assert (mem1, r1) == (mem2, r2)
    else:
        assert r2.uniform_steps >= r1.uniform_steps


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_outcome_matches_use_result(seed):
    rng = random.Random(seed)
    s, regs = random_srram(rng), random_memory(rng)
    limits = RunLimits(max_steps=200)
    _, report, _ = run(s, MemoryState(regs), limits)
    if report.outcome is Outcome.STEP_LIMIT:
        return
    residual = use(extract(s), Operative(MemoryState(regs)), limits)
    end = proj(len(residual) + 1, residual)
    while end is not STOP and end is not DEAD:
        end = end.then
    assert (report.outcome is Outcome.HALTED) == (end is STOP)
    if report.outcome is Outcome.HALTED:
        assert depth(unfold(residual)) == report.uniform_steps
