import pytest
from hypothesis import given

from pgaram.pga import HALT, InstructionSequence, Jump, NegTest, Opaque, Plain, PosTest, seq, seq_equal
from pgaram.srram import parse_instruction
from pgaram.syntax import ParseError, format_sequence, parse_sequence

from strategies import A, B, sequences

a, b = Plain(A), Plain(B)


def test_parse_basic_forms():
    assert parse_sequence("a ; +b ; -a ; #3 ; !") == seq(a, PosTest(B), NegTest(A), Jump(3), HALT)
    assert parse_sequence("(a;b)*") == InstructionSequence((), (a, b))
    assert parse_sequence("a ; (b)*") == InstructionSequence((a,), (b,))


def test_grouping_without_star():
    assert parse_sequence("(a ; b) ; a") == seq(a, b, a)


def test_nested_repetition_absorbs_tail():
    # X* ; Y = X*
    assert parse_sequence("(a)* ; b") == InstructionSequence((), (a,))
    assert seq_equal(parse_sequence("((a;b)* )*"), parse_sequence("(a;b)*"))


def test_srram_tokens():
    s = parse_sequence("(+eq:1:#0 ; #2 ; add:1:#1:1 ; !)*")
    assert s.period[0] == PosTest(parse_instruction("eq:1:#0"))
    assert s.period[2] == Plain(parse_instruction("add:1:#1:1"))


def test_bindings():
    inc = Opaque("inc", q=lambda m: m)
    s = parse_sequence("inc ; !", bindings={"inc": inc})
    assert s.prefix[0].instr is inc


def test_format():
    assert format_sequence(parse_sequence("( a ; b )*")) == "(a;b)*"
    assert format_sequence(seq(a, Jump(2), HALT)) == "a;#2;!"


@given(sequences(max_size=15))
def test_roundtrip(s):
    text = format_sequence(s)
    assert parse_sequence(text) == s
    assert format_sequence(parse_sequence(text)) == text


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("a ;", 1, 4),
        ("a ; $", 1, 5),
        ("(a ; b", 1, 7),
        ("a\n ; mov:#1:#2", 2, 4),
        ("a b", 1, 3),
        ("+ #1", 1, 3),
    ],
)
def test_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_sequence(text)
    assert (info.value.line, info.value.column) == (line, column)
