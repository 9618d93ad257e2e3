import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgaram.memory import (
    EMPTY_STATE,
    INOPERATIVE,
    MemoryFormatError,
    MemoryState,
    Operative,
    format_memory,
    parse_memory,
    read,
    with_inputs,
    write,
)

from strategies import bit_strings


def test_read_empty():
    assert read(EMPTY_STATE, 7) == ""


def test_read_after_write():
    assert read(write(EMPTY_STATE, 3, "11"), 3) == "11"


def test_write_empty_erases():
    assert write(write(EMPTY_STATE, 3, "1"), 3, "") == EMPTY_STATE
    assert len(write(write(EMPTY_STATE, 3, "1"), 3, "")) == 0


def test_write_is_persistent():
    s = MemoryState({1: "1"})
    t = s.write(1, "0")
    assert s[1] == "1" and t[1] == "0"


def test_constructor_drops_empty():
    assert MemoryState({1: "", 2: "0"}) == MemoryState({2: "0"})


def test_rejects_bad_values():
    with pytest.raises(ValueError):
        MemoryState({-1: "1"})
    with pytest.raises(ValueError):
        MemoryState({1: "2"})


def test_with_inputs():
    assert with_inputs(["1", "", "01"]) == MemoryState({1: "1", 3: "01"})


def test_operative_and_inoperative():
    assert Operative(MemoryState({0: "1"})) == Operative({0: "1"})
    assert Operative(EMPTY_STATE) != INOPERATIVE
    assert not INOPERATIVE.operative


@given(st.dictionaries(st.integers(0, 1000), bit_strings, max_size=8))
def test_memory_file_roundtrip(regs):
    state = MemoryState(regs)
    text = format_memory(state)
    assert parse_memory(text) == state
    assert format_memory(parse_memory(text)) == text
    assert "" not in state.values()


def test_parse_memory_comments_and_leading_zeros():
    state = parse_memory("# header\n\n 2 = 0100 \n0=0 # zero\n5=\n")
    assert state == MemoryState({2: "0100", 0: "0"})
    assert format_memory(state) == "0=0\n2=0100\n"


@pytest.mark.parametrize("text", ["x=1", "1:1", "1=12", "1=1\n1=0"])
def test_parse_memory_errors(text):
    with pytest.raises(MemoryFormatError):
        parse_memory(text)
