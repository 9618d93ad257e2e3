"""Bit strings over {0, 1}, read least significant bit first.

A bit string is a plain ``str`` of ``'0'``/``'1'`` characters.  Index 0 is
the least significant bit, so ``"01"`` denotes the number 2.  The empty
string is a legitimate value (an unused register) and is distinct from
``"0"`` (the number zero).  High-index zeros ("leading zeros") are kept.
"""

from itertools import zip_longest

BitString = str

EMPTY: BitString = ""

_BITS = frozenset("01")


def is_bits(w) -> bool:
    return isinstance(w, str) and _BITS.issuperset(w)


def check_bits(w) -> BitString:
    """Return ``w`` unchanged, raising ``ValueError`` if it is not a bit string."""
    if not is_bits(w):
        raise ValueError(f"not a bit string: {w!r}")
    return w


def ntob(n: int) -> BitString:
    """Shortest bit string for natural ``n``; ``ntob(0) == "0"``."""
    if n < 0:
        raise ValueError(f"ntob is defined on naturals, got {n}")
    return format(n, "b")[::-1]


def bton(w: BitString) -> int:
    """Natural number denoted by ``w``; ``bton("") == 0``, leading zeros ignored."""
    if not w:
        return 0
    return int(w[::-1], 2)


def strip(w: BitString) -> BitString:
    """``w`` without leading zeros, i.e. ``ntob(bton(w))``."""
    return ntob(bton(w))


def nat_len(i: int) -> int:
    """Length of a register index, ``len(ntob(i))``."""
    return i.bit_length() or 1


# arithmetic: operands may carry leading zeros, results never do

def add(w1: BitString, w2: BitString) -> BitString:
    return ntob(bton(w1) + bton(w2))


def monus(w1: BitString, w2: BitString) -> BitString:
    return ntob(max(bton(w1) - bton(w2), 0))


def mul(w1: BitString, w2: BitString) -> BitString:
    return ntob(bton(w1) * bton(w2))


def divz(w1: BitString, w2: BitString) -> BitString:
    d = bton(w2)
    return ntob(bton(w1) // d if d else 0)


# logical: the shorter operand is padded with high zeros

def _pointwise(table, w1: BitString, w2: BitString) -> BitString:
    return "".join(table[a + b] for a, b in zip_longest(w1, w2, fillvalue="0"))


_AND = {"00": "0", "01": "0", "10": "0", "11": "1"}
_OR = {"00": "0", "01": "1", "10": "1", "11": "1"}
_XOR = {"00": "0", "01": "1", "10": "1", "11": "0"}


def band(w1: BitString, w2: BitString) -> BitString:
    return _pointwise(_AND, w1, w2)


def bor(w1: BitString, w2: BitString) -> BitString:
    return _pointwise(_OR, w1, w2)


def bxor(w1: BitString, w2: BitString) -> BitString:
    return _pointwise(_XOR, w1, w2)


def bnot(w: BitString) -> BitString:
    return w.translate(str.maketrans("01", "10"))


# shifts and rotations; all map the empty string to itself

def shl(w: BitString) -> BitString:
    return "0" + w if w else w


def shr(w: BitString) -> BitString:
    return w[1:]


def rol(w: BitString) -> BitString:
    """Move the last (most significant) bit to the front."""
    return w[-1:] + w[:-1]


def ror(w: BitString) -> BitString:
    """Move the first (least significant) bit to the back."""
    return w[1:] + w[:1]


def identity(w: BitString) -> BitString:
    return w


BINARY_OPS = {
    "add": add,
    "sub": monus,
    "mul": mul,
    "div": divz,
    "and": band,
    "or": bor,
    "xor": bxor,
}

UNARY_OPS = {
    "not": bnot,
    "shl": shl,
    "shr": shr,
    "rol": rol,
    "ror": ror,
    "mov": identity,
}

_ARITH = {"add": add, "monus": monus, "mul": mul, "divz": divz}
_BITWISE = {"and": band, "or": bor, "xor": bxor}
_SHIFT = {"shl": shl, "shr": shr, "rol": rol, "ror": ror}


def arith(op: str, w1: BitString, w2: BitString) -> BitString:
    """Dispatch ``op`` in ``{"add", "monus", "mul", "divz"}``."""
    return _ARITH[op](w1, w2)


def bitwise(op: str, w1: BitString, w2: BitString) -> BitString:
    return _BITWISE[op](w1, w2)


def shift(op: str, w: BitString) -> BitString:
    return _SHIFT[op](w)
