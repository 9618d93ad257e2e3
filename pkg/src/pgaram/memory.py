"""RAM memory states and the memory file format."""

from collections.abc import Iterable, Mapping

from .bits import EMPTY, BitString, check_bits


class MemoryState(Mapping):
    """Immutable map from register numbers to bit strings.

    Absent registers read as the empty bit string, and writing the empty
    string removes the entry, so two states are equal exactly when they
    agree on every register.  Iteration yields the registers in use.
    """

    __slots__ = ("_regs", "_hash")

    def __init__(self, registers=None):
        regs = {}
        if registers is not None:
            items = registers.items() if isinstance(registers, Mapping) else registers
            for i, w in items:
                i = _check_index(i)
                if check_bits(w):
                    regs[i] = w
                else:
                    regs.pop(i, None)
        self._regs = regs
        self._hash = None

    @classmethod
    def _wrap(cls, regs: dict) -> "MemoryState":
        state = cls.__new__(cls)
        state._regs = regs
        state._hash = None
        return state

    def __getitem__(self, i: int) -> BitString:
        return self._regs.get(i, EMPTY)

    def __contains__(self, i) -> bool:
        return i in self._regs

    def __iter__(self):
        return iter(sorted(self._regs))

    def __len__(self) -> int:
        return len(self._regs)

    def __eq__(self, other):
        if isinstance(other, MemoryState):
            return self._regs == other._regs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._regs.items()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{i}: {self._regs[i]!r}" for i in self)
        return f"MemoryState({{{inner}}})"

    def read(self, i: int) -> BitString:
        return self._regs.get(i, EMPTY)

    def write(self, i: int, w: BitString) -> "MemoryState":
        """Return a new state with register ``i`` set to ``w``."""
        if self._regs.get(i, EMPTY) == w:
            return self
        regs = dict(self._regs)
        if w:
            regs[_check_index(i)] = check_bits(w)
        else:
            regs.pop(i, None)
        return MemoryState._wrap(regs)

    def update(self, pairs) -> "MemoryState":
        regs = dict(self._regs)
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        for i, w in items:
            if check_bits(w):
                regs[_check_index(i)] = w
            else:
                regs.pop(i, None)
        return MemoryState._wrap(regs)

    def support(self) -> frozenset:
        return frozenset(self._regs)


EMPTY_STATE = MemoryState()


def _check_index(i) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or i < 0:
        raise ValueError(f"register index must be a natural number, got {i!r}")
    return i


def read(state: MemoryState, i: int) -> BitString:
    return state.read(i)


def write(state: MemoryState, i: int, w: BitString) -> MemoryState:
    return state.write(i, w)


def with_inputs(inputs: Iterable[BitString], base: MemoryState = EMPTY_STATE) -> MemoryState:
    """Load ``inputs`` into registers 1..n over ``base``."""
    return base.update((k, w) for k, w in enumerate(inputs, start=1))


class RamMemory:
    """Base for the two kinds of RAM memory: operative and inoperative."""

    __slots__ = ()
    operative = False


class Operative(RamMemory):
    __slots__ = ("state",)
    operative = True

    def __init__(self, state: MemoryState = EMPTY_STATE):
        if not isinstance(state, MemoryState):
            state = MemoryState(state)
        self.state = state

    def __eq__(self, other):
        return isinstance(other, Operative) and self.state == other.state

    def __hash__(self):
        return hash(("Operative", self.state))

    def __repr__(self):
        return f"Operative({self.state!r})"


class _Inoperative(RamMemory):
    __slots__ = ()

    def __repr__(self):
        return "INOPERATIVE"

    def __reduce__(self):
        return "INOPERATIVE"


INOPERATIVE = _Inoperative()


class MemoryFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_memory(text: str) -> MemoryState:
    """Parse ``INDEX=BITS`` lines; blank lines and ``#`` comments are skipped."""
    regs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        index, sep, bits = line.partition("=")
        index, bits = index.strip(), bits.strip()
        if not sep or not index.isdigit():
            raise MemoryFormatError(f"expected INDEX=BITS, got {raw.strip()!r}", lineno)
        i = int(index)
        if i in regs:
            raise MemoryFormatError(f"register {i} given twice", lineno)
        if not set(bits) <= {"0", "1"}:
            raise MemoryFormatError(f"bad bit string {bits!r}", lineno)
        regs[i] = bits
    return MemoryState(regs)


def format_memory(state: MemoryState) -> str:
    return "".join(f"{i}={state[i]}\n" for i in state)
