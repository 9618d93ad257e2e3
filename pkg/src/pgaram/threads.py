"""Threads: finite behaviour trees and regular behaviour graphs.

A finite thread is a tree built from :data:`STOP`, :data:`DEAD` and
:class:`Branch` nodes ``Branch(action, then, else_)``; it performs
``action`` and continues with ``then`` on reply 1 and ``else_`` on reply 0.
Branch nodes are hash-consed, so equal trees are the same object and
comparison is constant time even for exponentially large projections.

A :class:`RegularThread` is a finite graph whose node 0 is the root.
Two regular threads are equal as behaviours when they are bisimilar,
which for these deterministic graphs is the same as agreeing on every
finite projection.
"""

import re
import weakref
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Optional, Union


class _Leaf:
    __slots__ = ("symbol",)

    def __init__(self, symbol):
        self.symbol = symbol

    def __repr__(self):
        return "STOP" if self.symbol == "S" else "DEAD"

    def __str__(self):
        return self.symbol

    def __reduce__(self):
        return repr(self)


STOP = _Leaf("S")
DEAD = _Leaf("D")


class _Tau:
    __slots__ = ()

    def __repr__(self):
        return "TAU"

    def __str__(self):
        return "tau"

    def __reduce__(self):
        return "TAU"


TAU = _Tau()


class Branch:
    """Postconditional composition of two finite threads (hash-consed)."""

    __slots__ = ("action", "then", "else_", "__weakref__")
    _table = weakref.WeakValueDictionary()

    def __new__(cls, action, then, else_):
        key = (action, id(then), id(else_))
        node = cls._table.get(key)
        if node is None:
            node = object.__new__(cls)
            node.action = action
            node.then = then
            node.else_ = else_
            cls._table[key] = node
        return node

    def __repr__(self):
        return f"Branch({self.action!r}, {self.then!r}, {self.else_!r})"

    def __reduce__(self):
        return Branch, (self.action, self.then, self.else_)


FiniteThread = Union[_Leaf, Branch]


def prefix(action, thread: FiniteThread) -> Branch:
    """``action`` followed by ``thread`` whatever the reply."""
    return Branch(action, thread, thread)


def depth(t: FiniteThread) -> int:
    """Maximum number of actions (tau included) performed before S or D."""
    memo = {}
    stack = [t]
    while stack:
        node = stack[-1]
        if isinstance(node, _Leaf):
            memo[id(node)] = 0
            stack.pop()
            continue
        pending = [c for c in (node.then, node.else_) if id(c) not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[id(node)] = 1 + max(memo[id(node.then)], memo[id(node.else_)])
        stack.pop()
    return memo[id(t)]


@dataclass(frozen=True)
class Node:
    """Graph node performing ``action``, with successor indices."""

    action: object
    then: int
    else_: int


class RegularThread:
    """Finite rooted graph of :data:`STOP`, :data:`DEAD` and :class:`Node` labels.

    Nodes are numbered breadth first from the root (index 0), then-edges
    before else-edges, and every node is reachable.
    """

    __slots__ = ("nodes",)

    def __init__(self, nodes):
        self.nodes = tuple(nodes)
        if not self.nodes:
            raise ValueError("a thread needs at least a root node")
        for label in self.nodes:
            if isinstance(label, Node):
                if not (0 <= label.then < len(self.nodes) and 0 <= label.else_ < len(self.nodes)):
                    raise ValueError(f"dangling successor in {label!r}")
            elif label is not STOP and label is not DEAD:
                raise ValueError(f"bad node label {label!r}")

    @classmethod
    def build(cls, root: Hashable, label: Callable) -> "RegularThread":
        """Build from an implicit graph.

        ``label(key)`` returns :data:`STOP`, :data:`DEAD` or a triple
        ``(action, then_key, else_key)``.  Keys are numbered in breadth-first
        order and all S (resp. D) keys share a single node.
        """
        index = {}
        labels = []
        leaf_index = {}
        queue = deque()

        def number(key):
            if key in index:
                return index[key]
            lab = label(key)
            if isinstance(lab, _Leaf):
                if lab not in leaf_index:
                    leaf_index[lab] = len(labels)
                    labels.append(lab)
                index[key] = leaf_index[lab]
            else:
                index[key] = len(labels)
                labels.append(None)
                queue.append((key, lab))
            return index[key]

        number(root)
        while queue:
            key, (action, then, else_) = queue.popleft()
            i = index[key]
            labels[i] = (action, number(then), number(else_))
        nodes = [lab if isinstance(lab, _Leaf) else Node(*lab) for lab in labels]
        return cls(nodes)

    @property
    def root(self) -> int:
        return 0

    def __len__(self):
        return len(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]

    def __eq__(self, other):
        if isinstance(other, RegularThread):
            return self.nodes == other.nodes
        return NotImplemented

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        return f"RegularThread({format_thread(self)!r})"

    def renumbered(self, root: int = 0) -> "RegularThread":
        """Same graph rooted at ``root``, trimmed and renumbered."""

        def label(i):
            lab = self.nodes[i]
            if isinstance(lab, Node):
                return lab.action, lab.then, lab.else_
            return lab

        return RegularThread.build(root, label)

    def is_acyclic(self) -> bool:
        state = {}
        for start in range(len(self.nodes)):
            if start in state:
                continue
            stack = [(start, iter(self._succ(start)))]
            state[start] = 1
            while stack:
                i, it = stack[-1]
                for j in it:
                    if state.get(j) == 1:
                        return False
                    if j not in state:
                        state[j] = 1
                        stack.append((j, iter(self._succ(j))))
                        break
                else:
                    state[i] = 2
                    stack.pop()
        return True

    def _succ(self, i):
        lab = self.nodes[i]
        if isinstance(lab, Node):
            return (lab.then,) if lab.then == lab.else_ else (lab.then, lab.else_)
        return ()


Thread = Union[RegularThread, _Leaf, Branch]


def from_tree(t: FiniteThread) -> RegularThread:
    """Graph of a finite thread; shared subtrees become shared nodes."""

    def label(node):
        if isinstance(node, _Leaf):
            return node
        return node.action, node.then, node.else_

    return RegularThread.build(t, label)


def unfold(t: RegularThread) -> FiniteThread:
    """Tree of an acyclic regular thread."""
    if not t.is_acyclic():
        raise ValueError("thread has a cycle and is not finite")
    return proj(len(t.nodes) + 1, t)


def _as_graph(t: Thread) -> RegularThread:
    return t if isinstance(t, RegularThread) else from_tree(t)


def proj(n: int, t: Thread) -> FiniteThread:
    """Approximation of ``t`` up to depth ``n``."""
    if n < 0:
        raise ValueError("projection depth must be a natural number")
    g = _as_graph(t)
    memo = {}
    # build bottom-up by remaining depth to avoid deep recursion
    for k in range(0, n + 1):
        for i, lab in enumerate(g.nodes):
            if k == 0:
                memo[i, 0] = DEAD
            elif isinstance(lab, _Leaf):
                memo[i, k] = lab
            else:
                memo[i, k] = Branch(lab.action, memo[lab.then, k - 1], memo[lab.else_, k - 1])
        if k >= 2:
            for i in range(len(g.nodes)):
                memo.pop((i, k - 2), None)
    return memo[0, n]


def tau_normalize(t: Thread) -> Thread:
    """Redirect the else-edge of every tau branch to its then-edge."""
    if isinstance(t, RegularThread):

        def label(i):
            lab = t.nodes[i]
            if isinstance(lab, Node):
                return lab.action, lab.then, lab.then if lab.action is TAU else lab.else_
            return lab

        return RegularThread.build(0, label)
    return unfold(tau_normalize(from_tree(t)))


def _mismatch(a, b) -> bool:
    if isinstance(a, _Leaf) or isinstance(b, _Leaf):
        return a is not b
    return a.action != b.action


def distinguishing_depth(t1: Thread, t2: Thread) -> Optional[int]:
    """Least ``n`` with ``proj(n, t1) != proj(n, t2)``, or None if bisimilar.

    Breadth-first search over pairs of nodes; the visited pairs of an
    unsuccessful search form a bisimulation.
    """
    g1, g2 = _as_graph(t1), _as_graph(t2)
    start = (0, 0)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        (i, j), dist = queue.popleft()
        a, b = g1.nodes[i], g2.nodes[j]
        if _mismatch(a, b):
            return dist + 1
        if isinstance(a, _Leaf):
            continue
        pairs = [(a.then, b.then)]
        if a.action is not TAU:
            pairs.append((a.else_, b.else_))
        for pair in pairs:
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, dist + 1))
    return None


def bisimilar(t1: Thread, t2: Thread) -> bool:
    return distinguishing_depth(t1, t2) is None


def from_equations(equations: Mapping[str, object], root: str) -> RegularThread:
    """Thread defined by recursion equations ``{X: term}``.

    A term is :data:`STOP`, :data:`DEAD`, a variable name, or a triple
    ``(action, then_term, else_term)``.  A variable whose definition is a
    cycle of bare variables denotes :data:`DEAD`.
    """

    def resolve(term):
        seen = set()
        while isinstance(term, str):
            if term in seen:
                return DEAD
            seen.add(term)
            try:
                term = equations[term]
            except KeyError:
                raise ValueError(f"undefined variable {term!r}") from None
        return term

    def label(term):
        term = resolve(term)
        if isinstance(term, _Leaf):
            return term
        action, then, else_ = term
        return action, then, else_

    return RegularThread.build(root, label)


# text and dot formats


def _action_text(action) -> str:
    return str(action)


def format_thread(t: RegularThread) -> str:
    """One line per node: ``id: S``, ``id: D`` or ``id: act ? then : else``."""
    lines = []
    for i, lab in enumerate(t.nodes):
        if isinstance(lab, Node):
            lines.append(f"{i}: {_action_text(lab.action)} ? {lab.then} : {lab.else_}")
        else:
            lines.append(f"{i}: {lab}")
    return "\n".join(lines)


_LINE = re.compile(r"(\d+)\s*:\s*(?:(S|D)|(.+?)\s*\?\s*(\d+)\s*:\s*(\d+))\s*\Z")


def parse_thread(text: str, bindings=None) -> RegularThread:
    """Inverse of :func:`format_thread`.  Node 0 is the root."""
    from .pga import Opaque
    from .srram import parse_instruction

    bindings = bindings or {}
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse thread node {line!r}")
        i = int(m.group(1))
        if m.group(2):
            labels[i] = STOP if m.group(2) == "S" else DEAD
            continue
        act = m.group(3)
        if act == "tau":
            action = TAU
        elif ":" in act:
            action = parse_instruction(act)
        else:
            action = bindings.get(act) or Opaque(act)
        labels[i] = Node(action, int(m.group(4)), int(m.group(5)))
    if sorted(labels) != list(range(len(labels))):
        raise ValueError("thread node ids must be 0..n-1")
    return RegularThread(labels[i] for i in range(len(labels)))


def to_dot(t: RegularThread, name: str = "thread") -> str:
    out = [f"digraph {name} {{"]
    for i, lab in enumerate(t.nodes):
        if isinstance(lab, Node):
            text = _action_text(lab.action).replace('"', '\\"')
            out.append(f'  n{i} [label="{text}"];')
            if lab.then == lab.else_:
                out.append(f"  n{i} -> n{lab.then};")
            else:
                out.append(f'  n{i} -> n{lab.then} [label="1"];')
                out.append(f'  n{i} -> n{lab.else_} [label="0"];')
        else:
            out.append(f'  n{i} [label="{lab}", shape=box];')
    out.append("}")
    return "\n".join(out)
