"""Machines: epsilon-free finite-state transducers whose arcs carry a set of
symbols and a mark vector.  An automaton is simply a machine of degree 0.

Machines are immutable.  Every operation returns a new machine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegreeError,
    MalformedMachineError,
    PositiveMarkError,
    RejectError,
    UnknownSymbolError,
)
from .harmony import GREATER, MarkVector, mv_add, mv_compare, zero_vector

Symbol = str
Label = frozenset  # frozenset[Symbol]

WILDCARD = "ANY"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[Symbol, ...]
    classes: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if len(set(symbols)) != len(symbols):
            raise MalformedMachineError("duplicate symbols in alphabet")
        for s in symbols:
            if not s or any(ch.isspace() for ch in s):
                raise MalformedMachineError(f"bad symbol token {s!r}")
        universe = frozenset(symbols)
        classes = {WILDCARD: universe}
        for name, members in dict(self.classes).items():
            members = frozenset(members)
            if name in universe:
                raise MalformedMachineError(f"class name {name!r} clashes with a symbol")
            if not members:
                raise MalformedMachineError(f"class {name!r} is empty")
            if not members <= universe:
                raise UnknownSymbolError(
                    f"class {name!r} uses symbols outside the alphabet: {sorted(members - universe)}"
                )
            if name == WILDCARD and members != universe:
                raise MalformedMachineError(f"class {WILDCARD} is reserved for the whole alphabet")
            classes[name] = members
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "classes", MappingProxyType(classes))

    def __hash__(self):
        return hash(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols and dict(self.classes) == dict(other.classes)

    @property
    def universe(self) -> frozenset:
        return self.classes[WILDCARD]

    def same_symbols(self, other: Alphabet) -> bool:
        return self.universe == other.universe

    def index(self, symbol: Symbol) -> int:
        return self.symbols.index(symbol)

    def resolve(self, token: str) -> frozenset:
        """Turn a label token (symbol, class name or ``{a,b}``) into a symbol set."""
        if token.startswith("{") and token.endswith("}"):
            members = [t for t in token[1:-1].split(",") if t]
            if not members:
                raise MalformedMachineError("empty label set {}")
            unknown = [m for m in members if m not in self.universe]
            if unknown:
                raise UnknownSymbolError(f"unknown symbols in label {token}: {unknown}")
            return frozenset(members)
        if token in self.universe:
            return frozenset((token,))
        if token in self.classes:
            return self.classes[token]
        raise UnknownSymbolError(f"{token!r} is neither a symbol nor a class of the alphabet")

    def render(self, label: frozenset) -> str:
        """Canonical text for a label: symbol, else a matching class, else a set."""
        if len(label) == 1:
            return next(iter(label))
        if label == self.universe:
            return WILDCARD
        for name, members in self.classes.items():
            if members == label:
                return name
        return "{" + ",".join(s for s in self.symbols if s in label) + "}"


@dataclass(frozen=True)
class Arc:
    src: int
    dst: int
    label: frozenset
    marks: MarkVector = ()


@dataclass(frozen=True)
class Machine:
    """A transducer with arcs labelled by symbol sets and mark vectors.

    ``initials``/``finals`` may hold several states only in the relaxed form
    accepted by :func:`merge_terminals`; every other operation requires a
    normal machine with one initial and one final state.
    """

    degree: int
    alphabet: Alphabet
    num_states: int
    initials: tuple[int, ...]
    finals: tuple[int, ...]
    arcs: tuple[Arc, ...]
    comments: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "initials", tuple(self.initials))
        object.__setattr__(self, "finals", tuple(self.finals))
        object.__setattr__(self, "comments", tuple(self.comments))
        if self.degree < 0:
            raise DegreeError("degree must be non-negative")
        n = self.num_states
        for q in self.initials + self.finals:
            if not 0 <= q < n:
                raise MalformedMachineError(f"terminal state {q} is not a declared state")
        if not self.initials or not self.finals:
            raise MalformedMachineError("a machine needs an initial and a final state")
        universe = self.alphabet.universe
        for arc in self.arcs:
            if not (0 <= arc.src < n and 0 <= arc.dst < n):
                raise MalformedMachineError(f"arc {arc.src}->{arc.dst} uses an undeclared state")
            if not arc.label:
                raise MalformedMachineError(f"arc {arc.src}->{arc.dst} has an empty label")
            if not arc.label <= universe:
                raise UnknownSymbolError(
                    f"arc {arc.src}->{arc.dst} uses symbols outside the alphabet: "
                    f"{sorted(arc.label - universe)}"
                )
            if len(arc.marks) != self.degree:
                raise DegreeError(
                    f"arc {arc.src}->{arc.dst} carries {len(arc.marks)} marks, degree is {self.degree}"
                )
            if any(m > 0 for m in arc.marks):
                raise PositiveMarkError(f"arc {arc.src}->{arc.dst} has a positive mark {arc.marks}")

    @property
    def is_normal(self) -> bool:
        return len(self.initials) == 1 and len(self.finals) == 1 and self.initials != self.finals

    @property
    def initial(self) -> int:
        self.require_normal()
        return self.initials[0]

    @property
    def final(self) -> int:
        self.require_normal()
        return self.finals[0]

    def require_normal(self) -> None:
        if not self.is_normal:
            raise MalformedMachineError(
                "operation needs exactly one initial and one distinct final state; "
                "apply merge_terminals first"
            )

    @property
    def states(self) -> range:
        return range(self.num_states)

    def out_arcs(self) -> list[list[Arc]]:
        table: list[list[Arc]] = [[] for _ in self.states]
        for arc in self.arcs:
            table[arc.src].append(arc)
        return table

    def in_arcs(self) -> list[list[Arc]]:
        table: list[list[Arc]] = [[] for _ in self.states]
        for arc in self.arcs:
            table[arc.dst].append(arc)
        return table

    @property
    def is_empty(self) -> bool:
        """True if no path leads from the initial to the final state."""
        return self.final not in reachable(self)

    def is_acyclic(self) -> bool:
        indegree = [0] * self.num_states
        for arc in self.arcs:
            indegree[arc.dst] += 1
        out = self.out_arcs()
        queue = deque(q for q in self.states if indegree[q] == 0)
        seen = 0
        while queue:
            q = queue.popleft()
            seen += 1
            for arc in out[q]:
                indegree[arc.dst] -= 1
                if indegree[arc.dst] == 0:
                    queue.append(arc.dst)
        return seen == self.num_states

    def with_arcs(self, arcs: Iterable[Arc]) -> Machine:
        return Machine(
            self.degree, self.alphabet, self.num_states, self.initials, self.finals,
            tuple(arcs), self.comments,
        )


def _search(start: Iterable[int], edges: list[list[int]]) -> set[int]:
    seen = set(start)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for r in edges[q]:
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def reachable(machine: Machine) -> set[int]:
    forward = [[] for _ in machine.states]
    for arc in machine.arcs:
        forward[arc.src].append(arc.dst)
    return _search(machine.initials, forward)


def coreachable(machine: Machine) -> set[int]:
    backward = [[] for _ in machine.states]
    for arc in machine.arcs:
        backward[arc.dst].append(arc.src)
    return _search(machine.finals, backward)


def merge_terminals(machine: Machine) -> Machine:
    """Give a machine a single initial and a single final state.

    Fresh terminals are added: the new initial state copies the outgoing arcs
    of every old initial state and the new final state copies the incoming
    arcs of every old final state.  Without epsilon arcs this is the only
    language-preserving way to identify terminals (the empty string, which
    a single-final epsilon-free machine cannot accept, is dropped).
    """
    if machine.is_normal:
        return machine
    new_i, new_f = machine.num_states, machine.num_states + 1
    initials, finals = set(machine.initials), set(machine.finals)
    arcs = list(machine.arcs)
    arcs += [Arc(new_i, a.dst, a.label, a.marks) for a in machine.arcs if a.src in initials]
    arcs += [Arc(a.src, new_f, a.label, a.marks) for a in list(arcs) if a.dst in finals]
    merged = Machine(
        machine.degree, machine.alphabet, machine.num_states + 2, (new_i,), (new_f,),
        tuple(arcs), machine.comments,
    )
    return trim(merged)


def trim(machine: Machine) -> Machine:
    """Drop every state (other than the terminals) off all initial-to-final paths.

    Surviving states are renumbered densely in their original order.  If no
    path exists the result keeps only the two terminal states and no arcs.
    """
    machine.require_normal()
    useful = reachable(machine) & coreachable(machine)
    keep = useful | {machine.initial, machine.final}
    if len(keep) == machine.num_states:
        return machine
    renumber = {q: i for i, q in enumerate(sorted(keep))}
    arcs = tuple(
        Arc(renumber[a.src], renumber[a.dst], a.label, a.marks)
        for a in machine.arcs
        if a.src in useful and a.dst in useful
    )
    return Machine(
        machine.degree, machine.alphabet, len(keep),
        (renumber[machine.initial],), (renumber[machine.final],), arcs, machine.comments,
    )


def strip_marks(machine: Machine) -> Machine:
    """The underlying automaton (degree 0)."""
    return Machine(
        0, machine.alphabet, machine.num_states, machine.initials, machine.finals,
        tuple(Arc(a.src, a.dst, a.label, ()) for a in machine.arcs), machine.comments,
    )


def _check_symbols(machine: Machine, word: Sequence[Symbol]) -> None:
    for s in word:
        if s not in machine.alphabet.universe:
            raise UnknownSymbolError(f"symbol {s!r} is not in the alphabet")


def _best_paths(machine: Machine, word: Sequence[Symbol]) -> dict[int, tuple[MarkVector, tuple[Arc, ...]]]:
    """Forward sweep: for each state, the best vector (and one path) reading ``word``."""
    machine.require_normal()
    _check_symbols(machine, word)
    out = machine.out_arcs()
    frontier = {machine.initial: (zero_vector(machine.degree), ())}
    for symbol in word:
        nxt: dict[int, tuple[MarkVector, tuple[Arc, ...]]] = {}
        for q in sorted(frontier):
            vec, path = frontier[q]
            for arc in out[q]:
                if symbol not in arc.label:
                    continue
                cand = mv_add(vec, arc.marks)
                old = nxt.get(arc.dst)
                if old is None or mv_compare(cand, old[0]) == GREATER:
                    nxt[arc.dst] = (cand, path + (arc,))
        frontier = nxt
        if not frontier:
            break
    return frontier


def accepts(machine: Machine, word: Sequence[Symbol]) -> bool:
    return machine.final in _best_paths(machine, word)


def evaluate(machine: Machine, word: Sequence[Symbol]) -> MarkVector:
    """Best (lexicographically greatest) summed mark vector over accepting paths."""
    return best_path(machine, word)[0]


def best_path(machine: Machine, word: Sequence[Symbol]) -> tuple[MarkVector, tuple[Arc, ...]]:
    result = _best_paths(machine, word).get(machine.final)
    if result is None:
        raise RejectError(f"machine does not accept {' '.join(word)!r}")
    return result
