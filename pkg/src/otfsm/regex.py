"""Regular expressions over (label, mark) pairs, compiled without epsilon arcs.

Syntax::

    expr    := alt
    alt     := concat ('|' concat)*
    concat  := postfix*
    postfix := primary ('*' | '+' | '?')*
    primary := atom | '(' alt ')' | '{' alt '}'
    atom    := LABEL ['/' MARK]

``LABEL`` is a symbol, a class name or a set ``{a,b}`` (no spaces);
``MARK`` is ``0`` or ``-1`` and defaults to ``0``.  Braces group like
parentheses unless they enclose a comma-separated symbol set.

Compilation uses the position (Glushkov) construction, which needs no
epsilon arcs, followed by terminal merging.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import AlphabetMismatchError, DomainError, FormatError, OTFSMError
from .fsm import Alphabet, Arc, Machine, merge_terminals
from .harmony import MarkVector


@dataclass(frozen=True)
class Atom:
    label: str
    marks: MarkVector


@dataclass(frozen=True)
class Concat:
    items: tuple


@dataclass(frozen=True)
class Alt:
    items: tuple


@dataclass(frozen=True)
class Repeat:
    item: object
    op: str  # '*', '+' or '?'


Node = Union[Atom, Concat, Alt, Repeat]

_TOKEN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<set>\{[^\s{}()|*+?/,]+(?:,[^\s{}()|*+?/,]+)+\}(?:/-?\d+)?)
  | (?P<op>[()|*+?{}])
  | (?P<atom>[^\s{}()|*+?/]+(?:/-?\d+)?)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormatError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "space":
            continue
        tokens.append(("atom" if kind == "set" else kind, m.group()))
    return tokens


class _Parser:
    def __init__(self, text: str, degree: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.degree = degree

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.alt()
        if self.i != len(self.tokens):
            raise FormatError(f"unexpected {self.peek()[1]!r} in expression")
        return node

    def alt(self) -> Node:
        items = [self.concat()]
        while self.peek() == ("op", "|"):
            self.take()
            items.append(self.concat())
        return items[0] if len(items) == 1 else Alt(tuple(items))

    def concat(self) -> Node:
        items = []
        while True:
            kind, value = self.peek()
            if kind == "atom" or value in ("(", "{"):
                items.append(self.postfix())
            else:
                break
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def postfix(self) -> Node:
        node = self.primary()
        while self.peek()[1] in ("*", "+", "?") and self.peek()[0] == "op":
            node = Repeat(node, self.take()[1])
        return node

    def primary(self) -> Node:
        kind, value = self.take()
        if kind == "atom":
            return self.atom(value)
        if value in ("(", "{"):
            close = ")" if value == "(" else "}"
            node = self.alt()
            if self.take() != ("op", close):
                raise FormatError(f"missing {close!r}")
            return node
        raise FormatError(f"unexpected {value!r} in expression" if value else "unexpected end of expression")

    def atom(self, text: str) -> Atom:
        label, _, mark = text.partition("/")
        if self.degree == 0:
            if mark:
                raise FormatError(f"atom {text!r} carries a mark in a degree-0 expression")
            return Atom(label, ())
        value = int(mark) if mark else 0
        if value not in (0, -1):
            raise FormatError(f"atom {text!r}: marks must be 0 or -1 (binary constraints)")
        return Atom(label, (value,) * self.degree)


def parse_expr(text: str, degree: int = 1) -> Node:
    return _Parser(text, degree).parse()


@dataclass
class _Info:
    nullable: bool
    first: frozenset
    last: frozenset


def compile_node(node: Node, alphabet: Alphabet, degree: int) -> Machine:
    """Position-automaton construction; one state per atom occurrence plus a start state."""
    positions: list[tuple[frozenset, MarkVector]] = []
    follow: dict[int, set[int]] = {}

    def walk(n) -> _Info:
        if isinstance(n, Atom):
            label = alphabet.resolve(n.label)
            positions.append((label, n.marks))
            p = len(positions)  # state 0 is the start state
            follow[p] = set()
            return _Info(False, frozenset((p,)), frozenset((p,)))
        if isinstance(n, Alt):
            infos = [walk(x) for x in n.items]
            return _Info(
                any(i.nullable for i in infos),
                frozenset().union(*(i.first for i in infos)),
                frozenset().union(*(i.last for i in infos)),
            )
        if isinstance(n, Concat):
            acc = _Info(True, frozenset(), frozenset())
            for x in n.items:
                info = walk(x)
                for p in acc.last:
                    follow[p] |= info.first
                acc = _Info(
                    acc.nullable and info.nullable,
                    acc.first | info.first if acc.nullable else acc.first,
                    info.last | acc.last if info.nullable else info.last,
                )
            return acc
        if isinstance(n, Repeat):
            info = walk(n.item)
            if n.op in ("*", "+"):
                for p in info.last:
                    follow[p] |= info.first
            return _Info(info.nullable or n.op in ("*", "?"), info.first, info.last)
        raise TypeError(f"not an expression node: {n!r}")

    top = walk(node)
    arcs = []
    for p in sorted(top.first):
        label, marks = positions[p - 1]
        arcs.append(Arc(0, p, label, marks))
    for q in sorted(follow):
        for p in sorted(follow[q]):
            label, marks = positions[p - 1]
            arcs.append(Arc(q, p, label, marks))
    finals = sorted(top.last | ({0} if top.nullable else set()))
    if not finals:
        finals = [0]
    machine = Machine(degree, alphabet, len(positions) + 1, (0,), tuple(finals), tuple(arcs))
    machine = merge_terminals(machine)
    if machine.is_empty:
        raise DomainError("expression denotes no non-empty string")
    return machine


def compile_expr(text: str, alphabet: Alphabet, degree: int = 1) -> Machine:
    """Compile a constraint expression into an epsilon-free machine."""
    return compile_node(parse_expr(text, degree), alphabet, degree)


@dataclass(frozen=True)
class ConstraintSource:
    alphabet: Alphabet | None
    expr: str
    comments: tuple[str, ...] = ()


def parse_constraint_file(text: str) -> ConstraintSource:
    """``.otc`` files: optional ``alphabet``/``class`` lines and ``expr`` lines.

    Several ``expr`` lines are concatenated.  The alphabet may be omitted and
    supplied by the caller instead.
    """
    symbols = None
    classes: dict[str, list[str]] = {}
    expr_parts: list[str] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "alphabet":
            symbols = rest.split()
        elif keyword == "class":
            name, *members = rest.split()
            classes[name] = members
        elif keyword == "expr":
            expr_parts.append(rest)
        else:
            raise FormatError(f"line {lineno}: unknown keyword {keyword!r}")
    if not expr_parts:
        raise FormatError("constraint file has no 'expr' line")
    alphabet = None
    if symbols is not None:
        try:
            alphabet = Alphabet(tuple(symbols), classes)
        except OTFSMError as exc:
            raise FormatError(str(exc)) from None
    elif classes:
        raise FormatError("'class' lines need an 'alphabet' line")
    return ConstraintSource(alphabet, " ".join(expr_parts), tuple(comments))


def compile_constraint_file(path: str | Path, alphabet: Alphabet | None = None) -> Machine:
    """Compile a ``.otc`` file; ``alphabet`` overrides or supplies the symbol inventory.

    When both are present, the file's classes are added on top of ``alphabet``.
    """
    source = parse_constraint_file(Path(path).read_text(encoding="utf-8"))
    if alphabet is None:
        if source.alphabet is None:
            raise FormatError(f"{path}: no alphabet given in the file or by the caller")
        alphabet = source.alphabet
    elif source.alphabet is not None:
        if not alphabet.same_symbols(source.alphabet):
            raise AlphabetMismatchError(f"{path}: file alphabet differs from the supplied one")
        merged = dict(alphabet.classes)
        merged.update(source.alphabet.classes)
        alphabet = Alphabet(alphabet.symbols, merged)
    machine = compile_expr(source.expr, alphabet)
    return Machine(
        machine.degree, machine.alphabet, machine.num_states, machine.initials, machine.finals,
        machine.arcs, source.comments,
    )
