"""Recursive-descent validator for the DOT language (graph, node, edge and
attribute statements; no subgraphs or ports)."""

import re

_TOKEN = re.compile(
    r'\s*(?:(?P<arrow>->|--)|(?P<punct>[{}\[\];,=])|(?P<quoted>"(?:[^"\\]|\\.)*")'
    r"|(?P<numeral>-?(?:\.\d+|\d+(?:\.\d*)?))|(?P<ident>[A-Za-z_\x80-￿][\w\x80-￿]*))"
)


def tokenize(text):
    pos, tokens = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SyntaxError(f"bad DOT text at {pos}: {text[pos:pos + 20]!r}")
        pos = m.end()
        tokens.append((m.lastgroup, m.group(m.lastgroup)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens, self.i = tokens, 0
        self.edges = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def expect(self, value=None, kinds=None):
        kind, val = self.peek()
        if (value is not None and val != value) or (kinds is not None and kind not in kinds):
            raise SyntaxError(f"expected {value or kinds}, got {val!r}")
        self.i += 1
        return val

    def is_id(self):
        return self.peek()[0] in ("ident", "quoted", "numeral")

    def graph(self):
        if self.peek()[1] == "strict":
            self.i += 1
        kind = self.expect(kinds=("ident",))
        if kind not in ("digraph", "graph"):
            raise SyntaxError("expected graph or digraph")
        if self.is_id():
            self.i += 1
        self.expect("{")
        while self.peek()[1] != "}":
            self.stmt()
            if self.peek()[1] == ";":
                self.i += 1
        self.expect("}")
        if self.i != len(self.tokens):
            raise SyntaxError("trailing tokens")
        return self.edges

    def attr_list(self):
        while self.peek()[1] == "[":
            self.i += 1
            while self.peek()[1] != "]":
                self.expect(kinds=("ident", "quoted", "numeral"))
                self.expect("=")
                self.expect(kinds=("ident", "quoted", "numeral"))
                if self.peek()[1] in (",", ";"):
                    self.i += 1
            self.expect("]")

    def stmt(self):
        kind, val = self.peek()
        if val in ("graph", "node", "edge"):
            self.i += 1
            self.attr_list()
            return
        if not self.is_id():
            raise SyntaxError(f"unexpected {val!r}")
        self.i += 1
        if self.peek()[1] == "=":
            self.i += 1
            self.expect(kinds=("ident", "quoted", "numeral"))
            return
        if self.peek()[0] == "arrow":
            while self.peek()[0] == "arrow":
                self.i += 1
                self.expect(kinds=("ident", "quoted", "numeral"))
            self.edges += 1
        self.attr_list()


def validate(text):
    """Return the number of edge statements; raise SyntaxError if invalid."""
    return _Parser(tokenize(text)).graph()
