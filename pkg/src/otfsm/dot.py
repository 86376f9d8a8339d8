"""Graphviz export."""

from __future__ import annotations

from .fsm import Machine


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(machine: Machine, name: str = "machine") -> str:
    """DOT text with one edge per arc, labelled ``symbols / marks``.

    The initial state is drawn bold and filled, the final state as a double
    circle.  Edges appear in arc order.
    """
    alphabet = machine.alphabet
    initials, finals = set(machine.initials), set(machine.finals)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for q in machine.states:
        attrs = []
        if q in finals:
            attrs.append("shape=doublecircle")
        if q in initials:
            attrs += ["style=\"bold,filled\"", "fillcolor=lightgrey"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {q}{suffix};")
    for arc in machine.arcs:
        label = alphabet.render(arc.label)
        if machine.degree:
            label += " / " + ",".join(str(m) for m in arc.marks)
        lines.append(f"  {arc.src} -> {arc.dst} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
