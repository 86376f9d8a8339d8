"""Line-oriented machine files.

::

    # comment
    degree 2
    alphabet O:0 N:a C:l
    class EMPTY O:0
    states 3
    initial 0
    final 2
    arc 0 1 EMPTY 0 -1
    arc 1 2 {N:a,C:l} -1 0

``states`` is optional; without it the mentioned ids are renumbered densely.
Several ``initial``/``final`` lines are accepted and merged on load.
Leading comment lines are kept as the machine's header comments.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FormatError, OTFSMError
from .fsm import WILDCARD, Alphabet, Arc, Machine, merge_terminals


def parse_machine(text: str) -> Machine:
    degree = None
    alphabet_syms: list[str] | None = None
    class_defs: dict[str, list[str]] = {}
    declared_states = None
    initials: list[int] = []
    finals: list[int] = []
    raw_arcs: list[tuple[int, int, str, tuple[int, ...], int]] = []
    header: list[str] = []
    in_header = True

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped.startswith("#") and in_header:
            header.append(stripped[1:].strip())
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        in_header = False
        keyword, *args = line.split()
        try:
            if keyword == "degree":
                (d,) = args
                degree = int(d)
                if degree < 0:
                    raise ValueError("negative degree")
            elif keyword == "alphabet":
                alphabet_syms = args
            elif keyword == "class":
                name, *members = args
                if name == WILDCARD:
                    raise ValueError(f"class {WILDCARD} is built in")
                class_defs[name] = members
            elif keyword == "states":
                (n,) = args
                declared_states = int(n)
            elif keyword == "initial":
                initials.extend(int(a) for a in args)
            elif keyword == "final":
                finals.extend(int(a) for a in args)
            elif keyword == "arc":
                src, dst, label, *marks = args
                raw_arcs.append((int(src), int(dst), label, tuple(int(m) for m in marks), lineno))
            else:
                raise ValueError(f"unknown keyword {keyword!r}")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None

    if degree is None:
        raise FormatError("missing 'degree' line")
    if alphabet_syms is None:
        raise FormatError("missing 'alphabet' line")
    if not initials or not finals:
        raise FormatError("missing 'initial' or 'final' line")

    try:
        alphabet = Alphabet(tuple(alphabet_syms), class_defs)
    except OTFSMError as exc:
        raise FormatError(str(exc)) from None

    mentioned = set(initials) | set(finals)
    for src, dst, *_ in raw_arcs:
        mentioned |= {src, dst}
    if any(q < 0 for q in mentioned):
        raise FormatError("state ids must be non-negative")
    if declared_states is not None:
        if mentioned and max(mentioned) >= declared_states:
            raise FormatError(f"state {max(mentioned)} exceeds 'states {declared_states}'")
        renumber = {q: q for q in range(declared_states)}
    else:
        renumber = {q: i for i, q in enumerate(sorted(mentioned))}

    arcs = []
    for src, dst, label, marks, lineno in raw_arcs:
        if len(marks) != degree:
            raise FormatError(f"line {lineno}: {len(marks)} marks given, degree is {degree}")
        try:
            symbols = alphabet.resolve(label)
        except OTFSMError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        arcs.append(Arc(renumber[src], renumber[dst], symbols, marks))

    machine = Machine(
        degree,
        alphabet,
        len(renumber),
        tuple(dict.fromkeys(renumber[q] for q in initials)),
        tuple(dict.fromkeys(renumber[q] for q in finals)),
        tuple(arcs),
        tuple(header),
    )
    return merge_terminals(machine)


def format_machine(machine: Machine) -> str:
    lines = [f"# {c}" if c else "#" for c in machine.comments]
    alphabet = machine.alphabet
    lines.append(f"degree {machine.degree}")
    lines.append("alphabet " + " ".join(alphabet.symbols))
    for name, members in alphabet.classes.items():
        if name == WILDCARD:
            continue
        lines.append(f"class {name} " + " ".join(s for s in alphabet.symbols if s in members))
    lines.append(f"states {machine.num_states}")
    for q in machine.initials:
        lines.append(f"initial {q}")
    for q in machine.finals:
        lines.append(f"final {q}")
    for arc in machine.arcs:
        marks = "".join(f" {m}" for m in arc.marks)
        lines.append(f"arc {arc.src} {arc.dst} {alphabet.render(arc.label)}{marks}")
    return "\n".join(lines) + "\n"


def load_machine(path: str | Path) -> Machine:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def save_machine(machine: Machine, path: str | Path) -> None:
    Path(path).write_text(format_machine(machine), encoding="utf-8")
