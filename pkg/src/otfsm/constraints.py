"""Builders for syllabification candidate sets and the constraints that rank them.

Symbols are role:segment tokens such as ``O:q`` (onset q), ``N:a`` (nucleus a)
or ``C:0`` (an empty, epenthetic coda).
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from .errors import DomainError
from .fsm import Alphabet, Arc, Machine, merge_terminals
from .regex import Alt, Atom, Concat, Repeat, compile_node

EMPTY_SEGMENT = "0"


class Role(str, Enum):
    ONSET = "O"
    NUCLEUS = "N"
    CODA = "C"


class Edge(str, Enum):
    LEFT = "L"
    RIGHT = "R"


def symbol(role: Role | str, segment: str) -> str:
    return f"{Role(role).value}:{segment}"


def split_symbol(sym: str) -> tuple[str, str]:
    role, _, segment = sym.partition(":")
    return role, segment


def role_of(sym: str) -> str:
    return split_symbol(sym)[0]


def is_empty_slot(sym: str) -> bool:
    return split_symbol(sym)[1] == EMPTY_SEGMENT


def syllable_alphabet(segments: Iterable[str]) -> Alphabet:
    """Every role paired with every segment (and the empty segment), with role classes."""
    segs = list(dict.fromkeys(s for s in segments if s != EMPTY_SEGMENT)) + [EMPTY_SEGMENT]
    symbols = tuple(symbol(r, s) for r in Role for s in segs)
    return Alphabet(symbols, role_classes(symbols))


def role_classes(symbols: Sequence[str]) -> dict[str, tuple[str, ...]]:
    def pick(pred):
        return tuple(s for s in symbols if pred(s))

    classes = {
        "ONSET": pick(lambda s: role_of(s) == Role.ONSET.value),
        "NUCLEUS": pick(lambda s: role_of(s) == Role.NUCLEUS.value),
        "CODA": pick(lambda s: role_of(s) == Role.CODA.value),
        "MARGIN": pick(lambda s: role_of(s) in (Role.ONSET.value, Role.CODA.value)),
        "FILLED": pick(lambda s: not is_empty_slot(s)),
        "EMPTY": pick(is_empty_slot),
    }
    return {name: members for name, members in classes.items() if members}


def _from_terminals(degree, alphabet, num_states, initials, finals, arcs) -> Machine:
    arcs = [a for a in arcs if a.label]
    return merge_terminals(Machine(degree, alphabet, num_states, initials, finals, tuple(arcs)))


def build_fill(alphabet: Alphabet) -> Machine:
    """-1 for every slot whose segment is empty, 0 for the rest; accepts every string."""
    empty = frozenset(s for s in alphabet.symbols if is_empty_slot(s))
    filled = alphabet.universe - empty
    arcs = []
    for q in (0, 1):
        arcs.append(Arc(q, 1, empty, (-1,)))
        arcs.append(Arc(q, 1, filled, (0,)))
    return _from_terminals(1, alphabet, 2, (0,), (1,), arcs)


def build_ons(alphabet: Alphabet) -> Machine:
    """-1 for every nucleus not immediately preceded by an onset slot.

    Deterministic: state 1 means the previous symbol was an onset.
    """
    onset = frozenset(s for s in alphabet.symbols if role_of(s) == Role.ONSET.value)
    nucleus = frozenset(s for s in alphabet.symbols if role_of(s) == Role.NUCLEUS.value)
    other = alphabet.universe - onset - nucleus
    start, after_onset, after_other = 0, 1, 2
    arcs = []
    for q in (start, after_onset, after_other):
        arcs.append(Arc(q, after_onset, onset, (0,)))
        arcs.append(Arc(q, after_other, nucleus, (0,) if q == after_onset else (-1,)))
        arcs.append(Arc(q, after_other, other, (0,)))
    return _from_terminals(1, alphabet, 3, (start,), (after_onset, after_other), arcs)


def build_nointervening(phi: Iterable[str], edge: Edge | str, alphabet: Alphabet) -> Machine:
    """-1 for every symbol lying between the edge and the nearest occurrence of ``phi``.

    The domain is the whole string.  Strings without ``phi`` get no marks.
    """
    phi = frozenset(phi)
    if not phi:
        raise DomainError("phi must be a non-empty set of symbols")
    unknown = phi - alphabet.universe
    if unknown:
        raise DomainError(f"phi uses symbols outside the alphabet: {sorted(unknown)}")
    rest = alphabet.universe - phi
    anything = alphabet.universe
    edge = Edge(edge)
    # start, committed-before-phi (L) / free-prefix (R), after-phi, phi-free
    start, pending, done, absent = 0, 1, 2, 3
    if edge is Edge.LEFT:
        arcs = [
            Arc(start, pending, rest, (-1,)),
            Arc(start, done, phi, (0,)),
            Arc(start, absent, rest, (0,)),
            Arc(pending, pending, rest, (-1,)),
            Arc(pending, done, phi, (0,)),
            Arc(done, done, anything, (0,)),
            Arc(absent, absent, rest, (0,)),
        ]
    else:
        arcs = [
            Arc(start, pending, anything, (0,)),
            Arc(start, done, phi, (0,)),
            Arc(start, absent, rest, (0,)),
            Arc(pending, pending, anything, (0,)),
            Arc(pending, done, phi, (0,)),
            Arc(done, done, rest, (-1,)),
            Arc(absent, absent, rest, (0,)),
        ]
    return _from_terminals(1, alphabet, 4, (start,), (done, absent), arcs)


GEN_GRAMMAR = (
    "syllable grammar: every vowel is a nucleus; a word-initial vowel may take an "
    "epenthetic onset O:0; a word-final vowel may take an epenthetic coda C:0; "
    "one consonant between vowels is either an onset (optionally after an epenthetic "
    "coda C:0) or a coda (optionally before an epenthetic onset O:0); two consonants "
    "between vowels are coda then onset; an edge consonant is an onset (initial) or "
    "coda (final); between adjacent vowels an epenthetic onset O:0 is optional"
)


def build_gen_syllabification(segments: Sequence[str], vowels: Iterable[str]) -> Machine:
    """Automaton of candidate syllabifications of ``segments``.

    Complex onsets/codas, unsyllabified segments and wholly empty syllables
    are not generated (see ``GEN_GRAMMAR``).
    """
    segments = list(segments)
    vowels = set(vowels)
    if not segments:
        raise DomainError("cannot syllabify an empty segment sequence")
    if EMPTY_SEGMENT in segments:
        raise DomainError(f"segment token {EMPTY_SEGMENT!r} is reserved for empty slots")
    if not any(s in vowels for s in segments):
        raise DomainError("no vowels: nothing can fill a nucleus")

    alphabet = syllable_alphabet(segments)

    def atom(role: Role, seg: str) -> Atom:
        return Atom(symbol(role, seg), ())

    def opt(node) -> Repeat:
        return Repeat(node, "?")

    def cluster_error(where: str, cluster: list[str]) -> DomainError:
        return DomainError(
            f"{where} consonant cluster {' '.join(cluster)!r} cannot be syllabified "
            "with single onsets and codas"
        )

    nuclei = [i for i, s in enumerate(segments) if s in vowels]
    parts = []

    lead = segments[: nuclei[0]]
    if not lead:
        parts.append(opt(atom(Role.ONSET, EMPTY_SEGMENT)))
    elif len(lead) == 1:
        parts.append(atom(Role.ONSET, lead[0]))
    else:
        raise cluster_error("initial", lead)

    for here, there in zip(nuclei, nuclei[1:] + [None]):
        parts.append(atom(Role.NUCLEUS, segments[here]))
        if there is None:
            break
        cluster = segments[here + 1 : there]
        if not cluster:
            parts.append(opt(atom(Role.ONSET, EMPTY_SEGMENT)))
        elif len(cluster) == 1:
            c = cluster[0]
            parts.append(Alt((
                Concat((opt(atom(Role.CODA, EMPTY_SEGMENT)), atom(Role.ONSET, c))),
                Concat((atom(Role.CODA, c), opt(atom(Role.ONSET, EMPTY_SEGMENT)))),
            )))
        elif len(cluster) == 2:
            parts.append(Concat((atom(Role.CODA, cluster[0]), atom(Role.ONSET, cluster[1]))))
        else:
            raise cluster_error("medial", cluster)

    tail = segments[nuclei[-1] + 1 :]
    if not tail:
        parts.append(opt(atom(Role.CODA, EMPTY_SEGMENT)))
    elif len(tail) == 1:
        parts.append(atom(Role.CODA, tail[0]))
    else:
        raise cluster_error("final", tail)

    machine = compile_node(Concat(tuple(parts)), alphabet, 0)
    header = (
        f"candidate syllabifications of {' '.join(segments)} (vowels: {','.join(sorted(vowels))})",
        GEN_GRAMMAR,
    )
    return Machine(
        0, alphabet, machine.num_states, machine.initials, machine.finals, machine.arcs, header,
    )
