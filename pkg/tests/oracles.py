"""Reference computations for tests, written against raw arcs only.

None of these call the library's evaluation, labelling or pruning code.
"""

from __future__ import annotations

from itertools import product as cartesian

from hypothesis import strategies as st

from otfsm.fsm import Alphabet, Arc, Machine


def paths_from_initial(machine: Machine, max_len: int):
    """Yield every arc path (tuple of arcs) starting at an initial state, up to ``max_len`` arcs."""
    out = {}
    for arc in machine.arcs:
        out.setdefault(arc.src, []).append(arc)
    stack = [(q, ()) for q in machine.initials]
    while stack:
        q, path = stack.pop()
        yield q, path
        if len(path) < max_len:
            for arc in out.get(q, ()):
                stack.append((arc.dst, path + (arc,)))


def path_sum(path, degree):
    total = [0] * degree
    for arc in path:
        for i, m in enumerate(arc.marks):
            total[i] += m
    return tuple(total)


def string_vectors(machine: Machine, max_len: int) -> dict[tuple[str, ...], tuple[int, ...]]:
    """Best summed vector per accepted string, by exhaustive path enumeration."""
    best: dict[tuple[str, ...], tuple[int, ...]] = {}
    finals = set(machine.finals)
    for q, path in paths_from_initial(machine, max_len):
        if q not in finals or not path:
            continue
        vec = path_sum(path, machine.degree)
        for word in cartesian(*(sorted(a.label) for a in path)):
            if word not in best or vec > best[word]:
                best[word] = vec
    return best


def best_to_state(machine: Machine, max_len: int) -> dict[int, tuple[int, ...]]:
    """Best summed vector over all paths from the initial state to each state."""
    best: dict[int, tuple[int, ...]] = {}
    for q, path in paths_from_initial(machine, max_len):
        vec = path_sum(path, machine.degree)
        if q not in best or vec > best[q]:
            best[q] = vec
    return best


def language(machine: Machine, max_len: int) -> set[tuple[str, ...]]:
    return set(string_vectors(machine, max_len))


SYMBOLS = ("a", "b", "c")
ALPHABET = Alphabet(SYMBOLS)


@st.composite
def machines(draw, degree=None, acyclic=True, max_states=6, marks=(0, -1), alphabet=ALPHABET,
             normal=True):
    """Small random machines; ``normal=False`` allows several initial/final states."""
    if degree is None:
        degree = draw(st.integers(0, 2))
    n = draw(st.integers(2, max_states))
    pairs = [(i, j) for i in range(n) for j in range(n) if (i < j if acyclic else True)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * n))
    labels = st.frozensets(st.sampled_from(alphabet.symbols), min_size=1, max_size=2)
    arcs = tuple(
        Arc(i, j, draw(labels), tuple(draw(st.sampled_from(marks)) for _ in range(degree)))
        for i, j in chosen
    )
    if normal:
        initials, finals = (0,), (n - 1,)
    else:
        initials = tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=2))))
        finals = tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=2))))
    return Machine(degree, alphabet, n, initials, finals, arcs)
