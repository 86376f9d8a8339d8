"""Automaton product and the mark-concatenating augmented product.

The augmented product of ``a`` and ``b`` ranks every constraint of ``a``
above every constraint of ``b``: each product arc carries ``a``'s marks
followed by ``b``'s.
"""

from __future__ import annotations

from collections import deque
from functools import reduce
from typing import Sequence

from .errors import AlphabetMismatchError, DegreeError
from .fsm import Arc, Machine
from .harmony import mv_concat


def _check_alphabets(a: Machine, b: Machine) -> None:
    if not a.alphabet.same_symbols(b.alphabet):
        only_a = sorted(a.alphabet.universe - b.alphabet.universe)
        only_b = sorted(b.alphabet.universe - a.alphabet.universe)
        raise AlphabetMismatchError(
            f"machines must share an alphabet (only in first: {only_a}, only in second: {only_b})"
        )


def product_with_pairs(a: Machine, b: Machine) -> tuple[Machine, tuple[tuple[int, int], ...]]:
    """Augmented product over reachable state pairs.

    Returns the machine and, for each result state, the ``(a_state, b_state)``
    pair it stands for.  Result states are numbered in breadth-first
    discovery order, so linear inputs yield path-ordered ids.
    """
    _check_alphabets(a, b)
    ia, ib, fa, fb = a.initial, b.initial, a.final, b.final
    out_a, out_b = a.out_arcs(), b.out_arcs()

    ids: dict[tuple[int, int], int] = {(ia, ib): 0}
    queue = deque([(ia, ib)])
    arcs: list[Arc] = []
    while queue:
        x, z = queue.popleft()
        src = ids[(x, z)]
        for arc_a in out_a[x]:
            for arc_b in out_b[z]:
                label = arc_a.label & arc_b.label
                if not label:
                    continue
                pair = (arc_a.dst, arc_b.dst)
                if pair not in ids:
                    ids[pair] = len(ids)
                    queue.append(pair)
                arcs.append(Arc(src, ids[pair], label, mv_concat(arc_a.marks, arc_b.marks)))
    if (fa, fb) not in ids:
        ids[(fa, fb)] = len(ids)

    pairs = tuple(sorted(ids, key=ids.__getitem__))
    machine = Machine(
        a.degree + b.degree, a.alphabet, len(ids), (0,), (ids[(fa, fb)],), tuple(arcs),
    )
    return machine, pairs


def augmented_product(a: Machine, b: Machine) -> Machine:
    return product_with_pairs(a, b)[0]


def product(a: Machine, b: Machine) -> Machine:
    """Plain intersection of two automata (degree 0)."""
    if a.degree or b.degree:
        raise DegreeError(
            f"plain product needs degree-0 automata, got degrees {a.degree} and {b.degree}"
        )
    return augmented_product(a, b)


def product_all(machines: Sequence[Machine]) -> Machine:
    """Left fold of the augmented product, highest priority first."""
    if not machines:
        raise ValueError("need at least one machine")
    return reduce(augmented_product, machines)
