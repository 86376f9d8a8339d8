"""Best-harmony labelling, pruning of non-optimal arcs, and derivation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import DegreeError, EmptySurfaceError, PositiveMarkError
from .fsm import Machine, trim
from .harmony import GREATER, LESS, ComparisonCounter, MarkVector, mv_add, mv_compare, zero_vector
from .product import product_all


class _StateHeap:
    """Binary max-heap of states keyed by harmony, supporting key increase.

    Every key comparison goes through ``mv_compare`` so the counter sees it.
    Ties go to the smaller state id.
    """

    def __init__(self, harmony: dict[int, MarkVector], counter: ComparisonCounter):
        self._heap: list[int] = []
        self._pos: dict[int, int] = {}
        self._harmony = harmony
        self._counter = counter

    def __len__(self):
        return len(self._heap)

    def __contains__(self, state):
        return state in self._pos

    def _above(self, p: int, q: int) -> bool:
        order = mv_compare(self._harmony[p], self._harmony[q], self._counter)
        return order == GREATER or (order != LESS and p < q)

    def _swap(self, i: int, j: int) -> None:
        h = self._heap
        h[i], h[j] = h[j], h[i]
        self._pos[h[i]] = i
        self._pos[h[j]] = j

    def _sift_up(self, i: int) -> None:
        while i > 0:
            parent = (i - 1) // 2
            if not self._above(self._heap[i], self._heap[parent]):
                break
            self._swap(i, parent)
            i = parent

    def _sift_down(self, i: int) -> None:
        n = len(self._heap)
        while True:
            best = i
            for child in (2 * i + 1, 2 * i + 2):
                if child < n and self._above(self._heap[child], self._heap[best]):
                    best = child
            if best == i:
                return
            self._swap(i, best)
            i = best

    def push(self, state: int) -> None:
        self._heap.append(state)
        self._pos[state] = len(self._heap) - 1
        self._sift_up(len(self._heap) - 1)

    def increased(self, state: int) -> None:
        """Restore heap order after ``state``'s harmony improved."""
        self._sift_up(self._pos[state])

    def pop(self) -> int:
        top = self._heap[0]
        last = self._heap.pop()
        del self._pos[top]
        if self._heap:
            self._heap[0] = last
            self._pos[last] = 0
            self._sift_down(0)
        return top


@dataclass
class HarmonyAnnotation:
    """Best-path harmony from the initial state, for each reached state."""

    harmony: dict[int, MarkVector]
    degree: int
    comparisons: int = 0
    expansion_order: list[int] = field(default_factory=list)

    def __getitem__(self, state: int) -> MarkVector | None:
        return self.harmony.get(state)

    def defined(self, state: int) -> bool:
        return state in self.harmony


def label_nodes(machine: Machine, counter: ComparisonCounter | None = None) -> HarmonyAnnotation:
    """Label every reachable state with the harmony of its optimal incoming path.

    Max-first expansion in the manner of Dijkstra's algorithm; correct because
    arc marks are never positive, so a state's harmony is final once it is the
    most harmonic state left in the worklist.
    """
    for arc in machine.arcs:
        if any(m > 0 for m in arc.marks):
            raise PositiveMarkError(
                f"arc {arc.src}->{arc.dst} has positive marks {arc.marks}; labelling needs marks <= 0"
            )
    counter = counter if counter is not None else ComparisonCounter()
    start = counter.count
    out = machine.out_arcs()
    harmony = {machine.initial: zero_vector(machine.degree)}
    expanded: set[int] = set()
    order: list[int] = []
    worklist = _StateHeap(harmony, counter)
    worklist.push(machine.initial)

    while worklist:
        m = worklist.pop()
        expanded.add(m)
        order.append(m)
        for arc in out[m]:
            n = arc.dst
            cand = mv_add(harmony[m], arc.marks)
            if n not in harmony:
                harmony[n] = cand
                worklist.push(n)
            elif mv_compare(harmony[n], cand, counter) == LESS:
                # An expanded state can never improve once marks are non-positive.
                assert n not in expanded, "labelling invariant broken"
                harmony[n] = cand
                worklist.increased(n)

    return HarmonyAnnotation(harmony, machine.degree, counter.count - start, order)


def prune(machine: Machine, annotation: HarmonyAnnotation) -> Machine:
    """Delete every arc that cannot lie on an optimal path from the initial state.

    Arcs leaving unlabelled (unreachable) states are deleted as well.
    Follow with :func:`trim` to drop states left dangling.
    """
    kept = []
    for arc in machine.arcs:
        src, dst = annotation[arc.src], annotation[arc.dst]
        if src is None or dst is None:
            continue
        if mv_compare(mv_add(src, arc.marks), dst) == LESS:
            continue
        kept.append(arc)
    return machine.with_arcs(kept)


class Derivation(NamedTuple):
    machine: Machine
    harmony: MarkVector


@dataclass
class DerivationTrace:
    """Every intermediate of a derivation, for reports."""

    surface: Machine
    annotation: HarmonyAnnotation
    pruned: Machine
    result: Machine

    @property
    def harmony(self) -> MarkVector:
        return self.annotation[self.surface.final]


def _check_constraints(constraints: Sequence[Machine]) -> None:
    for i, c in enumerate(constraints):
        if c.degree < 1:
            raise DegreeError(f"constraint #{i + 1} has degree 0; constraints need degree >= 1")


def trace_derivation(gen: Machine, constraints: Sequence[Machine]) -> DerivationTrace:
    if gen.degree != 0:
        raise DegreeError(f"candidate automaton must have degree 0, got {gen.degree}")
    _check_constraints(constraints)
    surface = product_all([gen, *constraints])
    annotation = label_nodes(surface)
    if not annotation.defined(surface.final):
        raise EmptySurfaceError(
            "the surface transducer accepts nothing; constraints should accept every candidate"
        )
    pruned = prune(surface, annotation)
    return DerivationTrace(surface, annotation, pruned, trim(pruned))


def derive(gen: Machine, constraints: Sequence[Machine]) -> Derivation:
    """Optimal candidates of ``gen`` under the ranked ``constraints`` and their harmony."""
    trace = trace_derivation(gen, constraints)
    return Derivation(trace.result, trace.harmony)


def precompile(constraints: Sequence[Machine]) -> Machine:
    """Fold a ranked hierarchy into one transducer."""
    if not constraints:
        raise ValueError("precompile needs at least one constraint")
    _check_constraints(constraints)
    return product_all(constraints)
