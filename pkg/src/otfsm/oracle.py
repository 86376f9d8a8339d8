"""Brute-force Optimality Theory evaluation.

Candidates are enumerated explicitly, every constraint evaluates every
candidate, and the maximal ones are kept.  Nothing here touches the
labelling or pruning code, so it can certify it.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

from .errors import DegreeError, TruncationError
from .fsm import Alphabet, Arc, Machine, best_path, merge_terminals, trim
from .harmony import BINARY, GREATER, MarkList, MarkVector, mv_compare
from .optimize import derive

Candidate = tuple[str, ...]


class Enumeration(NamedTuple):
    strings: tuple[Candidate, ...]
    truncated: bool


def enumerate_language(machine: Machine, max_len: int) -> Enumeration:
    """All accepted strings of length <= ``max_len``, shortest first then lexicographic.

    ``truncated`` is set when longer accepted strings exist.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    machine = trim(machine)
    if machine.is_empty:
        return Enumeration((), False)
    out = machine.out_arcs()
    symbols = machine.alphabet.symbols
    final = machine.final
    found: list[Candidate] = []
    # each prefix maps to the set of states it can reach
    layer: dict[Candidate, frozenset] = {(): frozenset((machine.initial,))}
    for _ in range(max_len):
        nxt: dict[Candidate, frozenset] = {}
        for prefix, states in layer.items():
            for sym in symbols:
                targets = frozenset(a.dst for q in states for a in out[q] if sym in a.label)
                if targets:
                    nxt[prefix + (sym,)] = targets
        layer = nxt
        found.extend(p for p, states in layer.items() if final in states)
        if not layer:
            break
    truncated = any(out[q] for states in layer.values() for q in states)
    order = {s: i for i, s in enumerate(symbols)}
    found.sort(key=lambda c: (len(c), [order[s] for s in c]))
    return Enumeration(tuple(found), truncated)


@dataclass(frozen=True)
class CandidateRecord:
    candidate: Candidate
    mark_lists: tuple[MarkList, ...]
    vector: MarkVector


def mark_lists_for(constraint: Machine, candidate: Candidate) -> tuple[MarkList, ...]:
    """One binary mark list per coordinate, read off the candidate's best path."""
    _, path = best_path(constraint, candidate)
    lists = []
    for coord in range(constraint.degree):
        items: list[str] = []
        for arc in path:
            m = arc.marks[coord]
            items.extend(["ε"] * -m if m < 0 else ["∅"])
        lists.append(MarkList(tuple(items), BINARY))
    return tuple(lists)


def score(candidate: Candidate, constraints: Sequence[Machine]) -> CandidateRecord:
    lists: list[MarkList] = []
    for c in constraints:
        lists.extend(mark_lists_for(c, candidate))
    vector = tuple(-ml.violations() for ml in lists)
    return CandidateRecord(candidate, tuple(lists), vector)


def brute_force_optima(
    gen: Machine, constraints: Sequence[Machine], max_len: int
) -> tuple[CandidateRecord, ...]:
    if gen.degree != 0:
        raise DegreeError(f"candidate automaton must have degree 0, got {gen.degree}")
    listing = enumerate_language(gen, max_len)
    if listing.truncated:
        raise TruncationError(
            f"candidate set has strings longer than {max_len}; optima cannot be certified"
        )
    records = [score(c, constraints) for c in listing.strings]
    if not records:
        return ()
    best = records[0].vector
    for r in records[1:]:
        if mv_compare(r.vector, best) == GREATER:
            best = r.vector
    return tuple(r for r in records if r.vector == best)


@dataclass
class EquivalenceReport:
    match: bool
    oracle_candidates: list[list[str]]
    derived_candidates: list[list[str]]
    oracle_harmony: list[int] | None
    derived_harmony: list[int]
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def check_equivalence(
    gen: Machine, constraints: Sequence[Machine], max_len: int, seed: int | None = None
) -> EquivalenceReport:
    """Compare the finite-state derivation with brute force on one instance."""
    optima = brute_force_optima(gen, constraints, max_len)
    result, harmony = derive(gen, constraints)
    derived = enumerate_language(result, max_len)
    oracle_set = sorted(list(r.candidate) for r in optima)
    derived_set = sorted(list(c) for c in derived.strings)
    oracle_harmony = list(optima[0].vector) if optima else None
    match = (
        not derived.truncated
        and oracle_set == derived_set
        and oracle_harmony == list(harmony)
    )
    return EquivalenceReport(match, oracle_set, derived_set, oracle_harmony, list(harmony), seed)


# -- random instances ---------------------------------------------------------


@dataclass
class InstanceConfig:
    """Shape of randomized derivation instances."""

    max_symbols: int = 4
    max_gen_states: int = 8
    min_constraints: int = 1
    max_constraints: int = 3
    max_constraint_states: int = 2
    arc_density: float = 0.5
    max_label_size: int = 2


@dataclass
class Instance:
    gen: Machine
    constraints: list[Machine]
    seed: int

    @property
    def max_len(self) -> int:
        return self.gen.num_states


def random_alphabet(rng: random.Random, config: InstanceConfig) -> Alphabet:
    n = rng.randint(2, config.max_symbols)
    return Alphabet(tuple("abcd"[:n]) if n <= 4 else tuple(f"s{i}" for i in range(n)))


def _random_label(rng: random.Random, alphabet: Alphabet, max_size: int) -> frozenset:
    k = rng.randint(1, min(max_size, len(alphabet.symbols)))
    return frozenset(rng.sample(alphabet.symbols, k))


def random_gen(rng: random.Random, alphabet: Alphabet, config: InstanceConfig) -> Machine:
    """Acyclic degree-0 automaton with a guaranteed initial-to-final path."""
    n = rng.randint(2, config.max_gen_states)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < config.arc_density:
                arcs.append(Arc(i, j, _random_label(rng, alphabet, config.max_label_size)))
    machine = Machine(0, alphabet, n, (0,), (n - 1,), tuple(arcs))
    if machine.is_empty:
        # thread a path through a random subset of intermediate states
        hops = sorted(rng.sample(range(1, n - 1), rng.randint(0, n - 2))) if n > 2 else []
        chain = [0, *hops, n - 1]
        arcs += [
            Arc(p, q, _random_label(rng, alphabet, config.max_label_size))
            for p, q in zip(chain, chain[1:])
        ]
        machine = machine.with_arcs(arcs)
    return trim(machine)


def random_constraint(
    rng: random.Random, alphabet: Alphabet, config: InstanceConfig, degree: int = 1
) -> Machine:
    """Total transducer: arbitrary (often cyclic, nondeterministic) core states,
    completed by 0-marked arcs into a wildcard sink; every core state accepts."""
    k = rng.randint(1, config.max_constraint_states)
    sink = k
    arcs = []
    for q in range(k):
        covered: set[str] = set()
        for _ in range(rng.randint(1, 3)):
            label = _random_label(rng, alphabet, config.max_label_size)
            marks = tuple(rng.choice((0, -1)) for _ in range(degree))
            arcs.append(Arc(q, rng.randrange(k), label, marks))
            covered |= label
        missing = alphabet.universe - covered
        if missing:
            arcs.append(Arc(q, sink, frozenset(missing), (0,) * degree))
    arcs.append(Arc(sink, sink, alphabet.universe, (0,) * degree))
    machine = Machine(degree, alphabet, k + 1, (0,), tuple(range(k + 1)), tuple(arcs))
    return merge_terminals(machine)


def random_instance(seed: int, config: InstanceConfig | None = None) -> Instance:
    config = config or InstanceConfig()
    rng = random.Random(seed)
    alphabet = random_alphabet(rng, config)
    gen = random_gen(rng, alphabet, config)
    count = rng.randint(config.min_constraints, config.max_constraints)
    constraints = [random_constraint(rng, alphabet, config) for _ in range(count)]
    return Instance(gen, constraints, seed)


def run_campaign(n: int, seed: int, config: InstanceConfig | None = None) -> list[EquivalenceReport]:
    """Check ``n`` random instances; instance ``i`` uses seed ``seed + i``."""
    reports = []
    for i in range(n):
        inst = random_instance(seed + i, config)
        reports.append(check_equivalence(inst.gen, inst.constraints, inst.max_len, inst.seed))
    return reports
