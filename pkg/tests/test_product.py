from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from oracles import ALPHABET, language, machines, path_sum, paths_from_initial, string_vectors
from otfsm.errors import AlphabetMismatchError, DegreeError
from otfsm.fsm import Alphabet, Arc, Machine, evaluate, strip_marks
from otfsm.oracle import enumerate_language
from otfsm.product import augmented_product, product, product_with_pairs
from otfsm.regex import compile_expr


def words(*strings):
    return {tuple(s) for s in strings}


def test_product_intersects_languages():
    a = compile_expr("a b | a c", ALPHABET, degree=0)
    b = compile_expr("a b | b b", ALPHABET, degree=0)
    assert language(product(a, b), 4) == words("ab")


def test_product_with_universal_acceptor():
    a = compile_expr("a b | a c c", ALPHABET, degree=0)
    universal = compile_expr("ANY+", ALPHABET, degree=0)
    assert language(product(a, universal), 5) == language(a, 5)


def test_product_alphabet_mismatch():
    a = compile_expr("a", ALPHABET, degree=0)
    b = compile_expr("x", Alphabet(("x",)), degree=0)
    with pytest.raises(AlphabetMismatchError):
        product(a, b)
    with pytest.raises(AlphabetMismatchError):
        augmented_product(a, b)


def test_plain_product_needs_degree_zero():
    a = compile_expr("a/-1", ALPHABET)
    with pytest.raises(DegreeError):
        product(a, a)


def test_product_keeps_pair_mapping():
    a = compile_expr("a b", ALPHABET, degree=0)
    m, pairs = product_with_pairs(a, a)
    assert len(pairs) == m.num_states
    assert pairs[m.initial] == (a.initial, a.initial)
    assert pairs[m.final] == (a.final, a.final)


def test_unreachable_final_pair_gives_empty_machine():
    a = compile_expr("a", ALPHABET, degree=0)
    b = compile_expr("b", ALPHABET, degree=0)
    m = product(a, b)
    assert m.is_empty and not m.arcs


@settings(max_examples=150, deadline=None)
@given(machines(degree=0, max_states=6), machines(degree=0, max_states=6))
def test_product_language_is_intersection(a, b):
    assert language(product(a, b), 6) == language(a, 6) & language(b, 6)


def test_ons_times_fill_is_degree_two(gen, ons, fill):
    onsfill = augmented_product(ons, fill)
    assert onsfill.degree == 2
    candidates = enumerate_language(gen, 12).strings
    assert len(candidates) == 64
    for cand in candidates:
        assert evaluate(onsfill, cand) == evaluate(ons, cand) + evaluate(fill, cand)


def test_gen_times_constraint_degree(gen, ons):
    assert augmented_product(gen, ons).degree == 1


def test_augmented_product_does_not_commute():
    x = Alphabet(("x",))
    c1 = Machine(1, x, 2, (0,), (1,), (Arc(0, 1, frozenset("x"), (-1,)),))
    c2 = Machine(1, x, 2, (0,), (1,), (Arc(0, 1, frozenset("x"), (0,)),))
    assert evaluate(augmented_product(c1, c2), ("x",)) == (-1, 0)
    assert evaluate(augmented_product(c2, c1), ("x",)) == (0, -1)


@settings(max_examples=150, deadline=None)
@given(machines(max_states=5), machines(max_states=5))
def test_augmented_product_language_and_best_joint_path(a, b):
    ab = augmented_product(a, b)
    assert ab.degree == a.degree + b.degree
    assert language(ab, 6) == language(product(strip_marks(a), strip_marks(b)), 6)
    # best over joint paths: the max over all pairs of per-operand path sums
    joint: dict = {}
    paths_a = [p for q, p in paths_from_initial(a, 6) if q == a.final and p]
    paths_b = [p for q, p in paths_from_initial(b, 6) if q == b.final and p]
    for pa in paths_a:
        for pb in paths_b:
            if len(pa) != len(pb):
                continue
            shared = [x.label & y.label for x, y in zip(pa, pb)]
            if not all(shared):
                continue
            vec = path_sum(pa, a.degree) + path_sum(pb, b.degree)
            for word in cartesian(*(sorted(s) for s in shared)):
                if word not in joint or vec > joint[word]:
                    joint[word] = vec
    assert string_vectors(ab, 6) == joint


@st.composite
def deterministic_machines(draw, degree=1):
    """Each state has at most one arc per symbol, so every string has one path."""
    n = draw(st.integers(2, 4))
    arcs = []
    for q in range(n):
        for sym in ALPHABET.symbols:
            if draw(st.booleans()):
                arcs.append(Arc(q, draw(st.integers(0, n - 1)), frozenset(sym),
                                tuple(draw(st.sampled_from((0, -1))) for _ in range(degree))))
    return Machine(degree, ALPHABET, n, (0,), (n - 1,), tuple(arcs))


@settings(max_examples=150, deadline=None)
@given(deterministic_machines(), deterministic_machines())
def test_deterministic_operands_split_coordinates(a, b):
    ab = augmented_product(a, b)
    for word, vec in string_vectors(ab, 5).items():
        assert vec[:1] == evaluate(a, word)
        assert vec[1:] == evaluate(b, word)


@settings(max_examples=100, deadline=None)
@given(machines(degree=1, max_states=4), machines(degree=1, max_states=4),
       machines(degree=1, max_states=4))
def test_augmented_product_associative(a, b, c):
    left = augmented_product(augmented_product(a, b), c)
    right = augmented_product(a, augmented_product(b, c))
    assert string_vectors(left, 5) == string_vectors(right, 5)
