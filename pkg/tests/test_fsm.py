import dataclasses

import pytest
from hypothesis import given, settings

from conftest import AL_QAL_AM_U, ALQ_AL_AM_U, OPTIMUM
from oracles import ALPHABET, machines, string_vectors
from otfsm.errors import (
    DegreeError,
    MalformedMachineError,
    PositiveMarkError,
    RejectError,
    UnknownSymbolError,
)
from otfsm.fsm import (
    Alphabet,
    Arc,
    Machine,
    accepts,
    evaluate,
    merge_terminals,
    strip_marks,
    trim,
)
from otfsm.optimize import derive

A = frozenset("a")


def machine(arcs, n, initials=(0,), finals=None, degree=0, alphabet=ALPHABET):
    return Machine(degree, alphabet, n, initials, finals or (n - 1,), tuple(arcs))


def test_alphabet_has_wildcard_and_validates_classes():
    alpha = Alphabet(("a", "b"), {"V": ("a",)})
    assert alpha.resolve("ANY") == frozenset("ab")
    assert alpha.resolve("V") == frozenset("a")
    assert alpha.resolve("{a,b}") == frozenset("ab")
    with pytest.raises(UnknownSymbolError):
        Alphabet(("a",), {"V": ("z",)})
    with pytest.raises(MalformedMachineError):
        Alphabet(("a",), {"V": ()})
    with pytest.raises(MalformedMachineError):
        Alphabet(("a",), {"a": ("a",)})
    with pytest.raises(UnknownSymbolError):
        alpha.resolve("zz")


def test_machine_rejects_bad_arcs():
    with pytest.raises(PositiveMarkError):
        machine([Arc(0, 1, A, (1,))], 2, degree=1)
    with pytest.raises(DegreeError):
        machine([Arc(0, 1, A, (0, 0))], 2, degree=1)
    with pytest.raises(MalformedMachineError):
        machine([Arc(0, 1, frozenset())], 2)
    with pytest.raises(MalformedMachineError):
        machine([Arc(0, 5, A)], 2)
    with pytest.raises(UnknownSymbolError):
        machine([Arc(0, 1, frozenset("z"))], 2)


def test_machine_is_immutable():
    m = machine([Arc(0, 1, A)], 2)
    with pytest.raises(dataclasses.FrozenInstanceError):
        m.degree = 3


def test_merge_identity_when_normal():
    m = machine([Arc(0, 1, A)], 2)
    assert merge_terminals(m) is m


def test_merge_two_initials():
    # i1=0, i2=1 both step on `a` to F=2
    m = machine([Arc(0, 2, A), Arc(1, 2, A)], 3, initials=(0, 1))
    merged = merge_terminals(m)
    assert merged.is_normal
    assert merged.num_states == 2
    assert [(a.src, a.dst, a.label) for a in merged.arcs] == [(merged.initial, merged.final, A)] * 2
    assert string_vectors(merged, 3) == {("a",): ()}


def test_merge_empty_machine():
    m = Machine(0, ALPHABET, 1, (0,), (0,), ())
    merged = merge_terminals(m)
    assert merged.num_states == 2 and not merged.arcs and merged.is_empty


@settings(max_examples=150, deadline=None)
@given(machines(normal=False, acyclic=False, max_states=5))
def test_merge_preserves_string_vectors(m):
    merged = merge_terminals(m)
    assert merged.is_normal
    assert string_vectors(merged, 6) == string_vectors(m, 6)


def test_trim_removes_dangling_state():
    arcs = [Arc(0, 1, A), Arc(1, 2, A), Arc(0, 3, frozenset("b"))]
    m = machine(arcs, 4, finals=(2,))
    t = trim(m)
    assert t.num_states == 3 and len(t.arcs) == 2
    assert string_vectors(t, 5) == string_vectors(m, 5)


def test_trim_identity_and_empty():
    m = machine([Arc(0, 1, A)], 2)
    assert trim(m) is m
    empty = trim(machine([Arc(0, 1, A)], 3))
    assert empty.is_empty and not empty.arcs and empty.num_states == 2


def test_trim_of_pruned_surface_is_linear(gen, ons, fill):
    result, _ = derive(gen, [ons, fill])
    assert len(result.arcs) == 9 and result.num_states == 10
    assert [a.src for a in result.arcs] == list(range(9))
    assert [a.dst for a in result.arcs] == list(range(1, 10))
    assert tuple(next(iter(a.label)) for a in result.arcs) == OPTIMUM


@settings(max_examples=150, deadline=None)
@given(machines(acyclic=False, max_states=5))
def test_trim_preserves_string_vectors(m):
    t = trim(m)
    assert string_vectors(t, 6) == string_vectors(m, 6)


def test_accepts_gen_membership(gen):
    assert accepts(gen, AL_QAL_AM_U)
    assert not accepts(gen, ALQ_AL_AM_U)
    assert not accepts(gen, ())
    with pytest.raises(UnknownSymbolError):
        accepts(gen, ("X:y",))


def test_evaluate_nondeterministic_best():
    m = machine([Arc(0, 1, A, (-1,)), Arc(0, 1, A, (0,))], 2, degree=1)
    assert evaluate(m, ("a",)) == (0,)
    assert evaluate(machine([Arc(0, 1, A)], 2), ("a",)) == ()
    with pytest.raises(RejectError):
        evaluate(m, ("b",))


def test_evaluate_surface_optimum(gen, ons, fill):
    from otfsm.product import augmented_product

    surface = augmented_product(augmented_product(gen, ons), fill)
    assert evaluate(surface, OPTIMUM) == (0, -1)


@settings(max_examples=200, deadline=None)
@given(machines(acyclic=True, max_states=8, marks=(0, -1, -2)))
def test_evaluate_matches_path_enumeration(m):
    expected = string_vectors(m, m.num_states)
    for word, vec in expected.items():
        assert accepts(m, word)
        assert evaluate(m, word) == vec
    for word in [("a",), ("b", "c"), ("a", "a", "b")]:
        if word not in expected:
            assert not accepts(m, word)
            with pytest.raises(RejectError):
                evaluate(m, word)


def test_strip_marks():
    m = machine([Arc(0, 1, A, (-1,))], 2, degree=1)
    s = strip_marks(m)
    assert s.degree == 0 and s.arcs[0].marks == ()


def test_is_acyclic():
    assert machine([Arc(0, 1, A)], 2).is_acyclic()
    assert not machine([Arc(0, 1, A), Arc(1, 1, A)], 2).is_acyclic()
