"""Canonical form, enumeration, model reduction and refinement of the lattice."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperbelief import (
    AtomFrame,
    EnumerationLimitError,
    Frame,
    Model,
    Proposition,
    atoms_to_proposition,
    canonicalize,
    conjoin,
    disjoin,
    enumerate_hyper_power_set,
    leq,
    proposition_from_names,
    reduce_under_model,
    refine_to_atoms,
    total_ignorance,
    u_of,
)

import oracle
from strategies import frames, modeled_props, propositions, single_term_props

TPFRAME = Frame(("p", "b", "f", "nf"))
P, B, F, NF = (TPFRAME.singleton(n) for n in ("p", "b", "f", "nf"))
TPMODEL = Model.from_constraints(TPFRAME, [(2, 3)])
H1 = (B & F) | P
H2 = (P & NF) | (B & F) | (P & B)

TPAXES = AtomFrame((("f", "nf"), ("b", "b'"), ("p", "p'")))
TPLITERALS = {"f": (0, 0), "nf": (0, 1), "b": (1, 0), "p": (2, 0)}


# --- canonical form ---------------------------------------------------------


def test_absorption_drops_covered_terms():
    prop = canonicalize(TPFRAME, [{0, 3}, {1, 2}, {0}])
    assert prop.terms == (frozenset({0}), frozenset({1, 2}))
    assert prop == H1


def test_terms_sorted_by_size_then_lexicographically():
    prop = canonicalize(TPFRAME, [{1, 2}, {0, 3}, {2}])
    assert prop.terms == (frozenset({2}), frozenset({0, 3}))


def test_duplicate_terms_collapse():
    assert canonicalize(TPFRAME, [{0, 1}, {1, 0}]).terms == (frozenset({0, 1}),)


def test_empty_term_rejected():
    with pytest.raises(ValueError):
        canonicalize(TPFRAME, [set()])


def test_out_of_range_index_rejected():
    with pytest.raises(ValueError):
        canonicalize(TPFRAME, [{0, 9}])


def test_names_round_trip():
    assert proposition_from_names(TPFRAME, [["p", "nf"], ["b", "f"]]).to_names() == [
        ["p", "nf"],
        ["b", "f"],
    ]


def test_str_rendering():
    assert str(Proposition.empty(TPFRAME)) == "∅"
    assert str(P & B) == "p∩b"
    assert str(H1) == "p ∪ (b∩f)"


# --- conjoin / disjoin ------------------------------------------------------


def test_conjoin_distributes_then_absorbs():
    lhs = (P & NF) | (B & F)
    assert lhs & (P | B) == (P & NF) | (B & F)


def test_rule_chain_conjunction_is_single_term():
    assert ((P & NF) & (B & F) & (P & B)).terms == (frozenset({0, 1, 2, 3}),)


def test_empty_is_absorbing_for_conjoin():
    empty = Proposition.empty(TPFRAME)
    assert (H2 & empty).is_empty
    assert (empty & H2).is_empty


def test_empty_is_identity_for_disjoin():
    empty = Proposition.empty(TPFRAME)
    assert H2 | empty == H2


def test_frame_mismatch_rejected():
    other = Frame(("x", "y"))
    with pytest.raises(ValueError):
        conjoin(P, other.singleton("x"))
    with pytest.raises(ValueError):
        disjoin(P, other.singleton("x"))


# --- enumeration ------------------------------------------------------------


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 19), (4, 167)])
def test_enumeration_counts(n, count):
    frame = Frame(tuple("abcde"[:n]))
    assert len(enumerate_hyper_power_set(frame)) == count


def test_two_singleton_enumeration_order():
    frame = Frame(("a", "b"))
    assert [str(p) for p in enumerate_hyper_power_set(frame)] == [
        "∅",
        "a∩b",
        "a",
        "b",
        "a ∪ b",
    ]


def test_enumeration_unique_canonical_and_repeatable():
    frame = Frame(("a", "b", "c"))
    first = enumerate_hyper_power_set(frame)
    second = enumerate_hyper_power_set(frame)
    assert first == second
    assert len(set(first)) == len(first)
    assert all(canonicalize(frame, p.terms) == p for p in first)
    assert first[0].is_empty


def test_enumeration_limits():
    with pytest.raises(EnumerationLimitError):
        enumerate_hyper_power_set(Frame(tuple("abcdef")))
    with pytest.raises(EnumerationLimitError):
        enumerate_hyper_power_set(Frame(tuple("abcdefg")), allow_large=True)


# --- model reduction and order ----------------------------------------------


def test_model_kinds():
    assert Model.free(TPFRAME).kind == "free"
    assert TPMODEL.kind == "hybrid"
    assert Model.shafer(Frame(("a", "b", "c"))).kind == "shafer"


def test_constraints_below_two_members_rejected():
    with pytest.raises(ValueError):
        Model.from_constraints(TPFRAME, [{1}])


def test_contradictory_chain_reduces_to_empty():
    assert reduce_under_model(P & B & F & NF, TPMODEL).is_empty


def test_reduce_keeps_constraint_free_terms():
    assert reduce_under_model(H1 & H2, TPMODEL) == (P & NF) | (B & F) | (P & B)


def test_free_model_reduce_is_identity():
    assert reduce_under_model(H2, Model.free(TPFRAME)) is H2


def test_leq_examples():
    assert not leq(H1, H2, TPMODEL)
    assert leq(P & B & NF, H2, TPMODEL)
    assert leq(P & B & F, F, Model.free(TPFRAME))
    assert leq(Proposition.empty(TPFRAME), P, TPMODEL)


@given(modeled_props(k=2))
def test_leq_matches_region_oracle(case):
    model, (a, b) = case
    assert leq(a, b, model) == oracle.naive_leq(a, b, model)


@given(modeled_props(k=1))
def test_reduce_is_idempotent(case):
    model, (a,) = case
    reduced = reduce_under_model(a, model)
    assert reduce_under_model(reduced, model) == reduced


@given(modeled_props(k=2))
def test_reduce_preserves_order(case):
    model, (a, b) = case
    if leq(a, b, model):
        assert leq(reduce_under_model(a, model), reduce_under_model(b, model), model)


# --- u_of / total ignorance -------------------------------------------------


def test_u_of_collects_mentioned_singletons():
    assert u_of(P & B) == P | B
    assert u_of(H2) == P | B | F | NF
    assert u_of(Proposition.empty(TPFRAME)).is_empty


def test_total_ignorance_unions_every_singleton():
    assert total_ignorance(TPFRAME) == P | B | F | NF


@given(frames(min_n=2, max_n=4), st.data())
def test_u_of_conjoin_of_single_terms_unions_inputs(frame, data):
    a = data.draw(single_term_props(frame))
    b = data.draw(single_term_props(frame))
    assert u_of(a & b) == u_of(a) | u_of(b)


# --- algebraic laws ----------------------------------------------------------


@given(modeled_props(k=2))
def test_conjoin_and_disjoin_commute(case):
    _, (a, b) = case
    assert a & b == b & a
    assert a | b == b | a


@given(modeled_props(k=3))
def test_conjoin_and_disjoin_associate(case):
    _, (a, b, c) = case
    assert (a & b) & c == a & (b & c)
    assert (a | b) | c == a | (b | c)


@given(modeled_props(k=2))
def test_absorption_laws(case):
    _, (a, b) = case
    assert a | (a & b) == a
    assert a & (a | b) == a


@given(modeled_props(k=3))
def test_distributivity(case):
    _, (a, b, c) = case
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)


@given(modeled_props(k=1))
def test_canonicalize_is_idempotent(case):
    _, (a,) = case
    assert canonicalize(a.frame, a.terms) == a


# --- refinement ---------------------------------------------------------------


def test_atom_frame_order_and_names():
    assert TPAXES.atom_count == 8
    assert TPAXES.atom_name(0) == "f∩b∩p"
    assert TPAXES.atom_name(4) == "nf∩b∩p"
    assert TPAXES.atom_name(7) == "nf∩b'∩p'"
    assert len(TPAXES.to_frame()) == 8


def test_single_value_axis_rejected():
    with pytest.raises(ValueError):
        AtomFrame((("f",),))


def test_refine_conjunction_pins_axes():
    assert refine_to_atoms(B & P, TPAXES, TPLITERALS) == frozenset({0, 4})


def test_refine_singleton_leaves_other_axes_free():
    assert refine_to_atoms(F, TPAXES, TPLITERALS) == frozenset({0, 1, 2, 3})


def test_refine_union_of_terms():
    got = refine_to_atoms((P & NF) | (B & F), TPAXES, TPLITERALS)
    assert got == frozenset({0, 1, 4, 6})


def test_contradictory_term_contributes_no_atoms():
    assert refine_to_atoms(F & NF, TPAXES, TPLITERALS) == frozenset()
    assert refine_to_atoms((F & NF) | P, TPAXES, TPLITERALS) == frozenset({0, 2, 4, 6})


def test_unmapped_singleton_rejected():
    with pytest.raises(ValueError, match="no axis mapping"):
        refine_to_atoms(P, TPAXES, {"f": (0, 0)})


def test_out_of_range_mapping_rejected():
    with pytest.raises(ValueError, match="out of range"):
        refine_to_atoms(P, TPAXES, {"p": (5, 0)})


def test_atoms_to_proposition():
    refined = TPAXES.to_frame()
    prop = atoms_to_proposition({0, 4}, refined)
    assert prop.to_names() == [["f∩b∩p"], ["nf∩b∩p"]]


@given(frames(min_n=2, max_n=4), st.data())
def test_shafer_leq_is_atom_inclusion(frame, data):
    # under an all-exclusive model the lattice order must agree with plain
    # subset inclusion of the refined atom sets
    a = data.draw(propositions(frame))
    b = data.draw(propositions(frame))
    model = Model.shafer(frame)
    axes = AtomFrame((frame.names,))
    literals = {name: (0, i) for i, name in enumerate(frame.names)}
    sub = refine_to_atoms(a, axes, literals) <= refine_to_atoms(b, axes, literals)
    assert leq(a, b, model) == sub
