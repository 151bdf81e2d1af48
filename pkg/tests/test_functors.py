"""Functor grammar: terms, enumeration, mapping, lifting, pullbacks."""

import pytest
from hypothesis import given, strategies as st

import pfncoalg.functor as fn
from pfncoalg.errors import EnumerationLimitExceeded, NotAPullback, ValidationError

STREAM = fn.Prod(fn.Const({"0", "1"}), fn.IDENT)


def test_set_term_deduplicates_and_sorts():
    a = fn.set_term([fn.Leaf("b"), fn.Leaf("a"), fn.Leaf("b")])
    b = fn.set_term([fn.Leaf("a"), fn.Leaf("b")])
    assert a == b
    assert [m.element for m in a.members] == ["a", "b"]


def test_func_term_sorts_by_index():
    t = fn.func_term({"k1": fn.Leaf("x"), "k0": fn.Leaf("y")})
    assert [k for k, _ in t.table] == ["k0", "k1"]


def test_cardinality_matches_enumeration():
    carrier = ["a", "b"]
    for functor in [
        fn.Const({"c"}),
        fn.IDENT,
        STREAM,
        fn.Sum(fn.IDENT, fn.Const({"z"})),
        fn.Exp({"i", "j"}, fn.IDENT),
        fn.Pow(fn.IDENT),
    ]:
        terms = fn.apply_on_set(functor, carrier)
        assert len(terms) == fn.cardinality(functor, len(carrier))
        assert len(set(map(fn.term_key, terms))) == len(terms)


def test_enumeration_limit_guard():
    with pytest.raises(EnumerationLimitExceeded):
        fn.apply_on_set(fn.Pow(fn.Pow(fn.IDENT)), ["a", "b", "c"], limit=100)


def test_check_term_rejects_foreign_leaf():
    with pytest.raises(ValidationError):
        fn.check_term(fn.IDENT, fn.Leaf("z"), ["a", "b"])


@given(st.dictionaries(st.sampled_from("ab"), st.sampled_from("cd"), min_size=2))
def test_apply_on_map_preserves_identities_and_composition(f):
    carrier = ["a", "b"]
    g = {"c": "a", "d": "b"}
    for functor in [fn.IDENT, STREAM, fn.Pow(fn.IDENT), fn.Exp({"i"}, fn.IDENT)]:
        for term in fn.apply_on_set(functor, carrier):
            ident = {x: x for x in carrier}
            assert fn.apply_on_map(functor, ident, term) == term
            composed = {x: g[f[x]] for x in carrier}
            assert fn.apply_on_map(functor, composed, term) == fn.apply_on_map(
                functor, g, fn.apply_on_map(functor, f, term)
            )


def test_lift_relation_on_diagonal_is_term_equality():
    carrier = ["a", "b"]
    diag = {(x, x) for x in carrier}
    for functor in [fn.IDENT, STREAM, fn.Pow(fn.IDENT)]:
        terms = fn.apply_on_set(functor, carrier)
        for t in terms:
            for s in terms:
                assert fn.lift_relation(functor, diag, t, s) == (t == s)


def test_powerset_lifting_is_forth_and_back():
    r = {("a", "x")}
    left = fn.set_term([fn.Leaf("a"), fn.Leaf("b")])
    right = fn.set_term([fn.Leaf("x")])
    assert not fn.lift_relation(fn.Pow(fn.IDENT), r, left, right)
    r2 = {("a", "x"), ("b", "x")}
    assert fn.lift_relation(fn.Pow(fn.IDENT), r2, left, right)


def test_nontriviality_and_determinism_flags():
    assert fn.is_nontrivial(fn.IDENT)
    assert fn.is_nontrivial(fn.Exp(frozenset(), fn.Const(frozenset())))
    assert not fn.is_nontrivial(fn.Const(frozenset()))
    assert not fn.is_nontrivial(fn.Prod(fn.Const(frozenset()), fn.IDENT))
    assert fn.is_deterministic(STREAM)
    assert not fn.is_deterministic(fn.Pow(fn.IDENT))


def test_canonical_pullback_validates():
    f = {"b0": "d0", "b1": "d1"}
    g = {"c0": "d0"}
    square = fn.canonical_pullback(f, g, ["d0", "d1"])
    square.validate()
    assert sorted(square.apex) == [fn.pair_elem("b0", "c0")]


def test_non_pullback_square_is_rejected():
    f = {"b0": "d0"}
    g = {"c0": "d0"}
    square = fn.canonical_pullback(f, g, ["d0"])
    broken = fn.PullbackSquare(
        apex=frozenset(),
        left_set=square.left_set,
        right_set=square.right_set,
        corner=square.corner,
        to_left={},
        to_right={},
        f=dict(f),
        g=dict(g),
    )
    with pytest.raises(NotAPullback):
        broken.validate()


def test_weak_pullback_preservation_on_small_square():
    f = {"b0": "d0", "b1": "d0"}
    g = {"c0": "d0"}
    square = fn.canonical_pullback(f, g, ["d0"])
    for functor in [fn.IDENT, STREAM, fn.Pow(fn.IDENT), fn.Exp({"i"}, fn.IDENT)]:
        ok, counterexample = fn.check_weak_pullback_preservation(functor, square)
        assert ok, counterexample
