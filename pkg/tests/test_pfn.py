"""Partial morphisms: composition, domains, near product, choice, division."""

import random

import pytest

import pfncoalg.functor as fn
from pfncoalg import gen
from pfncoalg.coalgebra import Coalgebra, CoalgebraMorphism, Subcoalgebra
from pfncoalg.errors import (
    DomainNotContained,
    NotDivisible,
    NotPartialMono,
    ObjectMismatch,
    ValidationError,
)
from pfncoalg.laws import two_point_counterexample
from pfncoalg.pfn import (
    PartialMorphism,
    box,
    compose,
    diagonal,
    divide,
    dom,
    dom_formula,
    embed_total,
    equal,
    identity_pm,
    is_partial_mono,
    is_total,
    is_weakly_total,
    is_zero,
    pair,
    partial_identity,
    projection_pm,
    ran,
    section,
    twist_component,
    zero,
)


def plain(*elements):
    return gen.plain_set_coalgebra(list(elements))


def pm(src, dst, table):
    return PartialMorphism(src, dst, table.keys(), table)


def test_domain_must_be_a_subcoalgebra():
    x = two_point_counterexample()
    with pytest.raises(ValidationError):
        PartialMorphism(x, x, {"x"}, {"x": "x"})


def test_weakly_total_but_not_total():
    x = two_point_counterexample()
    f = partial_identity(Subcoalgebra(x, {"y"}))
    assert is_weakly_total(f)
    assert not is_total(f)
    assert is_total(identity_pm(x))


def test_composition_is_preimage_on_domains():
    a, b, c = plain("1", "2", "3"), plain("4", "5"), plain("6")
    f = pm(a, b, {"1": "4", "2": "5"})
    g = pm(b, c, {"4": "6"})
    gf = compose(g, f)
    assert gf.dom == {"1"}
    assert gf.map == {"1": "6"}


def test_zero_and_object_mismatch():
    a, b = plain("1"), plain("2")
    assert is_zero(zero(a, b))
    with pytest.raises(ObjectMismatch):
        equal(zero(a, b), zero(b, a))
    with pytest.raises(ObjectMismatch):
        compose(pm(a, b, {"1": "2"}), pm(a, b, {"1": "2"}))


def test_dom_and_ran_are_subcoalgebras():
    a, b = plain("1", "2", "3"), plain("4", "5")
    f = pm(a, b, {"1": "4", "2": "4"})
    assert dom(f).subset == {"1", "2"}
    assert ran(f).subset == {"4"}
    assert dom_formula(f) == dom(f)


def test_box_acts_componentwise():
    a, b = plain("1", "2"), plain("3")
    f = pm(a, a, {"1": "2"})
    g = pm(b, b, {"3": "3"})
    h = box(f, g)
    assert h.map == {fn.pair_elem("1", "3"): fn.pair_elem("2", "3")}


def test_pair_and_projections():
    a = plain("1", "2")
    f = pm(a, a, {"1": "1"})
    g = pm(a, a, {"1": "2", "2": "2"})
    p = pair(f, g)
    assert p.map == {"1": fn.pair_elem("1", "2")}
    p0 = projection_pm(a, a, 0)
    p1 = projection_pm(a, a, 1)
    assert compose(p0, p).map == {"1": "1"}
    assert compose(p1, p).map == {"1": "2"}


def test_diagonal_then_twist_is_diagonal():
    a = plain("1", "2")
    d = diagonal(a)
    tw = twist_component(a, a)
    assert compose(tw, d) == d


def test_partial_mono_and_section():
    a, b = plain("1", "2", "3"), plain("4", "5", "6")
    f = pm(a, b, {"1": "4", "2": "5"})
    assert is_partial_mono(f)
    s = section(f)
    assert compose(f, s) == partial_identity(ran(f))
    assert compose(compose(f, s), f) == f
    g = pm(a, b, {"1": "4", "2": "4"})
    assert not is_partial_mono(g)
    with pytest.raises(NotPartialMono):
        section(g)


def test_division_recovers_the_quotient():
    a, b, c = plain("1", "2"), plain("3", "4"), plain("5")
    phi = pm(a, b, {"1": "3", "2": "4"})
    rho = pm(b, c, {"3": "5", "4": "5"})
    psi = compose(rho, phi)
    quotient = divide(psi, phi)
    assert dom(quotient) == ran(phi)
    assert compose(quotient, phi) == psi


def test_division_failure_modes():
    a, b, c = plain("1", "2"), plain("3"), plain("5", "6")
    phi = pm(a, b, {"1": "3", "2": "3"})
    psi_narrow = pm(a, c, {"1": "5"})
    with pytest.raises(DomainNotContained):
        divide(psi_narrow, phi)
    psi_split = pm(a, c, {"1": "5", "2": "6"})
    with pytest.raises(NotDivisible):
        divide(psi_split, phi)


def test_embed_total_round_trip():
    a = plain("1", "2")
    f = pm(a, a, {"1": "2", "2": "1"})
    assert is_total(f)
    total = embed_total(CoalgebraMorphism(a, a, dict(f.map)))
    assert total == f


def test_random_box_domain_formula():
    rng = random.Random(21)
    functor = fn.Prod(fn.Const({"0", "1"}), fn.IDENT)
    for _ in range(15):
        a = gen.random_coalgebra(functor, rng, max_size=3)
        b = gen.random_coalgebra(functor, rng, max_size=3)
        f = gen.random_partial_morphism(a, b, rng)
        g = gen.random_partial_morphism(a, b, rng)
        h = box(f, g)
        h.validate()
        assert dom_formula(f) == dom(f)
