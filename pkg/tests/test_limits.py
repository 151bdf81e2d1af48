"""Coproducts, near products, powers, and the distribution isomorphism."""

import random

import pytest

import pfncoalg.functor as fn
from pfncoalg import gen
from pfncoalg.coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    is_morphism,
    largest_bisimulation,
)
from pfncoalg.errors import NonDeterministicProduct, ValidationError
from pfncoalg.limits import (
    coproduct,
    cotuple,
    dist,
    empty_coalgebra,
    pair_total,
    power,
    product,
    verify_product_universal,
)

STREAM = fn.Prod(fn.Const({"0", "1"}), fn.IDENT)


def stream_coalgebra(table):
    structure = {
        s: fn.PairT(fn.ConstVal(o), fn.Leaf(n)) for s, (o, n) in table.items()
    }
    return Coalgebra(STREAM, table.keys(), structure)


def test_coproduct_injections_and_cotuple():
    a = gen.plain_set_coalgebra(["a", "b"])
    b = gen.plain_set_coalgebra(["b", "c"])
    w = coproduct([a, b])
    i0, i1 = w.injections
    assert len(w.total.carrier) == 4
    target = gen.plain_set_coalgebra(["t", "u"])
    f = CoalgebraMorphism(a, target, {"a": "t", "b": "u"})
    g = CoalgebraMorphism(b, target, {"b": "t", "c": "t"})
    h = cotuple(f, g)
    assert all(h.map[i0.map[x]] == f.map[x] for x in a.carrier)
    assert all(h.map[i1.map[x]] == g.map[x] for x in b.carrier)


def test_empty_coalgebra_is_coproduct_unit():
    a = gen.plain_set_coalgebra(["a"])
    e = empty_coalgebra(fn.IDENT)
    w = coproduct([a, e])
    assert len(w.total.carrier) == 1


def test_product_carrier_is_largest_bisimulation():
    x = stream_coalgebra({"a": ("0", "a"), "b": ("1", "b")})
    y = stream_coalgebra({"c": ("0", "c")})
    w = product(x, y)
    bisim = largest_bisimulation(x, y)
    assert len(w.total.carrier) == len(bisim)
    assert sorted(w.total.carrier) == sorted(
        fn.pair_elem(a, b) for a, b in bisim
    )
    for p in w.projections:
        ok, _ = is_morphism(p)
        assert ok


def test_product_rejects_nondeterministic_functor():
    rng = random.Random(0)
    c = gen.random_coalgebra(fn.Pow(fn.IDENT), rng, max_size=2)
    with pytest.raises(NonDeterministicProduct):
        product(c, c)


def test_product_element_of_rejects_non_bisimilar_pairs():
    x = stream_coalgebra({"a": ("0", "a"), "b": ("1", "b")})
    w = product(x, x)
    assert w.element_of("a", "a") == fn.pair_elem("a", "a")
    with pytest.raises(ValidationError):
        w.element_of("a", "b")


def test_pair_total_mediates_projections():
    x = stream_coalgebra({"a": ("0", "b"), "b": ("0", "a")})
    t = stream_coalgebra({"s": ("0", "t"), "t": ("0", "s")})
    f = CoalgebraMorphism(t, x, {"s": "a", "t": "b"})
    g = CoalgebraMorphism(t, x, {"s": "b", "t": "a"})
    w = product(x, x)
    h = pair_total(f, g, w)
    p0, p1 = w.projections
    assert all(p0.map[h.map[e]] == f.map[e] for e in t.carrier)
    assert all(p1.map[h.map[e]] == g.map[e] for e in t.carrier)


def test_power_of_plain_set():
    a = gen.plain_set_coalgebra(["a", "b"])
    p = power(a, 2)
    assert len(p.carrier) == 4


def test_dist_is_an_isomorphism_pair():
    x = gen.plain_set_coalgebra(["x0", "x1"])
    y = gen.plain_set_coalgebra(["y0"])
    z = gen.plain_set_coalgebra(["z0", "z1"])
    forward, backward = dist(x, [y, z])
    assert sorted(forward.map) == sorted(backward.map.values())
    assert all(backward.map[forward.map[e]] == e for e in forward.map)
    for m in (forward, backward):
        ok, _ = is_morphism(m)
        assert ok


def test_verify_product_universal_and_negative_control():
    rng = random.Random(11)
    x = stream_coalgebra({"a": ("0", "a"), "b": ("1", "a")})
    y = stream_coalgebra({"c": ("0", "c"), "d": ("1", "c")})
    w = product(x, y)
    assert verify_product_universal(w, 10, rng)
    p0, p1 = w.projections
    corrupt = type(w)(
        factors=w.factors,
        total=w.total,
        projections=(
            CoalgebraMorphism(
                p0.src, p0.dst, {k: sorted(p0.dst.carrier)[0] for k in p0.map},
                check=False,
            ),
            p1,
        ),
    )
    assert not verify_product_universal(corrupt, 10, rng)
