"""Canonical JSON round trips for every interchange value type."""

import random

import pytest

import pfncoalg.functor as fn
from pfncoalg import gen, serialization as ser
from pfncoalg.coalgebra import CoalgebraMorphism
from pfncoalg.errors import ParseError
from pfncoalg.laws import BATTERY, two_point_counterexample, random_plain_datum
from pfncoalg.pfn import partial_identity
from pfncoalg.coalgebra import Subcoalgebra

FUNCTOR_SAMPLES = list(BATTERY.values()) + [
    fn.Sum(fn.Const({"a"}), fn.Pow(fn.Prod(fn.IDENT, fn.IDENT))),
    fn.Exp({"k0"}, fn.Exp({"k1"}, fn.IDENT)),
]


@pytest.mark.parametrize("functor", FUNCTOR_SAMPLES, ids=repr)
def test_functor_round_trip(functor):
    assert ser.loads(ser.dumps(functor)) == functor


def test_coalgebra_round_trip_every_battery_functor():
    rng = random.Random(1)
    for functor in BATTERY.values():
        for _ in range(5):
            c = gen.random_coalgebra(functor, rng, max_size=4)
            assert ser.loads(ser.dumps(c)) == c


def test_morphism_and_partial_morphism_round_trip():
    x = two_point_counterexample()
    f = CoalgebraMorphism(x, x, {"x": "y", "y": "y"})
    assert ser.loads(ser.dumps(f)) == f
    p = partial_identity(Subcoalgebra(x, {"y"}))
    assert ser.loads(ser.dumps(p)) == p


def test_turing_datum_round_trip():
    rng = random.Random(2)
    for _ in range(5):
        d = random_plain_datum(rng)
        assert ser.loads(ser.dumps(d)) == d


def test_serialization_is_bit_stable():
    x = two_point_counterexample()
    assert ser.dumps(x) == ser.dumps(ser.loads(ser.dumps(x)))


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as excinfo:
        ser.loads('{"functor": "id",}')
    assert "line 1" in str(excinfo.value)


def test_malformed_documents_rejected():
    with pytest.raises(ParseError):
        ser.loads('{"functor": {"wat": 1}, "carrier": [], "structure": {}}')
    with pytest.raises(ParseError):
        ser.loads('{"nope": true}')
