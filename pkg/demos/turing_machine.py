"""While-loops as partial morphisms: the development of a machine datum.

A machine datum is a pair of total morphisms u: X -> W (load the input)
and v: W -> W + Y (one step: keep working or emit an output). Its
development runs v until it emits, giving a partial morphism X -> Y
that is undefined exactly on the diverging inputs.
"""

import random

from pfncoalg import (
    CoalgebraMorphism,
    TuringDatum,
    box,
    compose,
    coproduct,
    coproduct_pm,
    datum_box,
    datum_coprod,
    datum_seq,
    iterate,
    run_trace,
    turing_development,
)
from pfncoalg.coalgebra import Subcoalgebra
from pfncoalg.gen import plain_set_coalgebra
from pfncoalg.laws import random_plain_datum


def mod2_machine():
    """Repeatedly subtract two; halt with the remainder."""
    x = plain_set_coalgebra(["0", "1", "2", "3"])
    w = plain_set_coalgebra(["0", "1", "2", "3"])
    y = plain_set_coalgebra(["0", "1"])
    witness = coproduct([w, y])
    keep, emit = witness.injections
    u = CoalgebraMorphism(x, w, {e: e for e in x.carrier})
    v = CoalgebraMorphism(
        w,
        witness.total,
        {
            e: keep.map[str(int(e) - 2)] if int(e) >= 2 else emit.map[e]
            for e in w.carrier
        },
    )
    return TuringDatum(u, v, y)


def main():
    d = mod2_machine()
    development = turing_development(d)
    print("development of the mod-2 machine:")
    print("  dom:", sorted(development.dom))
    print("  map:", dict(sorted(development.map.items())))
    print()

    trace = run_trace(d, "3")
    print("trace on input 3:")
    print("  visited working states:", list(trace.visited))
    print("  outcome:", trace.outcome)
    print()

    # iteration is the engine underneath: It(f, U) runs f until U is hit
    x = plain_set_coalgebra(["0", "1", "2", "3"])
    f = CoalgebraMorphism(x, x, {"0": "0", "1": "0", "2": "1", "3": "2"})
    it = iterate(f, Subcoalgebra(x, {"0"}))
    print("iterating the countdown map into its fixed point:")
    print("  map:", dict(sorted(it.map.items())))
    print()

    # datum combinators agree with the partial-morphism operations
    rng = random.Random(4)
    d1 = random_plain_datum(rng)
    d3 = random_plain_datum(rng)
    print("combinators on random machines:")
    print(
        "  coproduct law:",
        turing_development(datum_coprod(d1, d3))
        == coproduct_pm(turing_development(d1), turing_development(d3)),
    )
    print(
        "  box law:     ",
        turing_development(datum_box(d1, d3))
        == box(turing_development(d1), turing_development(d3)),
    )


if __name__ == "__main__":
    main()
