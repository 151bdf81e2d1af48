"""Bisimilarity and near products of stream systems.

Stream coalgebras for F(A) = O x A emit an output and move to a next
state. Two states are bisimilar exactly when they emit the same output
stream, and the near product of two stream systems is carried by the
bisimilar pairs.
"""

import random

from pfncoalg import (
    Coalgebra,
    ConstVal,
    Leaf,
    PairT,
    box,
    compose,
    identity_pm,
    largest_bisimulation,
    partial_identity,
    product,
    stream_functor,
    twist_component,
    verify_product_universal,
)
from pfncoalg.coalgebra import Subcoalgebra

F = stream_functor(["0", "1"])


def stream(table):
    """table: state -> (output, next state)."""
    structure = {
        s: PairT(ConstVal(o), Leaf(n)) for s, (o, n) in table.items()
    }
    return Coalgebra(F, table.keys(), structure)


def main():
    # a and b both emit 010101..., z emits 000..., o emits 111...
    x = stream(
        {"a": ("0", "a'"), "a'": ("1", "a"), "z": ("0", "z"), "o": ("1", "o")}
    )
    y = stream({"b": ("0", "b'"), "b'": ("1", "b"), "c": ("1", "c")})

    print("largest bisimulation between the two systems:")
    for pair in sorted(largest_bisimulation(x, y)):
        print("  ", pair)
    print()

    w = product(x, y)
    print("near product carrier (one element per bisimilar pair):")
    print("  ", sorted(w.total.carrier))
    rng = random.Random(0)
    print("universal property verified:", verify_product_universal(w, 20, rng))
    print()

    tw = compose(twist_component(y, x), twist_component(x, y))
    print("twist is involutive:", tw == identity_pm(product(x, y).total))
    print()

    # box restricts componentwise maps to the product of the domains
    u = partial_identity(Subcoalgebra(x, {"o"}))
    v = identity_pm(y)
    h = box(u, v)
    print("box of (partial identity on {o}) with the identity:")
    print("  dom:", sorted(h.dom))


if __name__ == "__main__":
    main()
