"""A two-state system whose topology separates weak totality from totality.

The coalgebra is a self-map on {x, y} with y fixed and x feeding into y.
Its only proper nonempty subcoalgebra is {y}, which is dense, so the
partial identity on {y} is weakly total without being total.
"""

from pfncoalg import (
    IDENT,
    Coalgebra,
    Leaf,
    Subcoalgebra,
    closure,
    generated,
    interior,
    is_dense,
    is_hausdorff,
    is_irreducible,
    is_subcoalgebra,
    is_total,
    is_weakly_total,
    open_sets,
    partial_identity,
)


def main():
    x = Coalgebra(IDENT, {"x", "y"}, {"x": Leaf("y"), "y": Leaf("y")})
    print("carrier:", sorted(x.carrier))
    print("structure: x -> y, y -> y")
    print()

    print("subcoalgebras are the successor-closed subsets:")
    for subset in [set(), {"x"}, {"y"}, {"x", "y"}]:
        print(f"  {sorted(subset)!r:14} open: {is_subcoalgebra(x, subset)}")
    print("open sets:", [sorted(o) for o in open_sets(x)])
    print()

    print("the topology of this tiny space is already interesting:")
    print("  closure of {y}: ", sorted(closure(x, {"y"})))
    print("  interior of {x}:", sorted(interior(x, {"x"})))
    print("  {y} dense:      ", is_dense(x, {"y"}))
    print("  irreducible:    ", is_irreducible(x))
    print("  hausdorff:      ", is_hausdorff(x))
    print("  generated by x: ", sorted(generated(x, {"x"}).subset))
    print()

    f = partial_identity(Subcoalgebra(x, {"y"}))
    print("partial identity on the dense open {y}:")
    print("  weakly total:", is_weakly_total(f))
    print("  total:       ", is_total(f))
    print()
    print("so a partial morphism can be impossible to kill by precomposition")
    print("while still missing part of the carrier.")


if __name__ == "__main__":
    main()
