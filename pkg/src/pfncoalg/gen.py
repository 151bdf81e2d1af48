"""Seeded random generation and small exhaustive enumeration of instances.

Used by the law suites and the randomized acceptance checks. Everything is
driven by an explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

import itertools
from typing import List

from . import functor as fn
from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    cogenerated_inside,
    generated,
    is_morphism,
    open_sets,
    restrict,
)
from .errors import ValidationError
from .functor import FunctorExpr

ELEMENT_POOL = [f"e{i}" for i in range(12)]


def realizable(functor: FunctorExpr, carrier_nonempty: bool) -> bool:
    """Whether F(X) is nonempty for a carrier of the given (non)emptiness."""
    size = fn.cardinality(functor, 1 if carrier_nonempty else 0)
    return size > 0


def random_term(functor: FunctorExpr, carrier: list, rng) -> fn.FTerm:
    """A uniform-ish random well-typed term; carrier must make one possible."""
    if isinstance(functor, fn.Const):
        return fn.ConstVal(rng.choice(sorted(functor.symbols)))
    if isinstance(functor, fn.Ident):
        return fn.Leaf(rng.choice(carrier))
    if isinstance(functor, fn.Prod):
        return fn.PairT(
            random_term(functor.left, carrier, rng),
            random_term(functor.right, carrier, rng),
        )
    if isinstance(functor, fn.Sum):
        sides = []
        if realizable(functor.left, bool(carrier)):
            sides.append("l")
        if realizable(functor.right, bool(carrier)):
            sides.append("r")
        if not sides:
            raise ValidationError("sum has no realizable side")
        if rng.choice(sides) == "l":
            return fn.InlT(random_term(functor.left, carrier, rng))
        return fn.InrT(random_term(functor.right, carrier, rng))
    if isinstance(functor, fn.Exp):
        return fn.func_term(
            {k: random_term(functor.body, carrier, rng) for k in functor.indices}
        )
    if isinstance(functor, fn.Pow):
        count = rng.randint(0, 3)
        return fn.set_term(
            random_term(functor.body, carrier, rng) for _ in range(count)
        )
    raise ValidationError(f"not a functor expression: {functor!r}")


def random_coalgebra(
    functor: FunctorExpr, rng, max_size: int = 4, min_size: int = 1
) -> Coalgebra:
    size = rng.randint(min_size, max_size)
    carrier = ELEMENT_POOL[:size]
    structure = {x: random_term(functor, carrier, rng) for x in carrier}
    return Coalgebra(functor, carrier, structure)


def all_total_maps(src_carrier, dst_carrier) -> List[dict]:
    src = sorted(src_carrier)
    dst = sorted(dst_carrier)
    if not src:
        return [{}]
    if not dst:
        return []
    return [dict(zip(src, values)) for values in itertools.product(dst, repeat=len(src))]


def all_total_morphisms(a: Coalgebra, b: Coalgebra) -> List[CoalgebraMorphism]:
    """Every coalgebra morphism a -> b, by exhaustive search over maps."""
    out = []
    for table in all_total_maps(a.carrier, b.carrier):
        candidate = CoalgebraMorphism(a, b, table, check=False)
        ok, _ = is_morphism(candidate)
        if ok:
            out.append(candidate)
    return out


def all_partial_morphisms(a: Coalgebra, b: Coalgebra):
    """Every partial morphism a ⇢ b, for small carriers."""
    from .pfn import PartialMorphism

    out = []
    for dom_set in open_sets(a):
        restricted = restrict(a, dom_set)
        for total in all_total_morphisms(restricted, b):
            out.append(PartialMorphism(a, b, dom_set, total.map, check=False))
    return out


def random_subcoalgebra(x: Coalgebra, rng) -> Subcoalgebra:
    """A random subcoalgebra, via closure or interior of a random subset."""
    subset = [e for e in sorted(x.carrier) if rng.random() < 0.5]
    if rng.random() < 0.5:
        return generated(x, subset)
    return cogenerated_inside(x, subset)


def random_partial_morphism(a: Coalgebra, b: Coalgebra, rng):
    """A random partial morphism a ⇢ b, or None if only zero exists."""
    from .pfn import PartialMorphism, zero

    candidates = []
    for dom_set in open_sets(a):
        restricted = restrict(a, dom_set)
        found = all_total_morphisms(restricted, b)
        for total in found:
            candidates.append((dom_set, total))
    if not candidates:
        return zero(a, b)
    dom_set, total = rng.choice(candidates)
    return PartialMorphism(a, b, dom_set, total.map, check=False)


def plain_set_coalgebra(elements) -> Coalgebra:
    """A set as a coalgebra for the identity functor with identity structure.

    Every total map between such coalgebras is a morphism, so this family
    realizes ordinary sets and partial functions.
    """
    elements = list(elements)
    return Coalgebra(fn.IDENT, elements, {x: fn.Leaf(x) for x in elements})


def random_plain_sets_morphism(a: Coalgebra, b: Coalgebra, rng) -> CoalgebraMorphism:
    table = {x: rng.choice(sorted(b.carrier)) for x in a.carrier}
    return CoalgebraMorphism(a, b, table, check=False)
