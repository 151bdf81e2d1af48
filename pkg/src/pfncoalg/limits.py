"""Coproducts, products via the largest bisimulation, and distributivity.

Coproducts exist for every functor in the grammar and are tagged disjoint
unions. Products exist only for powerset-free functors: the carrier is the
largest bisimulation between the factors and the structure is forced by
pairing structure terms leafwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import functor as fn
from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    comp,
    is_morphism,
    largest_bisimulation,
)
from .errors import (
    CodomainMismatch,
    FunctorMismatch,
    InvariantViolation,
    NonDeterministicProduct,
    ValidationError,
)
from .functor import (
    ConstVal,
    FTerm,
    FunctorExpr,
    InlT,
    InrT,
    Leaf,
    PairT,
    pair_elem,
)


def inj_elem(index: int, x: str) -> str:
    return f"{index}:{x}"


def empty_coalgebra(functor: FunctorExpr) -> Coalgebra:
    return Coalgebra(functor, frozenset(), {}, allow_trivial=True)


@dataclass(frozen=True, eq=False)
class CoproductWitness:
    summands: tuple
    total: Coalgebra
    injections: tuple  # CoalgebraMorphism per summand

    def __eq__(self, other):
        return (
            isinstance(other, CoproductWitness)
            and self.summands == other.summands
            and self.total == other.total
            and self.injections == other.injections
        )


@dataclass(frozen=True, eq=False)
class ProductWitness:
    factors: tuple  # (Coalgebra, Coalgebra)
    total: Coalgebra
    projections: tuple  # (CoalgebraMorphism, CoalgebraMorphism)

    def __eq__(self, other):
        return (
            isinstance(other, ProductWitness)
            and self.factors == other.factors
            and self.total == other.total
            and self.projections == other.projections
        )

    def element_of(self, x: str, y: str) -> str:
        """The carrier element with the given projections, if present."""
        e = pair_elem(x, y)
        if e not in self.total.carrier:
            raise ValidationError(f"({x!r}, {y!r}) is not a bisimilar pair")
        return e


def coproduct(
    summands: Iterable[Coalgebra], functor: Optional[FunctorExpr] = None
) -> CoproductWitness:
    """Tagged disjoint union with componentwise structure."""
    summands = tuple(summands)
    if not summands:
        if functor is None:
            raise FunctorMismatch("empty coproduct needs an explicit functor")
        total = empty_coalgebra(functor)
        return CoproductWitness((), total, ())
    functor = summands[0].functor
    if any(s.functor != functor for s in summands):
        raise FunctorMismatch("coproduct summands over different functors")
    carrier, structure, injections = set(), {}, []
    for i, s in enumerate(summands):
        tag = {x: inj_elem(i, x) for x in s.carrier}
        carrier |= set(tag.values())
        for x in s.carrier:
            structure[tag[x]] = fn.apply_on_map(functor, tag, s.structure[x])
    total = Coalgebra(functor, carrier, structure, allow_trivial=True)
    for i, s in enumerate(summands):
        injections.append(
            CoalgebraMorphism(s, total, {x: inj_elem(i, x) for x in s.carrier}, check=False)
        )
    return CoproductWitness(summands, total, tuple(injections))


def cotuple_list(fs: Iterable[CoalgebraMorphism], witness: CoproductWitness) -> CoalgebraMorphism:
    """The unique morphism out of the coproduct restricting to each fs[i]."""
    fs = tuple(fs)
    if len(fs) != len(witness.summands):
        raise CodomainMismatch("one morphism per summand required")
    if not fs:
        raise CodomainMismatch("empty cotuple needs an explicit codomain; use zero maps")
    codomain = fs[0].dst
    if any(f.dst != codomain for f in fs):
        raise CodomainMismatch("cotuple branches into different codomains")
    table = {}
    for i, f in enumerate(fs):
        if f.src != witness.summands[i]:
            raise CodomainMismatch(f"branch {i} does not start at summand {i}")
        for x in f.src.carrier:
            table[inj_elem(i, x)] = f.map[x]
    return CoalgebraMorphism(witness.total, codomain, table, check=False)


def cotuple(f: CoalgebraMorphism, g: CoalgebraMorphism) -> CoalgebraMorphism:
    """[f, g] out of the binary coproduct of the sources."""
    witness = coproduct([f.src, g.src])
    return cotuple_list([f, g], witness)


def pair_structure_terms(functor: FunctorExpr, t: FTerm, s: FTerm) -> FTerm:
    """Zip two structure terms of a deterministic functor leafwise.

    The result's leaves are pair elements; shapes must match, which holds for
    any bisimilar pair of terms.
    """
    if isinstance(functor, fn.Const):
        if not (isinstance(t, ConstVal) and t == s):
            raise InvariantViolation(f"constants differ: {t!r} vs {s!r}")
        return t
    if isinstance(functor, fn.Ident):
        return Leaf(pair_elem(t.element, s.element))
    if isinstance(functor, fn.Prod):
        return PairT(
            pair_structure_terms(functor.left, t.fst, s.fst),
            pair_structure_terms(functor.right, t.snd, s.snd),
        )
    if isinstance(functor, fn.Sum):
        if isinstance(t, InlT) and isinstance(s, InlT):
            return InlT(pair_structure_terms(functor.left, t.value, s.value))
        if isinstance(t, InrT) and isinstance(s, InrT):
            return InrT(pair_structure_terms(functor.right, t.value, s.value))
        raise InvariantViolation(f"injections differ: {t!r} vs {s!r}")
    if isinstance(functor, fn.Exp):
        left, right = dict(t.table), dict(s.table)
        return fn.func_term(
            {k: pair_structure_terms(functor.body, left[k], right[k]) for k in left}
        )
    raise NonDeterministicProduct("cannot pair terms of a powerset functor")


def product(x: Coalgebra, y: Coalgebra) -> ProductWitness:
    """Product with carrier the largest bisimulation and forced structure."""
    if not fn.is_deterministic(x.functor):
        raise NonDeterministicProduct(
            "products are only formed for powerset-free functors"
        )
    relation = largest_bisimulation(x, y)
    carrier = {pair_elem(a, b) for a, b in relation}
    structure = {
        pair_elem(a, b): pair_structure_terms(
            x.functor, x.structure[a], y.structure[b]
        )
        for a, b in relation
    }
    total = Coalgebra(x.functor, carrier, structure, allow_trivial=True)
    p0 = CoalgebraMorphism(
        total, x, {pair_elem(a, b): a for a, b in relation}, check=False
    )
    p1 = CoalgebraMorphism(
        total, y, {pair_elem(a, b): b for a, b in relation}, check=False
    )
    return ProductWitness((x, y), total, (p0, p1))


def power(x: Coalgebra, n: int) -> Coalgebra:
    """Iterated product; nonempty whenever x is nonempty."""
    if n < 1:
        raise ValidationError("power requires n >= 1")
    result = x
    for _ in range(n - 1):
        result = product(result, x).total
    if x.carrier and not result.carrier:
        raise InvariantViolation("power of a nonempty coalgebra came out empty")
    return result


def pair_total(
    f: CoalgebraMorphism, g: CoalgebraMorphism, witness: Optional[ProductWitness] = None
) -> CoalgebraMorphism:
    """<f, g> into the product of the codomains, for a common source."""
    if f.src != g.src:
        raise CodomainMismatch("pairing requires a common source")
    if witness is None:
        witness = product(f.dst, g.dst)
    table = {t: witness.element_of(f.map[t], g.map[t]) for t in f.src.carrier}
    return CoalgebraMorphism(f.src, witness.total, table, check=False)


def dist(x: Coalgebra, ys: Iterable[Coalgebra]):
    """Mutually inverse morphisms between X x (⨿ Ys) and ⨿ (X x Y_i).

    Returns (forward, backward).
    """
    ys = tuple(ys)
    co = coproduct(ys, functor=x.functor)
    lhs = product(x, co.total)
    rhs_parts = [product(x, y) for y in ys]
    rhs = coproduct([w.total for w in rhs_parts], functor=x.functor)
    forward_table, backward_table = {}, {}
    p0, p1 = lhs.projections
    side_of = {}
    for i, inj in enumerate(co.injections):
        for b in inj.src.carrier:
            side_of[inj.map[b]] = (i, b)
    for e in lhs.total.carrier:
        a, tagged = p0.map[e], p1.map[e]
        i, b = side_of[tagged]
        target = inj_elem(i, rhs_parts[i].element_of(a, b))
        forward_table[e] = target
        backward_table[target] = e
    forward = CoalgebraMorphism(lhs.total, rhs.total, forward_table, check=False)
    backward = CoalgebraMorphism(rhs.total, lhs.total, backward_table, check=False)
    return forward, backward


def verify_product_universal(witness: ProductWitness, trials: int, rng) -> bool:
    """Randomized check of the product's universal property.

    Validates the witness invariants, then draws small test sources with
    morphism pairs into the factors and checks that the pairing is the unique
    mediating morphism.
    """
    from . import gen  # local import: gen has no dependency on this module

    x, y = witness.factors
    p0, p1 = witness.projections
    ok0, _ = is_morphism(p0)
    ok1, _ = is_morphism(p1)
    if not (ok0 and ok1):
        return False
    pairs = {(p0.map[e], p1.map[e]) for e in witness.total.carrier}
    if len(pairs) != len(witness.total.carrier):
        return False  # projections not jointly monic
    if pairs != set(largest_bisimulation(x, y)):
        return False
    reverse = {(p0.map[e], p1.map[e]): e for e in witness.total.carrier}
    for _ in range(trials):
        t = gen.random_coalgebra(x.functor, rng, max_size=3)
        into_x = gen.all_total_morphisms(t, x)
        into_y = gen.all_total_morphisms(t, y)
        if not into_x or not into_y:
            continue
        f = rng.choice(into_x)
        g = rng.choice(into_y)
        table = {}
        for a in t.carrier:
            key = (f.map[a], g.map[a])
            if key not in reverse:
                return False
            table[a] = reverse[key]
        mediating = CoalgebraMorphism(t, witness.total, table, check=False)
        ok, _ = is_morphism(mediating)
        if not ok:
            return False
        if comp(p0, mediating) != f or comp(p1, mediating) != g:
            return False
    return True


__all__ = [
    "CoproductWitness",
    "ProductWitness",
    "coproduct",
    "cotuple",
    "cotuple_list",
    "dist",
    "empty_coalgebra",
    "inj_elem",
    "pair_total",
    "power",
    "product",
    "verify_product_universal",
]
