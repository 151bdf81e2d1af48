"""Finite coalgebras: morphisms, subcoalgebras, topology and bisimulations.

A coalgebra pairs a finite carrier with a structure map into functor terms.
Its subcoalgebras (successor-closed subsets) are the open sets of the
coalgebra topology, which drives density, connectedness, irreducibility and
Hausdorff checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import functor as fn
from .errors import (
    EnumerationLimitExceeded,
    InvariantViolation,
    NotMorphism,
    NotTotal,
    UnknownElement,
    ValidationError,
)
from .functor import FunctorExpr, pair_elem

DEFAULT_OPENS_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class Coalgebra:
    functor: FunctorExpr
    carrier: frozenset
    structure: dict = field(hash=False)

    def __init__(self, functor, carrier, structure: Mapping, allow_trivial=False):
        object.__setattr__(self, "functor", functor)
        object.__setattr__(self, "carrier", frozenset(carrier))
        object.__setattr__(self, "structure", dict(structure))
        self.validate(allow_trivial=allow_trivial)

    def validate(self, allow_trivial=False) -> None:
        if set(self.structure.keys()) != set(self.carrier):
            missing = set(self.carrier) - set(self.structure.keys())
            extra = set(self.structure.keys()) - set(self.carrier)
            raise NotTotal(
                f"structure map not total on carrier (missing {sorted(missing)},"
                f" extra {sorted(extra)})"
            )
        if not allow_trivial and not fn.is_nontrivial(self.functor):
            raise ValidationError(
                "trivial functor: topology operations would be unsound"
                " (pass allow_trivial=True to construct anyway)"
            )
        for x in self.carrier:
            fn.check_term(self.functor, self.structure[x], self.carrier)

    def successors(self, x) -> frozenset:
        return fn.leaves(self.structure[x])

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.functor == other.functor
            and self.carrier == other.carrier
            and self.structure == other.structure
        )

    def __hash__(self):
        return hash((self.functor, self.carrier, tuple(sorted(self.structure.items()))))

    def __repr__(self):
        return f"Coalgebra({self.functor!r}, carrier={sorted(self.carrier)})"


def restrict(parent: Coalgebra, subset: Iterable) -> Coalgebra:
    """The coalgebra on a successor-closed subset, with restricted structure."""
    subset = frozenset(subset)
    if not is_subcoalgebra(parent, subset):
        raise InvariantViolation(f"{sorted(subset)} is not successor-closed")
    return Coalgebra(
        parent.functor, subset, {x: parent.structure[x] for x in subset},
        allow_trivial=True,
    )


@dataclass(frozen=True, eq=False)
class CoalgebraMorphism:
    src: Coalgebra
    dst: Coalgebra
    map: dict = field(hash=False)

    def __init__(self, src, dst, map: Mapping, check=True):
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "map", dict(map))
        if check:
            ok, witness = is_morphism(self)
            if not ok:
                raise NotMorphism(f"morphism square fails at {witness!r}")

    def __call__(self, x):
        return self.map[x]

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraMorphism)
            and self.src == other.src
            and self.dst == other.dst
            and self.map == other.map
        )

    def __hash__(self):
        return hash((self.src, self.dst, tuple(sorted(self.map.items()))))


def is_morphism(f: CoalgebraMorphism):
    """Check the commuting square at every element.

    Returns (True, None) or (False, first_failing_element).
    """
    if set(f.map.keys()) != set(f.src.carrier):
        raise NotTotal("map is not total on the source carrier")
    if not set(f.map.values()) <= set(f.dst.carrier):
        raise UnknownElement("map takes values outside the target carrier")
    if f.src.functor != f.dst.functor:
        return False, None
    for x in sorted(f.src.carrier):
        expected = f.dst.structure[f.map[x]]
        actual = fn.apply_on_map(f.src.functor, f.map, f.src.structure[x])
        if expected != actual:
            return False, x
    return True, None


def identity_morphism(x: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(x, x, {a: a for a in x.carrier}, check=False)


def comp(g: CoalgebraMorphism, f: CoalgebraMorphism) -> CoalgebraMorphism:
    """Composite g after f of total morphisms."""
    if f.dst != g.src:
        raise ValidationError("morphisms are not composable")
    return CoalgebraMorphism(f.src, g.dst, {x: g.map[f.map[x]] for x in f.map}, check=False)


# ---------------------------------------------------------------------------
# Subcoalgebras and the coalgebra topology


@dataclass(frozen=True, eq=False)
class Subcoalgebra:
    parent: Coalgebra
    subset: frozenset

    def __init__(self, parent, subset):
        subset = frozenset(subset)
        if not subset <= parent.carrier:
            raise UnknownElement(f"{sorted(subset - parent.carrier)} not in carrier")
        if not is_subcoalgebra(parent, subset):
            raise InvariantViolation(f"{sorted(subset)} is not successor-closed")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "subset", subset)

    def coalgebra(self) -> Coalgebra:
        return restrict(self.parent, self.subset)

    def __eq__(self, other):
        return (
            isinstance(other, Subcoalgebra)
            and self.parent == other.parent
            and self.subset == other.subset
        )

    def __hash__(self):
        return hash((self.parent, self.subset))

    def __repr__(self):
        return f"Subcoalgebra({sorted(self.subset)})"


def is_subcoalgebra(x: Coalgebra, subset: Iterable) -> bool:
    """True iff the subset is closed under successors."""
    subset = frozenset(subset)
    return all(x.successors(u) <= subset for u in subset)


def generated(x: Coalgebra, seed: Iterable) -> Subcoalgebra:
    """Least successor-closed superset of the seed."""
    closed = set(seed)
    frontier = list(closed)
    while frontier:
        u = frontier.pop()
        for v in x.successors(u):
            if v not in closed:
                closed.add(v)
                frontier.append(v)
    return Subcoalgebra(x, closed)


def cogenerated_inside(x: Coalgebra, subset: Iterable) -> Subcoalgebra:
    """Largest subcoalgebra contained in the subset.

    Repeatedly deletes elements whose successors escape the current set.
    """
    current = set(subset)
    changed = True
    while changed:
        changed = False
        for u in list(current):
            if not x.successors(u) <= current:
                current.discard(u)
                changed = True
    return Subcoalgebra(x, current)


def interior(x: Coalgebra, subset: Iterable) -> frozenset:
    return cogenerated_inside(x, subset).subset


def closure(x: Coalgebra, subset: Iterable) -> frozenset:
    complement = x.carrier - frozenset(subset)
    return x.carrier - cogenerated_inside(x, complement).subset


def is_dense(x: Coalgebra, subset: Iterable) -> bool:
    return closure(x, subset) == x.carrier


def open_sets(x: Coalgebra, limit: int = DEFAULT_OPENS_LIMIT) -> list:
    """All subcoalgebras, sorted by (size, sorted elements): the open-set lattice."""
    # every subcoalgebra is a union of generated singletons, so saturating the
    # generated-singleton blocks under union enumerates exactly the opens
    saturated = {frozenset()}
    frontier = [frozenset()]
    blocks = [generated(x, [e]).subset for e in sorted(x.carrier)]
    while frontier:
        o = frontier.pop()
        for b in blocks:
            candidate = o | b
            if candidate not in saturated:
                if len(saturated) >= limit:
                    raise EnumerationLimitExceeded(
                        f"more than {limit} open sets", bound=len(saturated) + 1
                    )
                saturated.add(candidate)
                frontier.append(candidate)
    return sorted(saturated, key=lambda s: (len(s), sorted(s)))


def connected_components(x: Coalgebra) -> list:
    """Components of the undirected successor graph, as sorted frozensets.

    Each block is a clopen subcoalgebra and the coalgebra is the coproduct of
    its blocks.
    """
    adjacency = {u: set() for u in x.carrier}
    for u in x.carrier:
        for v in x.successors(u):
            adjacency[u].add(v)
            adjacency[v].add(u)
    seen, blocks = set(), []
    for start in sorted(x.carrier):
        if start in seen:
            continue
        block, frontier = {start}, [start]
        while frontier:
            u = frontier.pop()
            for v in adjacency[u]:
                if v not in block:
                    block.add(v)
                    frontier.append(v)
        seen |= block
        blocks.append(frozenset(block))
    return sorted(blocks, key=lambda b: sorted(b))


def is_connected(x: Coalgebra) -> bool:
    """Connectedness in the coalgebra topology; the empty coalgebra is not."""
    return len(connected_components(x)) == 1


def is_irreducible(x: Coalgebra, limit: int = DEFAULT_OPENS_LIMIT) -> bool:
    """No two nonempty opens are disjoint."""
    opens = [o for o in open_sets(x, limit=limit) if o]
    return all(a & b for a in opens for b in opens)


def is_hausdorff(x: Coalgebra, limit: int = DEFAULT_OPENS_LIMIT) -> bool:
    """Any two distinct points are separated by disjoint opens."""
    opens = open_sets(x, limit=limit)
    for a in sorted(x.carrier):
        for b in sorted(x.carrier):
            if a >= b:
                continue
            if not any(
                a in o1 and b in o2 and not (o1 & o2) for o1 in opens for o2 in opens
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# Factorization and preimages


def epi_mono_factorize(f: CoalgebraMorphism):
    """Split f into a surjection onto its image and the image inclusion.

    Returns (epi, image, mono) with mono . epi == f; the image is a
    subcoalgebra of the target, computed as in plain sets.
    """
    image_set = frozenset(f.map[x] for x in f.src.carrier)
    image = Subcoalgebra(f.dst, image_set)
    image_coalg = image.coalgebra()
    epi = CoalgebraMorphism(f.src, image_coalg, dict(f.map), check=False)
    mono = CoalgebraMorphism(image_coalg, f.dst, {u: u for u in image_set}, check=False)
    return epi, image, mono


def preimage(f: CoalgebraMorphism, u: Subcoalgebra) -> Subcoalgebra:
    """f^{-1}[U] as a subcoalgebra of the source; closure is asserted."""
    if u.parent != f.dst:
        raise ValidationError("subcoalgebra does not live in the target of f")
    subset = frozenset(x for x in f.src.carrier if f.map[x] in u.subset)
    if not is_subcoalgebra(f.src, subset):
        raise InvariantViolation(
            "preimage is not a subcoalgebra; the functor is outside the"
            " weak-pullback-preserving class"
        )
    return Subcoalgebra(f.src, subset)


# ---------------------------------------------------------------------------
# Bisimulations


@dataclass(frozen=True, eq=False)
class Bisimulation:
    left: Coalgebra
    right: Coalgebra
    pairs: frozenset  # of (x, y) tuples
    structure: Optional[dict] = field(default=None, hash=False)

    def __init__(self, left, right, pairs, structure=None):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in pairs))
        object.__setattr__(self, "structure", dict(structure) if structure else None)

    def relation_coalgebra(self) -> Coalgebra:
        """The relation as a coalgebra, when an explicit structure is stored.

        Pair (x, y) becomes the element "(x,y)".
        """
        if self.structure is None:
            raise ValidationError("no bisimulation structure stored")
        return Coalgebra(
            self.left.functor,
            {pair_elem(x, y) for x, y in self.pairs},
            {pair_elem(x, y): self.structure[(x, y)] for x, y in self.pairs},
            allow_trivial=True,
        )


def is_bisimulation(r: Bisimulation) -> bool:
    """Check the stored structure's projection squares, or lift when absent."""
    if r.left.functor != r.right.functor:
        return False
    if not all(x in r.left.carrier and y in r.right.carrier for x, y in r.pairs):
        raise UnknownElement("relation pair outside the carriers")
    if r.structure is not None:
        if set(r.structure.keys()) != set(r.pairs):
            return False
        rel = r.relation_coalgebra()
        proj0 = {pair_elem(x, y): x for x, y in r.pairs}
        proj1 = {pair_elem(x, y): y for x, y in r.pairs}
        ok0, _ = is_morphism(CoalgebraMorphism(rel, r.left, proj0, check=False))
        ok1, _ = is_morphism(CoalgebraMorphism(rel, r.right, proj1, check=False))
        return ok0 and ok1
    return all(
        fn.lift_relation(
            r.left.functor, r.pairs, r.left.structure[x], r.right.structure[y]
        )
        for x, y in r.pairs
    )


def largest_bisimulation(x: Coalgebra, y: Coalgebra) -> frozenset:
    """Greatest fixpoint of the lifting operator, from the full relation."""
    if x.functor != y.functor:
        raise ValidationError("coalgebras over different functors")
    relation = {(a, b) for a in x.carrier for b in y.carrier}
    while True:
        kept = {
            (a, b)
            for a, b in relation
            if fn.lift_relation(x.functor, relation, x.structure[a], y.structure[b])
        }
        if kept == relation:
            return frozenset(relation)
        relation = kept


def graph_is_bisimulation(x: Coalgebra, y: Coalgebra, g: Mapping) -> bool:
    """True iff the graph of the total map g is a bisimulation."""
    if set(g.keys()) != set(x.carrier):
        raise NotTotal("map is not total on the carrier")
    if not set(g.values()) <= set(y.carrier):
        raise UnknownElement("map takes values outside the target carrier")
    pairs = frozenset((a, g[a]) for a in x.carrier)
    return is_bisimulation(Bisimulation(x, y, pairs))
