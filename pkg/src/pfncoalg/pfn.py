"""Partial morphisms of coalgebras in canonical representation.

A partial morphism is stored as its domain subcoalgebra (the subset
inclusion is the canonical mono of its equivalence class) together with a
total morphism out of the restricted coalgebra. Composition is the
pullback of a mono along a map, computed as a preimage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    is_dense,
    is_morphism,
    is_subcoalgebra,
    restrict,
)
from .errors import (
    DomainNotContained,
    InvariantViolation,
    NotDivisible,
    NotPartialMono,
    NotTotal,
    ObjectMismatch,
    UnknownElement,
)
from .limits import (
    CoproductWitness,
    coproduct,
    pair_total,
    product,
)
from .functor import pair_elem


@dataclass(frozen=True, eq=False)
class PartialMorphism:
    src: Coalgebra
    dst: Coalgebra
    dom: frozenset
    map: dict = field(hash=False)

    def __init__(self, src, dst, dom: Iterable, map: Mapping, check=True):
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "dom", frozenset(dom))
        object.__setattr__(self, "map", dict(map))
        if check:
            self.validate()

    def validate(self) -> None:
        if not self.dom <= self.src.carrier:
            raise UnknownElement(
                f"{sorted(self.dom - self.src.carrier)} not in source carrier"
            )
        if not is_subcoalgebra(self.src, self.dom):
            raise InvariantViolation(f"domain {sorted(self.dom)} not successor-closed")
        if set(self.map.keys()) != set(self.dom):
            raise NotTotal("map not total on the domain")
        restricted = CoalgebraMorphism(
            restrict(self.src, self.dom), self.dst, self.map, check=False
        )
        ok, witness = is_morphism(restricted)
        if not ok:
            raise InvariantViolation(f"restricted map fails the square at {witness!r}")

    def __call__(self, x):
        return self.map[x]

    def __eq__(self, other):
        return (
            isinstance(other, PartialMorphism)
            and self.src == other.src
            and self.dst == other.dst
            and self.dom == other.dom
            and self.map == other.map
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.dom, tuple(sorted(self.map.items()))))

    def __repr__(self):
        return f"PartialMorphism(dom={sorted(self.dom)}, map={dict(sorted(self.map.items()))})"


def equal(f: PartialMorphism, g: PartialMorphism) -> bool:
    """Equality of canonical representatives; requires matching objects."""
    if f.src != g.src or f.dst != g.dst:
        raise ObjectMismatch("partial morphisms over different objects")
    return f.dom == g.dom and f.map == g.map


def embed_total(f: CoalgebraMorphism) -> PartialMorphism:
    """Faithful embedding of total morphisms: full domain."""
    return PartialMorphism(f.src, f.dst, f.src.carrier, f.map, check=False)


def identity_pm(x: Coalgebra) -> PartialMorphism:
    return PartialMorphism(x, x, x.carrier, {a: a for a in x.carrier}, check=False)


def partial_identity(u: Subcoalgebra) -> PartialMorphism:
    """The partial endomap that is the identity on the given subcoalgebra."""
    return PartialMorphism(
        u.parent, u.parent, u.subset, {a: a for a in u.subset}, check=False
    )


def compose(g: PartialMorphism, f: PartialMorphism) -> PartialMorphism:
    """Pullback composition: restrict f to the preimage of g's domain."""
    if f.dst != g.src:
        raise ObjectMismatch("partial morphisms are not composable")
    dom = frozenset(x for x in f.dom if f.map[x] in g.dom)
    return PartialMorphism(f.src, g.dst, dom, {x: g.map[f.map[x]] for x in dom})


def zero(x: Coalgebra, y: Coalgebra) -> PartialMorphism:
    return PartialMorphism(x, y, frozenset(), {}, check=False)


def is_zero(f: PartialMorphism) -> bool:
    return not f.dom


# ---------------------------------------------------------------------------
# Domains, ranges and the lattice


def dom(f: PartialMorphism) -> Subcoalgebra:
    return Subcoalgebra(f.src, f.dom)


def ran(f: PartialMorphism) -> Subcoalgebra:
    return Subcoalgebra(f.dst, frozenset(f.map[x] for x in f.dom))


def meet(a: Subcoalgebra, b: Subcoalgebra) -> Subcoalgebra:
    if a.parent != b.parent:
        raise ObjectMismatch("domain elements over different coalgebras")
    return Subcoalgebra(a.parent, a.subset & b.subset)


def join(a: Subcoalgebra, b: Subcoalgebra) -> Subcoalgebra:
    if a.parent != b.parent:
        raise ObjectMismatch("domain elements over different coalgebras")
    return Subcoalgebra(a.parent, a.subset | b.subset)


def union_of_domains(family: Iterable[Subcoalgebra], parent: Optional[Coalgebra] = None) -> Subcoalgebra:
    family = list(family)
    if not family:
        if parent is None:
            raise ObjectMismatch("empty family needs an explicit parent coalgebra")
        return Subcoalgebra(parent, frozenset())
    out = family[0]
    for member in family[1:]:
        out = join(out, member)
    return out


def is_total(f: PartialMorphism) -> bool:
    return f.dom == f.src.carrier


def is_weakly_total(f: PartialMorphism) -> bool:
    """Density of the domain in the coalgebra topology on the source."""
    return is_dense(f.src, f.dom)


# ---------------------------------------------------------------------------
# Near product


def box(f: PartialMorphism, g: PartialMorphism) -> PartialMorphism:
    """Near product: componentwise map on the product of the domains."""
    src = product(f.src, g.src)
    dst = product(f.dst, g.dst)
    p0, p1 = src.projections
    dom_set, table = set(), {}
    for e in src.total.carrier:
        a, b = p0.map[e], p1.map[e]
        if a in f.dom and b in g.dom:
            dom_set.add(e)
            table[e] = dst.element_of(f.map[a], g.map[b])
    return PartialMorphism(src.total, dst.total, dom_set, table)


def diagonal(x: Coalgebra) -> PartialMorphism:
    """Total diagonal X -> X box X onto the diagonal pairs."""
    witness = product(x, x)
    return embed_total(
        CoalgebraMorphism(
            x, witness.total, {a: pair_elem(a, a) for a in x.carrier}, check=False
        )
    )


def pair(f: PartialMorphism, g: PartialMorphism) -> PartialMorphism:
    """<f, g> = (f box g) after the diagonal on the common source."""
    if f.src != g.src:
        raise ObjectMismatch("pairing requires a common source")
    return compose(box(f, g), diagonal(f.src))


def projection_pm(x: Coalgebra, y: Coalgebra, index: int) -> PartialMorphism:
    return embed_total(product(x, y).projections[index])


def dom_formula(f: PartialMorphism) -> Subcoalgebra:
    """The domain computed categorically as p0 . <1, f>; cross-checks dom."""
    composite = compose(projection_pm(f.src, f.dst, 0), pair(identity_pm(f.src), f))
    return dom(composite)


def assoc_component(x: Coalgebra, y: Coalgebra, z: Coalgebra) -> PartialMorphism:
    """(X box Y) box Z -> X box (Y box Z), built from projections and pairing."""
    xy = product(x, y)
    xy_z = product(xy.total, z)
    yz = product(y, z)
    p0_xy, p1_xy = xy.projections
    p0_outer, p1_outer = xy_z.projections
    first = CoalgebraMorphism(
        xy_z.total, x, {e: p0_xy.map[p0_outer.map[e]] for e in xy_z.total.carrier},
        check=False,
    )
    second = CoalgebraMorphism(
        xy_z.total, y, {e: p1_xy.map[p0_outer.map[e]] for e in xy_z.total.carrier},
        check=False,
    )
    inner = pair_total(second, p1_outer, witness=yz)
    x_yz = product(x, yz.total)
    return embed_total(pair_total(first, inner, witness=x_yz))


def twist_component(x: Coalgebra, y: Coalgebra) -> PartialMorphism:
    """X box Y -> Y box X as <p1, p0>."""
    xy = product(x, y)
    p0, p1 = xy.projections
    return embed_total(pair_total(p1, p0, witness=product(y, x)))


def box_identity(x: Coalgebra, f: PartialMorphism) -> PartialMorphism:
    """1_X box f, a common building block for coherence checks."""
    return box(identity_pm(x), f)


# ---------------------------------------------------------------------------
# Sections and division


def is_partial_mono(f: PartialMorphism) -> bool:
    """Injectivity of the map on its domain."""
    values = [f.map[x] for x in f.dom]
    return len(set(values)) == len(values)


def section(f: PartialMorphism) -> PartialMorphism:
    """A section sigma with f.sigma the partial identity on ran f."""
    if not is_partial_mono(f):
        raise NotPartialMono("section requires an injective partial morphism")
    inverse = {f.map[x]: x for x in f.dom}
    return PartialMorphism(f.dst, f.src, frozenset(inverse.keys()), inverse)


def divide(psi: PartialMorphism, phi: PartialMorphism) -> PartialMorphism:
    """The unique psi/phi with domain ran phi and (psi/phi) . phi = psi on dom phi."""
    if psi.src != phi.src:
        raise ObjectMismatch("division requires a common source")
    if not phi.dom <= psi.dom:
        raise DomainNotContained("dom(divisor) must be contained in dom(dividend)")
    table = {}

    witness_for = {}
    for x in sorted(phi.dom):
        image = phi.map[x]
        if image in table and table[image] != psi.map[x]:
            raise NotDivisible(
                f"divisor identifies {witness_for[image]!r} and {x!r} but dividend"
                " separates them",
                witness=(witness_for[image], x),
            )
        table[image] = psi.map[x]
        witness_for[image] = x
    return PartialMorphism(phi.dst, psi.dst, frozenset(table.keys()), table)


# ---------------------------------------------------------------------------
# Coproducts of partial morphisms


def coproduct_pm(
    f: PartialMorphism,
    g: PartialMorphism,
    src_witness: Optional[CoproductWitness] = None,
    dst_witness: Optional[CoproductWitness] = None,
) -> PartialMorphism:
    """f ⨿ g between the tagged disjoint unions."""
    if src_witness is None:
        src_witness = coproduct([f.src, g.src])
    if dst_witness is None:
        dst_witness = coproduct([f.dst, g.dst])
    i0s, i1s = src_witness.injections
    i0d, i1d = dst_witness.injections
    dom_set, table = set(), {}
    for x in f.dom:
        dom_set.add(i0s.map[x])
        table[i0s.map[x]] = i0d.map[f.map[x]]
    for y in g.dom:
        dom_set.add(i1s.map[y])
        table[i1s.map[y]] = i1d.map[g.map[y]]
    return PartialMorphism(src_witness.total, dst_witness.total, dom_set, table)
