"""Iteration of endomorphisms and Turing developments.

iterate() runs an endomorphism until it lands in a pointwise-fixed
subcoalgebra; oracle_iterate() rebuilds the same partial morphism from a
bounded sequence coalgebra and division, mirroring the free-semigroup
construction. Turing data package a while-loop as a pair of total
morphisms, and the combinators verify closure of developments under
sequencing, coproduct and the near product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

from . import functor as fn
from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    comp,
    is_morphism,
)
from .errors import (
    NotFixing,
    NotMorphism,
    NotTotal,
    ObjectMismatch,
    UnknownElement,
    Unsupported,
)
from .limits import (
    CoproductWitness,
    coproduct,
    cotuple_list,
    product,
)
from .pfn import PartialMorphism, box, compose, coproduct_pm, divide, embed_total


# ---------------------------------------------------------------------------
# Iteration


def _check_iteration_inputs(f: CoalgebraMorphism, u: Subcoalgebra) -> None:
    if f.src != f.dst:
        raise ObjectMismatch("iteration requires an endomorphism")
    if set(f.map.keys()) != set(f.src.carrier):
        raise NotTotal("endomorphism is not total")
    ok, witness = is_morphism(f)
    if not ok:
        raise NotMorphism(f"square fails at {witness!r}")
    if u.parent != f.src:
        raise ObjectMismatch("subcoalgebra does not live in the endomorphism's object")
    for a in sorted(u.subset):
        if f.map[a] != a:
            raise NotFixing(f"endomorphism moves {a!r} inside the fixed subcoalgebra")


def iterate(f: CoalgebraMorphism, u: Subcoalgebra) -> PartialMorphism:
    """Send x to f^n(x) for the least n putting the orbit inside u.

    Undefined where the orbit never reaches u; a trajectory in a finite
    carrier decides this within |carrier| steps.
    """
    _check_iteration_inputs(f, u)
    x = f.src
    dom, table = set(), {}
    bound = len(x.carrier)
    for start in x.carrier:
        current = start
        for _ in range(bound + 1):
            if current in u.subset:
                dom.add(start)
                table[start] = current
                break
            current = f.map[current]
    return PartialMorphism(x, x, dom, table)


def _seq_elem(states: Tuple[str, ...]) -> str:
    return "[" + ";".join(states) + "]"


def _zip_terms(functor, terms, namer):
    """Combine parallel structure terms into one term over tuple elements.

    Only meaningful when the functor preserves products, so the terms share
    a common shape; raises Unsupported otherwise.
    """
    if isinstance(functor, fn.Const):
        first = terms[0]
        if any(t != first for t in terms):
            raise Unsupported("constant outputs differ along the sequence")
        return first
    if isinstance(functor, fn.Ident):
        return fn.Leaf(namer(tuple(t.element for t in terms)))
    if isinstance(functor, fn.Prod):
        return fn.PairT(
            _zip_terms(functor.left, [t.fst for t in terms], namer),
            _zip_terms(functor.right, [t.snd for t in terms], namer),
        )
    if isinstance(functor, fn.Sum):
        if all(isinstance(t, fn.InlT) for t in terms):
            return fn.InlT(_zip_terms(functor.left, [t.value for t in terms], namer))
        if all(isinstance(t, fn.InrT) for t in terms):
            return fn.InrT(_zip_terms(functor.right, [t.value for t in terms], namer))
        raise Unsupported("sum injections differ along the sequence")
    if isinstance(functor, fn.Exp):
        indices = sorted(functor.indices)
        tables = [dict(t.table) for t in terms]
        return fn.func_term(
            {k: _zip_terms(functor.body, [tbl[k] for tbl in tables], namer) for k in indices}
        )
    raise Unsupported("sequence coalgebras are not formed for powerset functors")


def oracle_iterate(f: CoalgebraMorphism, u: Subcoalgebra) -> PartialMorphism:
    """Iteration recovered from the bounded sequence coalgebra by division.

    Builds the coalgebra of orbit fragments (x, fx, ..., f^n x) whose last
    entry lies in u, restricts first and last to it, and divides last by
    first. Must agree exactly with iterate().
    """
    _check_iteration_inputs(f, u)
    x = f.src
    sequences = []
    for start in sorted(x.carrier):
        orbit = [start]
        for _ in range(len(x.carrier)):
            orbit.append(f.map[orbit[-1]])
            if orbit[-1] in u.subset:
                sequences.append(tuple(orbit))
    carrier = {_seq_elem(s) for s in sequences}
    structure = {}
    for s in sequences:
        terms = [x.structure[state] for state in s]
        structure[_seq_elem(s)] = _zip_terms(
            x.functor, terms, lambda states: _seq_elem(states)
        )
    fragments = Coalgebra(x.functor, carrier, structure, allow_trivial=True)
    by_name = {_seq_elem(s): s for s in sequences}
    first = PartialMorphism(
        fragments, x, carrier, {e: by_name[e][0] for e in carrier}
    )
    last = PartialMorphism(
        fragments, x, carrier, {e: by_name[e][-1] for e in carrier}
    )
    quotient = divide(last, first)
    return PartialMorphism(x, x, quotient.dom, quotient.map, check=False)


def iteration_product_laws(
    f: CoalgebraMorphism,
    u: Subcoalgebra,
    g: CoalgebraMorphism,
    v: Subcoalgebra,
) -> bool:
    """Compatibility of iteration with the near product and the coproduct."""
    # coproduct law
    witness = coproduct([f.src, g.src])
    i0, i1 = witness.injections
    combined = cotuple_list([comp(i0, f), comp(i1, g)], witness)
    fixed = Subcoalgebra(
        witness.total,
        {i0.map[a] for a in u.subset} | {i1.map[b] for b in v.subset},
    )
    lhs = iterate(combined, fixed)
    rhs = coproduct_pm(
        iterate(f, u), iterate(g, v), src_witness=witness, dst_witness=witness
    )
    if lhs != rhs:
        return False
    # near-product law (deterministic functors only)
    if fn.is_deterministic(f.src.functor):
        pw = product(f.src, g.src)
        p0, p1 = pw.projections
        table = {
            e: pw.element_of(f.map[p0.map[e]], g.map[p1.map[e]])
            for e in pw.total.carrier
        }
        product_map = CoalgebraMorphism(pw.total, pw.total, table, check=False)
        fixed_pairs = Subcoalgebra(
            pw.total,
            {
                e
                for e in pw.total.carrier
                if p0.map[e] in u.subset and p1.map[e] in v.subset
            },
        )
        lhs = iterate(product_map, fixed_pairs)
        rhs = box(iterate(f, u), iterate(g, v))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Turing data and developments


@dataclass(frozen=True, eq=False)
class TuringDatum:
    x: Coalgebra
    w: Coalgebra
    y: Coalgebra
    u: CoalgebraMorphism
    v: CoalgebraMorphism
    witness: CoproductWitness = field(hash=False)

    def __init__(self, u: CoalgebraMorphism, v: CoalgebraMorphism, y: Coalgebra):
        witness = coproduct([u.dst, y])
        if v.src != u.dst or v.dst != witness.total:
            raise ObjectMismatch(
                "loop body must map the working object into its coproduct with"
                " the output object"
            )
        for m, name in ((u, "input map"), (v, "loop body")):
            ok, at = is_morphism(m)
            if not ok:
                raise NotMorphism(f"{name} fails the square at {at!r}")
        object.__setattr__(self, "x", u.src)
        object.__setattr__(self, "w", u.dst)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "witness", witness)

    def __eq__(self, other):
        return (
            isinstance(other, TuringDatum)
            and self.u == other.u
            and self.v == other.v
            and self.y == other.y
        )

    def decode(self, element):
        """Map an element of W ⨿ Y back to ('w', w) or ('y', y)."""
        i0, i1 = self.witness.injections
        for w, e in i0.map.items():
            if e == element:
                return "w", w
        for y, e in i1.map.items():
            if e == element:
                return "y", y
        raise UnknownElement(f"{element!r} not in the loop coproduct")


@dataclass(frozen=True)
class Trace:
    input: str
    visited: tuple  # W elements in visit order
    outcome: tuple  # ("halted", y) or ("diverged", index of repeated state)


def turing_development(d: TuringDatum) -> PartialMorphism:
    """Run the loop body from the input map until it emits into the output.

    The composite [0, 1_Y] . It([v, i1], 0 ⨿ Y) . i0 . u, undefined on
    inputs whose loop never leaves the working object.
    """
    i0, i1 = d.witness.injections
    step = cotuple_list([d.v, i1], d.witness)
    halted = Subcoalgebra(d.witness.total, set(i1.map.values()))
    looped = iterate(step, halted)
    start = embed_total(comp(i0, d.u))
    finish = PartialMorphism(
        d.witness.total, d.y, set(i1.map.values()),
        {e: y for y, e in i1.map.items()},
    )
    return compose(finish, compose(looped, start))


def run_trace(d: TuringDatum, x: str) -> Trace:
    """Step the machine explicitly, recording visited working states."""
    if x not in d.x.carrier:
        raise UnknownElement(f"{x!r} not in the input carrier")
    current = d.u.map[x]
    visited = [current]
    while True:
        side, value = d.decode(d.v.map[current])
        if side == "y":
            return Trace(x, tuple(visited), ("halted", value))
        if value in visited:
            return Trace(x, tuple(visited), ("diverged", visited.index(value)))
        visited.append(value)
        current = value


def datum_seq(d1: TuringDatum, d2: TuringDatum) -> TuringDatum:
    """Run the first machine, feed its output into the second."""
    if d1.y != d2.x:
        raise ObjectMismatch("output object of the first machine must feed the second")
    work = coproduct([d1.w, d2.w])
    j0, j1 = work.injections
    final = coproduct([work.total, d2.y])
    big0, big1 = final.injections
    handoff = cotuple_list(
        [comp(big0, j0), comp(big0, comp(j1, d2.u))], d1.witness
    )
    branch1 = comp(handoff, d1.v)
    wrap_up = cotuple_list([comp(big0, j1), big1], d2.witness)
    branch2 = comp(wrap_up, d2.v)
    v = cotuple_list([branch1, branch2], work)
    u = comp(j0, d1.u)
    return TuringDatum(u, v, d2.y)


def datum_coprod(d1: TuringDatum, d2: TuringDatum) -> TuringDatum:
    """Run either machine on the tagged disjoint union of inputs."""
    if d1.x.functor != d2.x.functor:
        raise ObjectMismatch("turing data over different functors")
    inputs = coproduct([d1.x, d2.x])
    work = coproduct([d1.w, d2.w])
    outputs = coproduct([d1.y, d2.y])
    j0, j1 = work.injections
    k0, k1 = outputs.injections
    final = coproduct([work.total, outputs.total])
    big0, big1 = final.injections
    branch1 = comp(cotuple_list([comp(big0, j0), comp(big1, k0)], d1.witness), d1.v)
    branch2 = comp(cotuple_list([comp(big0, j1), comp(big1, k1)], d2.witness), d2.v)
    v = cotuple_list([branch1, branch2], work)
    u = cotuple_list(
        [comp(j0, d1.u), comp(j1, d2.u)], inputs
    )
    return TuringDatum(u, v, outputs.total)


def datum_box(d1: TuringDatum, d2: TuringDatum) -> TuringDatum:
    """Run the first machine to completion, then the second, pairing outputs.

    State space (W1 x X2) ⨿ (Y1 x W2); requires a powerset-free functor.
    """
    if d1.x.functor != d2.x.functor:
        raise ObjectMismatch("turing data over different functors")
    inputs = product(d1.x, d2.x)
    left_phase = product(d1.w, d2.x)
    right_phase = product(d1.y, d2.w)
    outputs = product(d1.y, d2.y)
    phases = coproduct([left_phase.total, right_phase.total])
    s0, s1 = phases.injections
    final = coproduct([phases.total, outputs.total])
    big0, big1 = final.injections
    ip0, ip1 = inputs.projections
    u_table = {
        e: s0.map[left_phase.element_of(d1.u.map[ip0.map[e]], ip1.map[e])]
        for e in inputs.total.carrier
    }
    u = CoalgebraMorphism(inputs.total, phases.total, u_table)
    lp0, lp1 = left_phase.projections
    rp0, rp1 = right_phase.projections
    v_table = {}
    for e in left_phase.total.carrier:
        w1, x2 = lp0.map[e], lp1.map[e]
        side, value = d1.decode(d1.v.map[w1])
        if side == "w":
            target = big0.map[s0.map[left_phase.element_of(value, x2)]]
        else:
            target = big0.map[
                s1.map[right_phase.element_of(value, d2.u.map[x2])]
            ]
        v_table[s0.map[e]] = target
    for e in right_phase.total.carrier:
        y1, w2 = rp0.map[e], rp1.map[e]
        side, value = d2.decode(d2.v.map[w2])
        if side == "w":
            target = big0.map[s1.map[right_phase.element_of(y1, value)]]
        else:
            target = big1.map[outputs.element_of(y1, value)]
        v_table[s1.map[e]] = target
    v = CoalgebraMorphism(phases.total, final.total, v_table)
    return TuringDatum(u, v, outputs.total)
