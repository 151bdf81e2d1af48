"""Randomized and exhaustive law suites over a fixed functor battery.

Each suite returns a sorted list of named pass/fail cases and is
deterministic for a fixed seed. The suites back both the `laws` CLI
command and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Dict, List

from . import functor as fn
from . import gen
from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    closure,
    cogenerated_inside,
    connected_components,
    generated,
    interior,
    is_dense,
    is_hausdorff,
    is_irreducible,
    is_subcoalgebra,
    open_sets,
    preimage,
    restrict,
)
from .errors import Unsupported
from .functor import FunctorExpr, canonical_pullback, check_weak_pullback_preservation
from .limits import coproduct, cotuple_list, product, verify_product_universal
from .pfn import (
    box,
    compose,
    coproduct_pm,
    dom,
    dom_formula,
    embed_total,
    identity_pm,
    is_partial_mono,
    is_total,
    is_weakly_total,
    is_zero,
    join,
    meet,
    partial_identity,
    ran,
    section,
    twist_component,
    assoc_component,
    union_of_domains,
    zero,
)
from .recursion import (
    TuringDatum,
    datum_box,
    datum_coprod,
    datum_seq,
    iterate,
    iteration_product_laws,
    oracle_iterate,
    turing_development,
)

BATTERY: Dict[str, FunctorExpr] = {
    "const": fn.Const({"c0", "c1"}),
    "ident": fn.IDENT,
    "stream": fn.Prod(fn.Const({"0", "1"}), fn.IDENT),
    "exp2": fn.Exp({"i0", "i1"}, fn.IDENT),
    "pow-ident": fn.Pow(fn.IDENT),
}

DETERMINISTIC_BATTERY = {k: v for k, v in BATTERY.items() if fn.is_deterministic(v)}


@dataclass(frozen=True)
class LawCase:
    name: str
    passed: bool
    detail: str = ""


def _case(name: str, passed: bool, detail: str = "") -> LawCase:
    return LawCase(name, bool(passed), detail if not passed else "")


def two_point_counterexample() -> Coalgebra:
    """The two-point self-map with one fixed point and one feeder state."""
    return Coalgebra(
        fn.IDENT, {"x", "y"}, {"x": fn.Leaf("y"), "y": fn.Leaf("y")}
    )


# ---------------------------------------------------------------------------
# Pools of random instances


def _coalgebra_pool(functor, rng, count=5, max_size=4) -> List[Coalgebra]:
    pool = [gen.random_coalgebra(functor, rng, max_size=max_size) for _ in range(count)]
    pool.append(gen.random_coalgebra(functor, rng, max_size=1))
    return pool


def _pm_pool(pool, rng, per_pair=4):
    """Random partial morphisms between pool members, keyed by (i, j)."""
    table = {}
    for i, a in enumerate(pool):
        for j, b in enumerate(pool):
            found = []
            for _ in range(per_pair):
                found.append(gen.random_partial_morphism(a, b, rng))
            table[(i, j)] = found
    return table


# ---------------------------------------------------------------------------
# Suites


def suite_category(seed: int, trials: int) -> List[LawCase]:
    cases = []
    for fname, functor in sorted(BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}")
        pool = _coalgebra_pool(functor, rng, count=4)
        pms = _pm_pool(pool, rng)
        n = len(pool)
        failures = []
        for t in range(trials):
            i, j, k, l = (rng.randrange(n) for _ in range(4))
            f = rng.choice(pms[(i, j)])
            g = rng.choice(pms[(j, k)])
            h = rng.choice(pms[(k, l)])
            if compose(h, compose(g, f)) != compose(compose(h, g), f):
                failures.append(f"associativity at trial {t}")
                break
            if compose(f, identity_pm(pool[i])) != f or compose(identity_pm(pool[j]), f) != f:
                failures.append(f"identity at trial {t}")
                break
            z = zero(pool[j], pool[k])
            if not is_zero(compose(h, compose(z, f))):
                failures.append(f"zero absorption at trial {t}")
                break
            if compose(z, f) != zero(pool[i], pool[k]):
                failures.append(f"zero system at trial {t}")
                break
        cases.append(_case(f"category/{fname}", not failures, "; ".join(failures)))
    return cases


def suite_topology(seed: int, trials: int) -> List[LawCase]:
    cases = []
    x = two_point_counterexample()
    u = Subcoalgebra(x, {"y"})
    pid = partial_identity(u)
    fixed_ok = (
        is_subcoalgebra(x, {"y"})
        and not is_subcoalgebra(x, {"x"})
        and is_dense(x, {"y"})
        and is_weakly_total(pid)
        and not is_total(pid)
        and [sorted(o) for o in open_sets(x)] == [[], ["y"], ["x", "y"]]
        and is_irreducible(x)
        and not is_hausdorff(x)
    )
    cases.append(_case("topology/two-point-counterexample", fixed_ok))
    for fname, functor in sorted(BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}:topology")
        ok, detail = True, ""
        for t in range(max(1, trials // 5)):
            c = gen.random_coalgebra(functor, rng, max_size=4)
            opens = open_sets(c)
            opens_set = set(opens)
            if frozenset() not in opens_set or c.carrier not in opens_set:
                ok, detail = False, f"top/bottom missing at trial {t}"
                break
            pairs_ok = all(
                (a | b) in opens_set and (a & b) in opens_set
                for a in opens
                for b in opens
            )
            if not pairs_ok:
                ok, detail = False, f"opens not a lattice at trial {t}"
                break
            s = frozenset(e for e in c.carrier if rng.random() < 0.5)
            cl, inte = closure(c, s), interior(c, s)
            if not (s <= cl and inte <= s):
                ok, detail = False, f"extensivity fails at trial {t}"
                break
            if closure(c, cl) != cl or interior(c, inte) != inte:
                ok, detail = False, f"idempotence fails at trial {t}"
                break
            if is_dense(c, s) != (interior(c, c.carrier - s) == frozenset()):
                ok, detail = False, f"density duality fails at trial {t}"
                break
            gen_s = generated(c, s).subset
            if not s <= gen_s or any(s <= o and not gen_s <= o for o in opens):
                ok, detail = False, f"generated not least at trial {t}"
                break
            cog = cogenerated_inside(c, s).subset
            if not cog <= s or any(o <= s and not o <= cog for o in opens):
                ok, detail = False, f"cogenerated not greatest at trial {t}"
                break
            blocks = connected_components(c)
            for b in blocks:
                if not (is_subcoalgebra(c, b) and is_subcoalgebra(c, c.carrier - b)):
                    ok, detail = False, f"component not clopen at trial {t}"
                    break
            if not ok:
                break
        cases.append(_case(f"topology/laws/{fname}", ok, detail))
    return cases


def suite_lattice(seed: int, trials: int) -> List[LawCase]:
    cases = []
    for fname, functor in sorted(BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}:lattice")
        ok, detail = True, ""
        for t in range(trials):
            c = gen.random_coalgebra(functor, rng, max_size=4)
            a = gen.random_subcoalgebra(c, rng)
            b = gen.random_subcoalgebra(c, rng)
            d = gen.random_subcoalgebra(c, rng)
            if meet(a, b).subset != a.subset & b.subset:
                ok, detail = False, f"meet != intersection at trial {t}"
                break
            if join(a, b).subset != a.subset | b.subset:
                ok, detail = False, f"join != union at trial {t}"
                break
            # meet via composition of partial identities
            if compose(partial_identity(a), partial_identity(b)) != partial_identity(meet(a, b)):
                ok, detail = False, f"meet-by-composition at trial {t}"
                break
            # join via the range of the cotuple of inclusions
            wit = coproduct([restrict(c, a.subset), restrict(c, b.subset)])
            inc_a = CoalgebraMorphism(
                restrict(c, a.subset), c, {e: e for e in a.subset}, check=False
            )
            inc_b = CoalgebraMorphism(
                restrict(c, b.subset), c, {e: e for e in b.subset}, check=False
            )
            cot = cotuple_list([inc_a, inc_b], wit)
            if ran(embed_total(cot)).subset != join(a, b).subset:
                ok, detail = False, f"join-by-range at trial {t}"
                break
            lhs = meet(a, join(b, d))
            rhs = join(meet(a, b), meet(a, d))
            if lhs != rhs:
                ok, detail = False, f"distributivity at trial {t}"
                break
            if union_of_domains([a, b, d]).subset != a.subset | b.subset | d.subset:
                ok, detail = False, f"union of domains at trial {t}"
                break
        cases.append(_case(f"lattice/{fname}", ok, detail))
    return cases


def suite_choice(seed: int, trials: int) -> List[LawCase]:
    cases = []
    for fname, functor in sorted(BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}:choice")
        pool = _coalgebra_pool(functor, rng, count=4)
        ok, detail, checked = True, "", 0
        attempts = 0
        while checked < trials and attempts < trials * 20:
            attempts += 1
            a, b = rng.choice(pool), rng.choice(pool)
            f = gen.random_partial_morphism(a, b, rng)
            if not is_partial_mono(f):
                continue
            checked += 1
            sigma = section(f)
            if compose(f, sigma) != partial_identity(ran(f)):
                ok, detail = False, "phi.sigma is not the partial identity on ran phi"
                break
            if compose(compose(f, sigma), f) != f:
                ok, detail = False, "phi.sigma.phi != phi"
                break
            if dom(sigma) != ran(f):
                ok, detail = False, "dom sigma != ran phi"
                break
        cases.append(_case(f"choice/{fname}", ok and checked > 0, detail or "no partial monos drawn"))
    return cases


def _dom_by_preimages(f: CoalgebraMorphism, u: Subcoalgebra) -> frozenset:
    """Independent oracle: union of iterated preimages of u under f."""
    x = f.src
    current = u
    total = set(u.subset)
    for _ in range(len(x.carrier)):
        current = preimage(f, current)
        total |= current.subset
    return frozenset(total)


def _random_iteration_instance(functor, rng):
    for _ in range(40):
        c = gen.random_coalgebra(functor, rng, max_size=4)
        endos = gen.all_total_morphisms(c, c)
        if not endos:
            continue
        f = rng.choice(endos)
        fixed = {a for a in c.carrier if f.map[a] == a}
        u = cogenerated_inside(c, {a for a in fixed if rng.random() < 0.8})
        return c, f, u
    return None


def suite_iteration(seed: int, trials: int) -> List[LawCase]:
    cases = []
    for fname, functor in sorted(BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}:iteration")
        ok, detail = True, ""
        for t in range(max(1, trials // 5)):
            instance = _random_iteration_instance(functor, rng)
            if instance is None:
                continue
            c, f, u = instance
            it = iterate(f, u)
            if it.dom != _dom_by_preimages(f, u):
                ok, detail = False, f"domain != union of preimages at trial {t}"
                break
            if not ran(it).subset <= u.subset:
                ok, detail = False, f"image escapes the fixed subcoalgebra at trial {t}"
                break
            # nesting of the preimage chain
            chain = [u]
            nested = True
            for _ in range(len(c.carrier)):
                nxt = preimage(f, chain[-1])
                nested = nested and chain[-1].subset <= nxt.subset
                chain.append(nxt)
            if not nested:
                ok, detail = False, f"preimage chain not nested at trial {t}"
                break
            # least-n: on f^-n[U] \ f^-(n-1)[U] the value is f^n
            value_ok = True
            for n in range(1, len(chain)):
                fresh = chain[n].subset - chain[n - 1].subset
                for a in fresh:
                    v = a
                    for _ in range(n):
                        v = f.map[v]
                    if it.map.get(a) != v:
                        value_ok = False
            if not value_ok:
                ok, detail = False, f"least-step value wrong at trial {t}"
                break
            try:
                if oracle_iterate(f, u) != it:
                    ok, detail = False, f"sequence oracle disagrees at trial {t}"
                    break
            except Unsupported:
                pass  # functor does not preserve products for this instance
            instance2 = _random_iteration_instance(functor, rng)
            if instance2 is not None:
                _, g, v = instance2
                if not iteration_product_laws(f, u, g, v):
                    ok, detail = False, f"product/coproduct law fails at trial {t}"
                    break
        cases.append(_case(f"iteration/{fname}", ok, detail))
    return cases


def random_plain_datum(rng, in_size=None, out_size=None) -> TuringDatum:
    """A random machine over plain sets (identity functor, identity structure)."""
    nx = in_size or rng.randint(1, 3)
    nw = rng.randint(1, 3)
    ny = out_size or rng.randint(1, 3)
    x = gen.plain_set_coalgebra([f"x{i}" for i in range(nx)])
    w = gen.plain_set_coalgebra([f"w{i}" for i in range(nw)])
    y = gen.plain_set_coalgebra([f"y{i}" for i in range(ny)])
    wit = coproduct([w, y])
    i0, i1 = wit.injections
    u = CoalgebraMorphism(x, w, {e: rng.choice(sorted(w.carrier)) for e in x.carrier})
    v_table = {}
    for e in w.carrier:
        if rng.random() < 0.5:
            v_table[e] = i0.map[rng.choice(sorted(w.carrier))]
        else:
            v_table[e] = i1.map[rng.choice(sorted(y.carrier))]
    v = CoalgebraMorphism(w, wit.total, v_table)
    return TuringDatum(u, v, y)


def suite_turing(seed: int, trials: int) -> List[LawCase]:
    rng = random.Random(f"{seed}:turing")
    ok_seq = ok_cop = ok_box = True
    detail_seq = detail_cop = detail_box = ""
    for t in range(trials):
        d1 = random_plain_datum(rng)
        d2 = random_plain_datum(rng, in_size=len(d1.y.carrier))
        # align: output object of d1 must be the input object of d2
        d2 = TuringDatum(
            CoalgebraMorphism(
                d1.y, d2.w,
                dict(zip(sorted(d1.y.carrier), [d2.u.map[e] for e in sorted(d2.x.carrier)])),
            ),
            d2.v,
            d2.y,
        )
        if turing_development(datum_seq(d1, d2)) != compose(
            turing_development(d2), turing_development(d1)
        ):
            ok_seq, detail_seq = False, f"sequencing fails at trial {t}"
            break
        d3 = random_plain_datum(rng)
        if turing_development(datum_coprod(d1, d3)) != coproduct_pm(
            turing_development(d1), turing_development(d3)
        ):
            ok_cop, detail_cop = False, f"coproduct fails at trial {t}"
            break
        if turing_development(datum_box(d1, d3)) != box(
            turing_development(d1), turing_development(d3)
        ):
            ok_box, detail_box = False, f"box fails at trial {t}"
            break
    return [
        _case("turing/sequencing", ok_seq, detail_seq),
        _case("turing/coproduct", ok_cop, detail_cop),
        _case("turing/box", ok_box, detail_box),
    ]


def _stream_cycle(name: str, length: int) -> Coalgebra:
    """All-zero-output stream coalgebra cycling through `length` states."""
    functor = BATTERY["stream"]
    states = [f"{name}{i}" for i in range(length)]
    structure = {
        states[i]: fn.PairT(fn.ConstVal("0"), fn.Leaf(states[(i + 1) % length]))
        for i in range(length)
    }
    return Coalgebra(functor, states, structure)


def suite_coherence(seed: int, trials: int) -> List[LawCase]:
    a = _stream_cycle("a", 2)
    b = _stream_cycle("b", 2)
    c = _stream_cycle("c", 1)
    d = _stream_cycle("d", 2)
    cases = []
    tw = twist_component(a, b)
    tw_back = twist_component(b, a)
    cases.append(
        _case("coherence/twist-involutive", compose(tw_back, tw) == identity_pm(tw.src))
    )
    # hexagon: ass . tw . ass = (1 box tw) . ass . (tw box 1)
    lhs = compose(
        assoc_component(b, c, a),
        compose(twist_component(a, product(b, c).total), assoc_component(a, b, c)),
    )
    rhs = compose(
        box(identity_pm(b), twist_component(a, c)),
        compose(assoc_component(b, a, c), box(twist_component(a, b), identity_pm(c))),
    )
    cases.append(_case("coherence/hexagon", lhs == rhs))
    # pentagon on (a, b, c, d)
    lhs = compose(
        assoc_component(a, b, product(c, d).total),
        assoc_component(product(a, b).total, c, d),
    )
    rhs = compose(
        box(identity_pm(a), assoc_component(b, c, d)),
        compose(
            assoc_component(a, product(b, c).total, d),
            box(assoc_component(a, b, c), identity_pm(d)),
        ),
    )
    cases.append(_case("coherence/pentagon", lhs == rhs))
    return cases


def _pullback_family(max_size: int):
    """Every cospan of canonical carriers up to the size bound."""
    for nb, nc, nd in itertools.product(range(max_size + 1), repeat=3):
        left = [f"b{i}" for i in range(nb)]
        right = [f"c{i}" for i in range(nc)]
        corner = [f"d{i}" for i in range(nd)]
        if nd == 0 and (nb or nc):
            continue  # no maps into the empty set
        for f_values in itertools.product(corner, repeat=nb):
            f = dict(zip(left, f_values))
            for g_values in itertools.product(corner, repeat=nc):
                g = dict(zip(right, g_values))
                yield canonical_pullback(f, g, corner)


def suite_functor_hypotheses(seed: int, trials: int, max_size: int = 2) -> List[LawCase]:
    cases = []
    squares = list(_pullback_family(max_size))
    for fname, functor in sorted(BATTERY.items()):
        if not fn.is_nontrivial(functor):
            cases.append(_case(f"functor/{fname}/nontrivial", False))
            continue
        bad = None
        for square in squares:
            ok, counterexample = check_weak_pullback_preservation(functor, square)
            if not ok:
                bad = counterexample
                break
        cases.append(
            _case(
                f"functor/{fname}/weak-pullbacks",
                bad is None,
                f"counterexample {bad!r}" if bad else "",
            )
        )
    cases.append(
        _case(
            "functor/trivial-detected",
            not fn.is_nontrivial(fn.Const([]))
            and not fn.is_nontrivial(fn.Prod(fn.Const([]), fn.IDENT)),
        )
    )
    return cases


def suite_product_universal(seed: int, trials: int) -> List[LawCase]:
    cases = []
    for fname, functor in sorted(DETERMINISTIC_BATTERY.items()):
        rng = random.Random(f"{seed}:{fname}:product")
        ok, detail = True, ""
        for t in range(max(1, trials // 4)):
            a = gen.random_coalgebra(functor, rng, max_size=3)
            b = gen.random_coalgebra(functor, rng, max_size=3)
            w = product(a, b)
            if not verify_product_universal(w, 10, rng):
                ok, detail = False, f"universal property fails at trial {t}"
                break
            # the stored dom of a random partial morphism matches the
            # categorical formula through the product machinery
            f = gen.random_partial_morphism(a, b, rng)
            if dom_formula(f) != dom(f):
                ok, detail = False, f"dom formula disagrees at trial {t}"
                break
        cases.append(_case(f"product/{fname}", ok, detail))
    return cases


SUITES: Dict[str, Callable[[int, int], List[LawCase]]] = {
    "category": suite_category,
    "topology": suite_topology,
    "lattice": suite_lattice,
    "choice": suite_choice,
    "iteration": suite_iteration,
    "turing": suite_turing,
    "coherence": suite_coherence,
    "functor-hypotheses": suite_functor_hypotheses,
    "product": suite_product_universal,
}


def run_suite(name: str, seed: int, trials: int) -> List[LawCase]:
    from .errors import UnknownSuite

    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return sorted(SUITES[name](seed, trials), key=lambda c: c.name)
