"""Canonical JSON interchange for all workspace value types.

Documents use canonical key order and sorted set renderings so that
serialization is bit-stable and diffs are meaningful; parse(serialize(v))
returns an equal value for every supported type.
"""

from __future__ import annotations

import json

from . import functor as fn
from .coalgebra import Coalgebra, CoalgebraMorphism
from .errors import ParseError
from .limits import CoproductWitness, ProductWitness, coproduct
from .pfn import PartialMorphism
from .recursion import TuringDatum


# ---------------------------------------------------------------------------
# Functors


def functor_to_doc(functor):
    if isinstance(functor, fn.Ident):
        return "id"
    if isinstance(functor, fn.Const):
        return {"const": sorted(functor.symbols)}
    if isinstance(functor, fn.Prod):
        return {"prod": [functor_to_doc(functor.left), functor_to_doc(functor.right)]}
    if isinstance(functor, fn.Sum):
        return {"sum": [functor_to_doc(functor.left), functor_to_doc(functor.right)]}
    if isinstance(functor, fn.Exp):
        return {"exp": [sorted(functor.indices), functor_to_doc(functor.body)]}
    if isinstance(functor, fn.Pow):
        return {"pow": functor_to_doc(functor.body)}
    raise ParseError(f"not a functor expression: {functor!r}")


def functor_from_doc(doc):
    if doc == "id":
        return fn.IDENT
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ParseError(f"bad functor document: {doc!r}")
    key, value = next(iter(doc.items()))
    if key == "const":
        return fn.Const(value)
    if key == "prod":
        return fn.Prod(functor_from_doc(value[0]), functor_from_doc(value[1]))
    if key == "sum":
        return fn.Sum(functor_from_doc(value[0]), functor_from_doc(value[1]))
    if key == "exp":
        return fn.Exp(value[0], functor_from_doc(value[1]))
    if key == "pow":
        return fn.Pow(functor_from_doc(value))
    raise ParseError(f"unknown functor constructor: {key!r}")


# ---------------------------------------------------------------------------
# Terms


def term_to_doc(term):
    if isinstance(term, fn.ConstVal):
        return {"const": term.symbol}
    if isinstance(term, fn.Leaf):
        return {"leaf": term.element}
    if isinstance(term, fn.PairT):
        return {"pair": [term_to_doc(term.fst), term_to_doc(term.snd)]}
    if isinstance(term, fn.InlT):
        return {"inl": term_to_doc(term.value)}
    if isinstance(term, fn.InrT):
        return {"inr": term_to_doc(term.value)}
    if isinstance(term, fn.FuncT):
        return {"func": {k: term_to_doc(v) for k, v in term.table}}
    if isinstance(term, fn.SetT):
        return {"set": [term_to_doc(m) for m in term.members]}
    raise ParseError(f"not a term: {term!r}")


def term_from_doc(doc):
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ParseError(f"bad term document: {doc!r}")
    key, value = next(iter(doc.items()))
    if key == "const":
        return fn.ConstVal(value)
    if key == "leaf":
        return fn.Leaf(value)
    if key == "pair":
        return fn.PairT(term_from_doc(value[0]), term_from_doc(value[1]))
    if key == "inl":
        return fn.InlT(term_from_doc(value))
    if key == "inr":
        return fn.InrT(term_from_doc(value))
    if key == "func":
        return fn.func_term({k: term_from_doc(v) for k, v in value.items()})
    if key == "set":
        return fn.set_term(term_from_doc(m) for m in value)
    raise ParseError(f"unknown term constructor: {key!r}")


# ---------------------------------------------------------------------------
# Coalgebras and morphisms


def coalgebra_to_doc(x: Coalgebra):
    return {
        "functor": functor_to_doc(x.functor),
        "carrier": sorted(x.carrier),
        "structure": {e: term_to_doc(x.structure[e]) for e in sorted(x.carrier)},
    }


def coalgebra_from_doc(doc, allow_trivial=False) -> Coalgebra:
    try:
        functor = functor_from_doc(doc["functor"])
        carrier = doc["carrier"]
        structure = {e: term_from_doc(t) for e, t in doc["structure"].items()}
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"bad coalgebra document: {exc}") from exc
    return Coalgebra(functor, carrier, structure, allow_trivial=allow_trivial)


def morphism_to_doc(f: CoalgebraMorphism):
    return {
        "src": coalgebra_to_doc(f.src),
        "dst": coalgebra_to_doc(f.dst),
        "map": {x: f.map[x] for x in sorted(f.map)},
    }


def morphism_from_doc(doc) -> CoalgebraMorphism:
    try:
        src = coalgebra_from_doc(doc["src"])
        dst = coalgebra_from_doc(doc["dst"])
        table = dict(doc["map"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad morphism document: {exc}") from exc
    return CoalgebraMorphism(src, dst, table)


def partial_morphism_to_doc(f: PartialMorphism):
    return {
        "src": coalgebra_to_doc(f.src),
        "dst": coalgebra_to_doc(f.dst),
        "dom": sorted(f.dom),
        "map": {x: f.map[x] for x in sorted(f.map)},
    }


def partial_morphism_from_doc(doc) -> PartialMorphism:
    try:
        src = coalgebra_from_doc(doc["src"])
        dst = coalgebra_from_doc(doc["dst"])
        dom = doc["dom"]
        table = dict(doc["map"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad partial morphism document: {exc}") from exc
    return PartialMorphism(src, dst, dom, table)


# ---------------------------------------------------------------------------
# Turing data


def turing_datum_to_doc(d: TuringDatum):
    v_doc = {}
    for w in sorted(d.w.carrier):
        side, value = d.decode(d.v.map[w])
        v_doc[w] = {"inl": value} if side == "w" else {"inr": value}
    return {
        "X": coalgebra_to_doc(d.x),
        "W": coalgebra_to_doc(d.w),
        "Y": coalgebra_to_doc(d.y),
        "u": {x: d.u.map[x] for x in sorted(d.u.map)},
        "v": v_doc,
    }


def turing_datum_from_doc(doc) -> TuringDatum:
    try:
        x = coalgebra_from_doc(doc["X"])
        w = coalgebra_from_doc(doc["W"])
        y = coalgebra_from_doc(doc["Y"])
        u = CoalgebraMorphism(x, w, dict(doc["u"]))
        witness = coproduct([w, y])
        i0, i1 = witness.injections
        v_table = {}
        for state, step in doc["v"].items():
            if "inl" in step:
                v_table[state] = i0.map[step["inl"]]
            elif "inr" in step:
                v_table[state] = i1.map[step["inr"]]
            else:
                raise ParseError(f"bad loop step: {step!r}")
        v = CoalgebraMorphism(w, witness.total, v_table)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad turing datum document: {exc}") from exc
    return TuringDatum(u, v, y)


# ---------------------------------------------------------------------------
# Witnesses (serialize-only, with explicit tables)


def coproduct_witness_to_doc(w: CoproductWitness):
    return {
        "summands": [coalgebra_to_doc(s) for s in w.summands],
        "total": coalgebra_to_doc(w.total),
        "injections": [
            {x: inj.map[x] for x in sorted(inj.map)} for inj in w.injections
        ],
    }


def product_witness_to_doc(w: ProductWitness):
    return {
        "factors": [coalgebra_to_doc(f) for f in w.factors],
        "total": coalgebra_to_doc(w.total),
        "projections": [
            {x: p.map[x] for x in sorted(p.map)} for p in w.projections
        ],
    }


# ---------------------------------------------------------------------------
# Self-describing dispatch


def value_to_doc(value):
    if isinstance(value, Coalgebra):
        return coalgebra_to_doc(value)
    if isinstance(value, PartialMorphism):
        return partial_morphism_to_doc(value)
    if isinstance(value, CoalgebraMorphism):
        return morphism_to_doc(value)
    if isinstance(value, TuringDatum):
        return turing_datum_to_doc(value)
    if isinstance(value, CoproductWitness):
        return coproduct_witness_to_doc(value)
    if isinstance(value, ProductWitness):
        return product_witness_to_doc(value)
    return functor_to_doc(value)


def value_from_doc(doc):
    """Parse any workspace document, dispatching on its key shape."""
    if isinstance(doc, dict):
        if {"X", "W", "Y", "u", "v"} <= doc.keys():
            return turing_datum_from_doc(doc)
        if {"src", "dst", "dom", "map"} <= doc.keys():
            return partial_morphism_from_doc(doc)
        if {"src", "dst", "map"} <= doc.keys():
            return morphism_from_doc(doc)
        if {"functor", "carrier", "structure"} <= doc.keys():
            return coalgebra_from_doc(doc)
    return functor_from_doc(doc)


def dumps(value) -> str:
    return json.dumps(value_to_doc(value), sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return value_from_doc(doc)
