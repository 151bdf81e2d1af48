"""Finite coalgebras, their partial-morphism category, and iteration.

The package models state-based systems as coalgebras for a grammar of set
endofunctors, equips them with the subcoalgebra topology, builds the
category of partial morphisms with its near product and domain lattice,
and runs while-loops categorically as Turing developments.
"""

from .functor import (
    Const,
    ConstVal,
    Exp,
    FuncT,
    IDENT,
    Ident,
    InlT,
    InrT,
    Leaf,
    PairT,
    Pow,
    Prod,
    SetT,
    Sum,
    apply_on_map,
    apply_on_set,
    check_weak_pullback_preservation,
    canonical_pullback,
    func_term,
    is_deterministic,
    is_nontrivial,
    leaves,
    lift_relation,
    set_term,
    stream_functor,
)
from .coalgebra import (
    Bisimulation,
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    closure,
    cogenerated_inside,
    connected_components,
    epi_mono_factorize,
    generated,
    graph_is_bisimulation,
    interior,
    is_bisimulation,
    is_connected,
    is_dense,
    is_hausdorff,
    is_irreducible,
    is_morphism,
    is_subcoalgebra,
    largest_bisimulation,
    open_sets,
    preimage,
    restrict,
)
from .limits import (
    CoproductWitness,
    ProductWitness,
    coproduct,
    cotuple,
    dist,
    empty_coalgebra,
    pair_total,
    power,
    product,
    verify_product_universal,
)
from .pfn import (
    PartialMorphism,
    assoc_component,
    box,
    compose,
    coproduct_pm,
    diagonal,
    dom_formula,
    identity_pm,
    divide,
    dom,
    embed_total,
    equal,
    is_partial_mono,
    is_total,
    is_weakly_total,
    is_zero,
    join,
    meet,
    pair,
    partial_identity,
    ran,
    section,
    twist_component,
    union_of_domains,
    zero,
)
from .recursion import (
    Trace,
    TuringDatum,
    datum_box,
    datum_coprod,
    datum_seq,
    iterate,
    iteration_product_laws,
    oracle_iterate,
    run_trace,
    turing_development,
)

__all__ = [name for name in dir() if not name.startswith("_")]
