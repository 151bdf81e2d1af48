"""Grammar of set endofunctors and their action on finite sets and maps.

A functor expression denotes a finite-set endofunctor built from constants,
the identity, binary products and sums, finite exponents and the finite
powerset. Elements of F(X) are represented as terms whose leaves carry
elements of the carrier X; the functor's action on a map rewrites leaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import EnumerationLimitExceeded, NotAPullback, TypeMismatch

DEFAULT_ENUMERATION_LIMIT = 100_000


# ---------------------------------------------------------------------------
# Functor expressions


@dataclass(frozen=True)
class Const:
    symbols: frozenset

    def __init__(self, symbols: Iterable[str]):
        object.__setattr__(self, "symbols", frozenset(symbols))


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Prod:
    left: "FunctorExpr"
    right: "FunctorExpr"


@dataclass(frozen=True)
class Sum:
    left: "FunctorExpr"
    right: "FunctorExpr"


@dataclass(frozen=True)
class Exp:
    indices: frozenset
    body: "FunctorExpr"

    def __init__(self, indices: Iterable[str], body: "FunctorExpr"):
        object.__setattr__(self, "indices", frozenset(indices))
        object.__setattr__(self, "body", body)


@dataclass(frozen=True)
class Pow:
    body: "FunctorExpr"


FunctorExpr = Union[Const, Ident, Prod, Sum, Exp, Pow]

IDENT = Ident()


def stream_functor(outputs: Iterable[str]) -> Prod:
    """The functor X -> C x X of stream systems with output alphabet C."""
    return Prod(Const(outputs), IDENT)


# ---------------------------------------------------------------------------
# Terms (elements of F(X))


@dataclass(frozen=True)
class ConstVal:
    symbol: str


@dataclass(frozen=True)
class Leaf:
    element: str


@dataclass(frozen=True)
class PairT:
    fst: "FTerm"
    snd: "FTerm"


@dataclass(frozen=True)
class InlT:
    value: "FTerm"


@dataclass(frozen=True)
class InrT:
    value: "FTerm"


@dataclass(frozen=True)
class FuncT:
    table: tuple  # sorted tuple of (index, FTerm)


@dataclass(frozen=True)
class SetT:
    members: tuple  # deduplicated, sorted by term_key


FTerm = Union[ConstVal, Leaf, PairT, InlT, InrT, FuncT, SetT]


def term_key(t: FTerm) -> str:
    """Deterministic serialization used as the canonical total order on terms."""
    if isinstance(t, ConstVal):
        return "c<" + t.symbol + ">"
    if isinstance(t, Leaf):
        return "x<" + t.element + ">"
    if isinstance(t, PairT):
        return "p<" + term_key(t.fst) + "," + term_key(t.snd) + ">"
    if isinstance(t, InlT):
        return "l<" + term_key(t.value) + ">"
    if isinstance(t, InrT):
        return "r<" + term_key(t.value) + ">"
    if isinstance(t, FuncT):
        inner = ",".join(k + "=" + term_key(v) for k, v in t.table)
        return "f<" + inner + ">"
    if isinstance(t, SetT):
        return "s<" + ",".join(term_key(m) for m in t.members) + ">"
    raise TypeMismatch(f"not a term: {t!r}")


def func_term(table: Mapping) -> FuncT:
    """Build a FuncT with entries in canonical index order."""
    return FuncT(tuple(sorted(table.items(), key=lambda kv: kv[0])))


def set_term(members: Iterable[FTerm]) -> SetT:
    """Build a SetT, deduplicating and sorting members canonically."""
    by_key = {term_key(m): m for m in members}
    return SetT(tuple(by_key[k] for k in sorted(by_key)))


# ---------------------------------------------------------------------------
# Object part


def cardinality(functor: FunctorExpr, carrier_size: int) -> int:
    """Exact size of F(X) for a carrier of the given size."""
    if isinstance(functor, Const):
        return len(functor.symbols)
    if isinstance(functor, Ident):
        return carrier_size
    if isinstance(functor, Prod):
        return cardinality(functor.left, carrier_size) * cardinality(
            functor.right, carrier_size
        )
    if isinstance(functor, Sum):
        return cardinality(functor.left, carrier_size) + cardinality(
            functor.right, carrier_size
        )
    if isinstance(functor, Exp):
        return cardinality(functor.body, carrier_size) ** len(functor.indices)
    if isinstance(functor, Pow):
        return 2 ** cardinality(functor.body, carrier_size)
    raise TypeMismatch(f"not a functor expression: {functor!r}")


def apply_on_set(
    functor: FunctorExpr,
    carrier: Iterable[str],
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list:
    """Enumerate all well-typed terms of the functor over the carrier.

    Raises EnumerationLimitExceeded before enumerating if |F(X)| > limit.
    """
    carrier = sorted(set(carrier))
    size = cardinality(functor, len(carrier))
    if size > limit:
        raise EnumerationLimitExceeded(
            f"|F(X)| = {size} exceeds enumeration limit {limit}", bound=size
        )
    return _enumerate(functor, carrier)


def _enumerate(functor: FunctorExpr, carrier: list) -> list:
    if isinstance(functor, Const):
        return [ConstVal(c) for c in sorted(functor.symbols)]
    if isinstance(functor, Ident):
        return [Leaf(x) for x in carrier]
    if isinstance(functor, Prod):
        lefts = _enumerate(functor.left, carrier)
        rights = _enumerate(functor.right, carrier)
        return [PairT(a, b) for a in lefts for b in rights]
    if isinstance(functor, Sum):
        lefts = _enumerate(functor.left, carrier)
        rights = _enumerate(functor.right, carrier)
        return [InlT(a) for a in lefts] + [InrT(b) for b in rights]
    if isinstance(functor, Exp):
        indices = sorted(functor.indices)
        values = _enumerate(functor.body, carrier)
        if not indices:
            return [FuncT(())]
        return [
            func_term(dict(zip(indices, combo)))
            for combo in itertools.product(values, repeat=len(indices))
        ]
    if isinstance(functor, Pow):
        values = _enumerate(functor.body, carrier)
        out = []
        for r in range(len(values) + 1):
            for combo in itertools.combinations(values, r):
                out.append(set_term(combo))
        return out
    raise TypeMismatch(f"not a functor expression: {functor!r}")


# ---------------------------------------------------------------------------
# Typing and the morphism part


def check_term(functor: FunctorExpr, term: FTerm, carrier) -> None:
    """Verify that the term is well-typed for the functor over the carrier."""
    carrier = frozenset(carrier)
    _check(functor, term, carrier)


def _check(functor, term, carrier) -> None:
    if isinstance(functor, Const):
        if not (isinstance(term, ConstVal) and term.symbol in functor.symbols):
            raise TypeMismatch(f"expected constant from {sorted(functor.symbols)}, got {term!r}")
    elif isinstance(functor, Ident):
        if not isinstance(term, Leaf):
            raise TypeMismatch(f"expected carrier leaf, got {term!r}")
        if term.element not in carrier:
            raise TypeMismatch(f"leaf {term.element!r} not in carrier")
    elif isinstance(functor, Prod):
        if not isinstance(term, PairT):
            raise TypeMismatch(f"expected pair, got {term!r}")
        _check(functor.left, term.fst, carrier)
        _check(functor.right, term.snd, carrier)
    elif isinstance(functor, Sum):
        if isinstance(term, InlT):
            _check(functor.left, term.value, carrier)
        elif isinstance(term, InrT):
            _check(functor.right, term.value, carrier)
        else:
            raise TypeMismatch(f"expected injection, got {term!r}")
    elif isinstance(functor, Exp):
        if not isinstance(term, FuncT):
            raise TypeMismatch(f"expected function table, got {term!r}")
        keys = frozenset(k for k, _ in term.table)
        if keys != functor.indices or len(term.table) != len(functor.indices):
            raise TypeMismatch(
                f"table indices {sorted(keys)} differ from {sorted(functor.indices)}"
            )
        if list(term.table) != sorted(term.table, key=lambda kv: kv[0]):
            raise TypeMismatch("function table not in canonical index order")
        for _, v in term.table:
            _check(functor.body, v, carrier)
    elif isinstance(functor, Pow):
        if not isinstance(term, SetT):
            raise TypeMismatch(f"expected finite set, got {term!r}")
        keys = [term_key(m) for m in term.members]
        if keys != sorted(set(keys)):
            raise TypeMismatch("set members not deduplicated in canonical order")
        for m in term.members:
            _check(functor.body, m, carrier)
    else:
        raise TypeMismatch(f"not a functor expression: {functor!r}")


def apply_on_map(functor: FunctorExpr, f: Mapping, term: FTerm) -> FTerm:
    """Act on a term by the functor's image of the map f on carriers.

    Rewrites every leaf x to f(x), renormalizing set nodes.
    """
    check_term(functor, term, f.keys())
    return _map_term(functor, f, term)


def _map_term(functor, f, term):
    if isinstance(term, ConstVal):
        return term
    if isinstance(term, Leaf):
        return Leaf(f[term.element])
    if isinstance(term, PairT):
        return PairT(_map_term(functor.left, f, term.fst), _map_term(functor.right, f, term.snd))
    if isinstance(term, InlT):
        return InlT(_map_term(functor.left, f, term.value))
    if isinstance(term, InrT):
        return InrT(_map_term(functor.right, f, term.value))
    if isinstance(term, FuncT):
        return FuncT(tuple((k, _map_term(functor.body, f, v)) for k, v in term.table))
    if isinstance(term, SetT):
        return set_term(_map_term(functor.body, f, m) for m in term.members)
    raise TypeMismatch(f"not a term: {term!r}")


def leaves(term: FTerm) -> frozenset:
    """The set of carrier elements occurring at leaf positions."""
    if isinstance(term, ConstVal):
        return frozenset()
    if isinstance(term, Leaf):
        return frozenset([term.element])
    if isinstance(term, PairT):
        return leaves(term.fst) | leaves(term.snd)
    if isinstance(term, (InlT, InrT)):
        return leaves(term.value)
    if isinstance(term, FuncT):
        out = frozenset()
        for _, v in term.table:
            out |= leaves(v)
        return out
    if isinstance(term, SetT):
        out = frozenset()
        for m in term.members:
            out |= leaves(m)
        return out
    raise TypeMismatch(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# Relation lifting


def lift_relation(functor: FunctorExpr, relation, t: FTerm, s: FTerm) -> bool:
    """Canonical (Egli-Milner style) lifting of a carrier relation to F-terms.

    Constants must be equal symbols; leaves must be related pairs; pairs and
    tables are checked componentwise; injections must agree; finite sets use
    the forth-and-back condition.
    """
    relation = frozenset(relation)
    return _lift(functor, relation, t, s)


def _lift(functor, relation, t, s):
    if isinstance(functor, Const):
        _expect(t, ConstVal)
        _expect(s, ConstVal)
        return t.symbol == s.symbol
    if isinstance(functor, Ident):
        _expect(t, Leaf)
        _expect(s, Leaf)
        return (t.element, s.element) in relation
    if isinstance(functor, Prod):
        _expect(t, PairT)
        _expect(s, PairT)
        return _lift(functor.left, relation, t.fst, s.fst) and _lift(
            functor.right, relation, t.snd, s.snd
        )
    if isinstance(functor, Sum):
        if isinstance(t, InlT) and isinstance(s, InlT):
            return _lift(functor.left, relation, t.value, s.value)
        if isinstance(t, InrT) and isinstance(s, InrT):
            return _lift(functor.right, relation, t.value, s.value)
        if isinstance(t, (InlT, InrT)) and isinstance(s, (InlT, InrT)):
            return False
        raise TypeMismatch(f"expected injections, got {t!r}, {s!r}")
    if isinstance(functor, Exp):
        _expect(t, FuncT)
        _expect(s, FuncT)
        left, right = dict(t.table), dict(s.table)
        if left.keys() != right.keys():
            raise TypeMismatch("function tables over different index sets")
        return all(_lift(functor.body, relation, left[k], right[k]) for k in left)
    if isinstance(functor, Pow):
        _expect(t, SetT)
        _expect(s, SetT)
        forth = all(
            any(_lift(functor.body, relation, u, v) for v in s.members) for u in t.members
        )
        back = all(
            any(_lift(functor.body, relation, u, v) for u in t.members) for v in s.members
        )
        return forth and back
    raise TypeMismatch(f"not a functor expression: {functor!r}")


def _expect(term, cls):
    if not isinstance(term, cls):
        raise TypeMismatch(f"expected {cls.__name__}, got {term!r}")


# ---------------------------------------------------------------------------
# Hypothesis checkers


def is_nontrivial(functor: FunctorExpr) -> bool:
    """True iff F applied to a singleton is nonempty.

    For this inclusion-preserving grammar that is equivalent to the condition
    that F(X) empty forces X empty.
    """
    if isinstance(functor, Const):
        return bool(functor.symbols)
    if isinstance(functor, Ident):
        return True
    if isinstance(functor, Prod):
        return is_nontrivial(functor.left) and is_nontrivial(functor.right)
    if isinstance(functor, Sum):
        return is_nontrivial(functor.left) or is_nontrivial(functor.right)
    if isinstance(functor, Exp):
        if not functor.indices:
            return True
        return is_nontrivial(functor.body)
    if isinstance(functor, Pow):
        return True
    raise TypeMismatch(f"not a functor expression: {functor!r}")


def is_deterministic(functor: FunctorExpr) -> bool:
    """True iff the expression contains no powerset node."""
    if isinstance(functor, (Const, Ident)):
        return True
    if isinstance(functor, (Prod, Sum)):
        return is_deterministic(functor.left) and is_deterministic(functor.right)
    if isinstance(functor, Exp):
        return is_deterministic(functor.body)
    if isinstance(functor, Pow):
        return False
    raise TypeMismatch(f"not a functor expression: {functor!r}")


# ---------------------------------------------------------------------------
# Weak pullback preservation


def pair_elem(x: str, y: str) -> str:
    return f"({x},{y})"


@dataclass(frozen=True)
class PullbackSquare:
    """A pullback square of finite sets.

    apex --top--> right
      |             |
     left           g
      v             v
    bottom --f--> corner   (left leg of the cospan is f: bottom -> corner)
    """

    apex: frozenset
    left_set: frozenset
    right_set: frozenset
    corner: frozenset
    to_left: dict = field(hash=False)  # apex -> left_set
    to_right: dict = field(hash=False)  # apex -> right_set
    f: dict = field(hash=False)  # left_set -> corner
    g: dict = field(hash=False)  # right_set -> corner

    def validate(self) -> None:
        for name, table, dom, cod in (
            ("to_left", self.to_left, self.apex, self.left_set),
            ("to_right", self.to_right, self.apex, self.right_set),
            ("f", self.f, self.left_set, self.corner),
            ("g", self.g, self.right_set, self.corner),
        ):
            if set(table.keys()) != set(dom) or not set(table.values()) <= set(cod):
                raise NotAPullback(f"leg {name} is not a total map into its codomain")
        for a in self.apex:
            if self.f[self.to_left[a]] != self.g[self.to_right[a]]:
                raise NotAPullback(f"square does not commute at {a!r}")
        compatible = {
            (b, c) for b in self.left_set for c in self.right_set if self.f[b] == self.g[c]
        }
        images = {(self.to_left[a], self.to_right[a]) for a in self.apex}
        if images != compatible or len(images) != len(self.apex):
            raise NotAPullback("apex is not in bijection with the compatible pairs")


def canonical_pullback(f: Mapping, g: Mapping, corner) -> PullbackSquare:
    """The canonical pullback of the cospan f: B -> D <- C :g."""
    left_set = frozenset(f.keys())
    right_set = frozenset(g.keys())
    apex, to_left, to_right = set(), {}, {}
    for b in sorted(left_set):
        for c in sorted(right_set):
            if f[b] == g[c]:
                a = pair_elem(b, c)
                apex.add(a)
                to_left[a] = b
                to_right[a] = c
    return PullbackSquare(
        frozenset(apex), left_set, right_set, frozenset(corner), to_left, to_right,
        dict(f), dict(g),
    )


def check_weak_pullback_preservation(
    functor: FunctorExpr,
    square: PullbackSquare,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
):
    """Decide whether F sends the pullback square to a weak pullback.

    Returns (True, None) or (False, (t, s)) where (t, s) is a compatible pair
    in F(left) x F(right) that does not factor through F(apex).
    """
    square.validate()
    f_apex = apply_on_set(functor, square.apex, limit=limit)
    f_left = apply_on_set(functor, square.left_set, limit=limit)
    f_right = apply_on_set(functor, square.right_set, limit=limit)
    factorable = {
        (term_key(_map_term(functor, square.to_left, w)),
         term_key(_map_term(functor, square.to_right, w)))
        for w in f_apex
    }
    left_by_image = {}
    for t in f_left:
        left_by_image.setdefault(term_key(_map_term(functor, square.f, t)), []).append(t)
    for s in f_right:
        image = term_key(_map_term(functor, square.g, s))
        for t in left_by_image.get(image, ()):
            if (term_key(t), term_key(s)) not in factorable:
                return False, (t, s)
    return True, None
