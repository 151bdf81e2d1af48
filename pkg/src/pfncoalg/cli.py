"""Command-line front end.

Loads values from a workspace of JSON files (binding name = file stem),
runs the library operations on them, and prints deterministic reports.
Exit codes: 0 success, 1 parse or validation failure, 2 object mismatch,
3 unsupported construction, 4 law-suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import laws, serialization
from .coalgebra import (
    Coalgebra,
    CoalgebraMorphism,
    Subcoalgebra,
    closure,
    connected_components,
    is_dense,
    is_hausdorff,
    is_irreducible,
    open_sets,
)
from .coalgebra import largest_bisimulation
from .errors import (
    ObjectMismatch,
    ParseError,
    PfnCoalgError,
    UnknownBinding,
    Unsupported,
    ValidationError,
)
from .limits import product
from .pfn import PartialMorphism, compose, embed_total
from .recursion import TuringDatum, iterate, run_trace, turing_development

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISMATCH = 2
EXIT_UNSUPPORTED = 3
EXIT_LAWS = 4

LIMIT_ENV_VAR = "PFNCOALG_LIMIT"


class Workspace:
    """Named bindings read from the *.json files of a directory."""

    def __init__(self, directory: str):
        self.directory = Path(directory)

    def path_of(self, name: str) -> Path:
        return self.directory / f"{name}.json"

    def names(self):
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def load(self, name: str):
        path = self.path_of(name)
        if not path.is_file():
            raise UnknownBinding(f"no binding {name!r} in {self.directory}")
        return serialization.loads(path.read_text())


def _emit(args, text_lines, machine_doc):
    if args.format == "machine":
        sys.stdout.write(
            json.dumps(machine_doc, sort_keys=True, indent=2) + "\n"
        )
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _need(value, kind, what):
    if not isinstance(value, kind):
        raise ObjectMismatch(f"{what} is a {type(value).__name__}, expected {kind.__name__}")
    return value


def _parse_subset(text: str):
    return [s for s in text.split(",") if s]


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args, ws: Workspace) -> int:
    paths = [Path(p) for p in args.paths] or [ws.path_of(n) for n in ws.names()]
    lines, docs, all_ok = [], [], True
    for path in paths:
        name = path.stem
        try:
            value = serialization.loads(path.read_text())
            round_trip = serialization.loads(serialization.dumps(value))
            if round_trip != value:
                raise ValidationError("serialization round trip is not identity")
            lines.append(f"PASS {name}: {type(value).__name__}")
            docs.append({"name": name, "ok": True, "type": type(value).__name__})
        except OSError as exc:
            all_ok = False
            lines.append(f"FAIL {name}: ParseError: {exc}")
            docs.append({"name": name, "ok": False, "error": "ParseError", "detail": str(exc)})
        except PfnCoalgError as exc:
            all_ok = False
            kind = type(exc).__name__
            lines.append(f"FAIL {name}: {kind}: {exc}")
            docs.append({"name": name, "ok": False, "error": kind, "detail": str(exc)})
    _emit(args, lines, {"objects": docs})
    return EXIT_OK if all_ok else EXIT_VALIDATION


def cmd_topology(args, ws: Workspace) -> int:
    x = _need(ws.load(args.coalgebra), Coalgebra, args.coalgebra)
    lines, doc = [], {}
    if args.opens:
        opens = [sorted(o) for o in open_sets(x, limit=args.limit)]
        opens.sort(key=lambda o: (len(o), o))
        lines.append(f"opens: {opens}")
        doc["opens"] = opens
    if args.closure is not None:
        cl = sorted(closure(x, _parse_subset(args.closure)))
        lines.append(f"closure: {cl}")
        doc["closure"] = cl
    if args.dense is not None:
        dense = is_dense(x, _parse_subset(args.dense))
        lines.append(f"dense: {str(dense).lower()}")
        doc["dense"] = dense
    if args.components:
        blocks = [sorted(b) for b in connected_components(x)]
        lines.append(f"components: {blocks}")
        doc["components"] = blocks
    if args.irreducible:
        value = is_irreducible(x, limit=args.limit)
        lines.append(f"irreducible: {str(value).lower()}")
        doc["irreducible"] = value
    if args.hausdorff:
        value = is_hausdorff(x, limit=args.limit)
        lines.append(f"hausdorff: {str(value).lower()}")
        doc["hausdorff"] = value
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_bisim(args, ws: Workspace) -> int:
    x = _need(ws.load(args.left), Coalgebra, args.left)
    y = _need(ws.load(args.right), Coalgebra, args.right)
    pairs = sorted(largest_bisimulation(x, y))
    _emit(
        args,
        [f"pairs: {[list(p) for p in pairs]}"],
        {"pairs": [list(p) for p in pairs]},
    )
    return EXIT_OK


def cmd_product(args, ws: Workspace) -> int:
    x = _need(ws.load(args.left), Coalgebra, args.left)
    y = _need(ws.load(args.right), Coalgebra, args.right)
    witness = product(x, y)
    doc = serialization.product_witness_to_doc(witness)
    _emit(
        args,
        [f"carrier: {sorted(witness.total.carrier)}"],
        doc,
    )
    return EXIT_OK


def _as_partial(value, name) -> PartialMorphism:
    if isinstance(value, PartialMorphism):
        return value
    if isinstance(value, CoalgebraMorphism):
        return embed_total(value)
    raise ObjectMismatch(f"{name} is a {type(value).__name__}, expected a morphism")


def cmd_compose(args, ws: Workspace) -> int:
    g = _as_partial(ws.load(args.outer), args.outer)
    f = _as_partial(ws.load(args.inner), args.inner)
    result = compose(g, f)
    doc = serialization.partial_morphism_to_doc(result)
    _emit(
        args,
        [f"dom: {sorted(result.dom)}", f"map: {dict(sorted(result.map.items()))}"],
        doc,
    )
    return EXIT_OK


def cmd_iterate(args, ws: Workspace) -> int:
    f = ws.load(args.morphism)
    if isinstance(f, PartialMorphism):
        raise ObjectMismatch("iteration needs a total endomorphism")
    u = Subcoalgebra(f.src, _parse_subset(args.fixed))
    result = iterate(f, u)
    doc = serialization.partial_morphism_to_doc(result)
    _emit(
        args,
        [f"dom: {sorted(result.dom)}", f"map: {dict(sorted(result.map.items()))}"],
        doc,
    )
    return EXIT_OK


def cmd_turing(args, ws: Workspace) -> int:
    datum = _need(ws.load(args.datum), TuringDatum, args.datum)
    development = turing_development(datum)
    doc = {"development": serialization.partial_morphism_to_doc(development)}
    lines = [
        f"dom: {sorted(development.dom)}",
        f"map: {dict(sorted(development.map.items()))}",
    ]
    if args.trace is not None:
        trace = run_trace(datum, args.trace)
        lines.append(f"visits: {list(trace.visited)}")
        if trace.outcome[0] == "halted":
            lines.append(f"halts: {trace.outcome[1]}")
        else:
            lines.append(f"diverges: revisits index {trace.outcome[1]}")
        doc["trace"] = {
            "input": trace.input,
            "visited": list(trace.visited),
            "outcome": list(trace.outcome),
        }
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_laws(args, ws: Workspace) -> int:
    cases = laws.run_suite(args.suite, args.seed, args.trials)
    passed = sum(c.passed for c in cases)
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}"
        + (f": {c.detail}" if c.detail else "")
        for c in cases
    ]
    lines.append(f"passed {passed}/{len(cases)}")
    doc = {
        "suite": args.suite,
        "seed": args.seed,
        "trials": args.trials,
        "passed": passed,
        "total": len(cases),
        "cases": [
            {"name": c.name, "ok": c.passed, "detail": c.detail} for c in cases
        ],
    }
    _emit(args, lines, doc)
    return EXIT_OK if passed == len(cases) else EXIT_LAWS


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfncoalg",
        description="Finite coalgebras, partial morphisms, and iteration.",
    )
    parser.add_argument("--workspace", default=".", help="directory of *.json bindings")
    parser.add_argument(
        "--limit",
        type=int,
        default=None,
        help=f"enumeration guard (default from ${LIMIT_ENV_VAR} or built in)",
    )
    parser.add_argument("--format", choices=["text", "machine"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate files or the whole workspace")
    p.add_argument("paths", nargs="*")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("topology", help="topological quantities of a coalgebra")
    p.add_argument("coalgebra")
    p.add_argument("--opens", action="store_true")
    p.add_argument("--closure", metavar="S")
    p.add_argument("--dense", metavar="S")
    p.add_argument("--components", action="store_true")
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--hausdorff", action="store_true")
    p.set_defaults(run=cmd_topology)

    p = sub.add_parser("bisim", help="largest bisimulation between two coalgebras")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_bisim)

    p = sub.add_parser("product", help="near product of two coalgebras")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_product)

    p = sub.add_parser("compose", help="compose two (partial) morphisms")
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("iterate", help="iterate a total endomorphism into a fixed part")
    p.add_argument("morphism")
    p.add_argument("fixed", help="comma-separated subcoalgebra fixed by the map")
    p.set_defaults(run=cmd_iterate)

    p = sub.add_parser("turing", help="development of a machine datum")
    p.add_argument("datum")
    p.add_argument("--trace", metavar="X", help="also trace this input element")
    p.set_defaults(run=cmd_turing)

    p = sub.add_parser("laws", help="run a law suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(run=cmd_laws)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.limit is None:
        from .functor import DEFAULT_ENUMERATION_LIMIT

        args.limit = int(os.environ.get(LIMIT_ENV_VAR, DEFAULT_ENUMERATION_LIMIT))
    ws = Workspace(args.workspace)
    try:
        return args.run(args, ws)
    except Unsupported as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_UNSUPPORTED
    except ObjectMismatch as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_MISMATCH
    except (ParseError, ValidationError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"ParseError: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
