"""Command-line interface: ``extorder COMMAND SPEC [options]``.

Exit status: 0 ok, 1 invalid input, 2 failed invariant or internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import checks
from .activity import tutte
from .antimatroid import Antimatroid
from .bits import popcount
from .errors import ExtOrderError, InternalConsistencyError
from .external_order import boolean_partition, build, internal_order
from .lattice import JDLattice, classify, lattice_from_antimatroid
from .matroid import Matroid
from .minors import MinorSpec, anti_contract, anti_delete, greedoid_minor
from .wire import SchemaError, Spec, _Reader, export_dot, export_spec, parse_spec, set_json

COMMANDS = ("ext-order", "classify", "tutte", "partition", "minor", "circuits", "check")


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _need_matroid(spec: Spec, command: str) -> Matroid:
    if not isinstance(spec.obj, Matroid):
        raise SchemaError("$.kind", f"{command} needs a matroid spec, got {spec.kind!r}")
    return spec.obj


def _antimatroid_of(spec: Spec) -> Antimatroid:
    if isinstance(spec.obj, Matroid):
        return build(spec.obj).antimatroid
    if isinstance(spec.obj, Antimatroid):
        return spec.obj
    raise SchemaError("$.kind", "expected a matroid or antimatroid spec")


def _lattice_of(spec: Spec) -> JDLattice:
    if isinstance(spec.obj, Matroid):
        return build(spec.obj).lattice
    if isinstance(spec.obj, Antimatroid):
        return lattice_from_antimatroid(spec.obj)
    return spec.obj


def _parse_set(text: str | None, n: int) -> int:
    """Element list such as ``1,4``, ``12`` (one element) or ``ad``."""
    if not text:
        return 0
    if "," in text:
        tokens = [t.strip() for t in text.split(",") if t.strip()]
    elif text.isdigit():
        tokens = [text]
    else:
        tokens = list(text)
    items: list[Any] = [int(t) if t.isdigit() else t for t in tokens]
    return _Reader().subset(items, "--set", n)


def _ext_order(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    m = _need_matroid(spec, "ext-order")
    eo = internal_order(m) if args.internal else build(m)
    lat = eo.lattice
    lt = spec.letters
    elems = lat.elements or ()
    nodes = [
        {"id": i, "independent": set_json(eo.independent_of[f], lt), "feasible": set_json(f, lt)}
        for i, f in enumerate(elems)
    ]
    edges = [{"lower": a, "upper": b, "label": set_json(1 << lat.natural_labels()[(a, b)], lt)[0]} for a, b in lat.cover_edges]
    doc: dict[str, Any] = {
        "order": "internal" if args.internal else "external",
        "nodes": nodes,
        "edges": edges,
        "minimum": set_json(eo.minimum, lt),
        "maximum": set_json(eo.maximum, lt),
    }
    if args.las_vergnas:
        bases = eo.matroid.enumerate("bases")
        doc["bases_las_vergnas"] = [
            [set_json(b1, lt), set_json(b2, lt)]
            for b1 in bases
            for b2 in bases
            if b1 != b2 and eo.ep(b2) & ~eo.ep(b1) == 0
        ]
    if args.dot:
        names = [fmt_set(f if args.feasible else eo.independent_of[f], lt) for f in elems]
        with open(args.dot, "w") as fh:
            fh.write(export_dot(lat, names, title="external order"))
    return 0, _dumps(doc)


def fmt_set(mask: int, letters: bool) -> str:
    items = set_json(mask, letters)
    return "".join(map(str, items)) if items else "{}"


def _classify(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    return 0, _dumps(classify(_lattice_of(spec)).as_dict())


def _tutte(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    m = _need_matroid(spec, "tutte")
    t1, t2 = tutte(m, "activity"), tutte(m, "corank_nullity")
    doc = {
        "polynomial": str(t1),
        "activity": [[i, j, c] for (i, j), c in t1.coeffs.items()],
        "corank_nullity": [[i, j, c] for (i, j), c in t2.coeffs.items()],
        "agree": t1 == t2,
    }
    return (0 if t1 == t2 else 2), _dumps(doc)


def _partition(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    m = _need_matroid(spec, "partition")
    eo = build(m)
    boolean_partition(eo)
    lt = spec.letters
    doc = [
        {"independent": set_json(i, lt), "active": set_json(eo.ea(i), lt), "size": 1 << popcount(eo.ea(i))}
        for i in eo.independents
    ]
    return 0, _dumps(doc)


def _minor(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    f = _antimatroid_of(spec)
    d = _parse_set(args.delete, f.n)
    c = _parse_set(args.contract, f.n)
    ms = MinorSpec(delete=d, contract=c)
    if args.greedoid:
        fam, verdict = greedoid_minor(f, ms)
        if not verdict:
            print(f"warning: {verdict}", file=sys.stderr)
        return 0, export_spec(fam, spec.letters)
    return 0, export_spec(anti_delete(anti_contract(f, c), d), spec.letters)


def _circuits(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    f = _antimatroid_of(spec)
    rooted = f.rooted_cocircuits() if args.cocircuits else f.rooted_circuits()
    lt = spec.letters
    return 0, _dumps([{"set": set_json(r.set, lt), "root": set_json(1 << r.root, lt)[0]} for r in rooted])


def _check(spec: Spec, args: argparse.Namespace) -> tuple[int, str]:
    results: list[checks.CheckResult] = []
    obj = spec.obj
    if isinstance(obj, Matroid):
        eo = build(obj)
        results += checks.matroid_invariants(obj)
        results += checks.external_order_invariants(obj, eo)
        results += checks.antimatroid_invariants(eo.antimatroid)
        results += checks.lattice_invariants(eo.lattice)
        if popcount(obj.ground) <= 6:
            results += checks.minor_invariants(obj)
            results.append(checks.matroid_contraction_circuits_check(obj))
            results.append(checks.rooted_contraction_circuits_check(eo.antimatroid))
    elif isinstance(obj, Antimatroid):
        results += checks.antimatroid_invariants(obj)
        results += checks.lattice_invariants(lattice_from_antimatroid(obj))
        results.append(checks.antimatroid_lattice_roundtrip(obj))
        if popcount(obj.ground) <= 8:
            results.append(checks.rooted_contraction_circuits_check(obj))
    else:
        results += checks.lattice_invariants(obj)
    text = "".join(r.line() + "\n" for r in results)
    return (0 if all(r.ok for r in results) else 2), text


HANDLERS = {
    "ext-order": _ext_order,
    "classify": _classify,
    "tutte": _tutte,
    "partition": _partition,
    "minor": _minor,
    "circuits": _circuits,
    "check": _check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extorder", description="External orders of ordered matroids, antimatroids and JD lattices.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="path to a JSON spec, or - for stdin")
    p.add_argument("--dot", help="ext-order: also write the Hasse diagram as DOT to this file")
    p.add_argument("--feasible", action="store_true", help="ext-order: label DOT nodes by feasible set")
    p.add_argument("--internal", action="store_true", help="ext-order: build the internal order instead")
    p.add_argument("--las-vergnas", action="store_true", help="ext-order: list basis pairs in the classical orientation")
    p.add_argument("--delete", help="minor: elements to delete, e.g. 1,4 or ad")
    p.add_argument("--contract", help="minor: elements to contract")
    p.add_argument("--greedoid", action="store_true", help="minor: greedoid deletion/contraction of feasible sets")
    p.add_argument("--cocircuits", action="store_true", help="circuits: list rooted cocircuits")
    return p


def _execute(args: argparse.Namespace, text: str) -> tuple[int, str]:
    try:
        spec = parse_spec(text)
        return HANDLERS[args.command](spec, args)
    except InternalConsistencyError as exc:
        return 2, f"error: {exc}\n"
    except ExtOrderError as exc:
        return 1, f"error: {exc}\n"


def run(command: str, spec_text: str, argv: Sequence[str] = ()) -> tuple[int, str]:
    """Run one command on spec text; returns (exit status, output)."""
    return _execute(build_parser().parse_args([command, "-", *argv]), spec_text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.spec == "-" else open(args.spec).read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, out = _execute(args, text)
    (sys.stdout if status == 0 or args.command == "check" else sys.stderr).write(out)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
