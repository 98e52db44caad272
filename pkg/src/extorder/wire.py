"""JSON input specs, canonical JSON export and DOT rendering.

Elements are written 1-based (``1``, ``2``, ...) or as single letters
(``"a"`` = 1).  A spec's optional ``order`` lists elements from smallest to
largest.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Any, Sequence

from .antimatroid import Antimatroid, SetFamily
from .bits import bits, full, mask_of, sorted_masks
from .errors import ValidationError
from .lattice import JDLattice, lattice_from_covers
from .matroid import (
    GroundOrder,
    Matroid,
    graphic_matroid,
    linear_matroid,
    matroid_from_bases,
    matroid_from_circuits,
    uniform_matroid,
)

KINDS = ("linear", "graphic", "uniform", "bases", "circuits", "antimatroid", "lattice")
MATROID_KINDS = KINDS[:5]


class SchemaError(ValidationError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Spec:
    kind: str
    obj: Matroid | Antimatroid | JDLattice
    letters: bool = False

    @property
    def is_matroid(self) -> bool:
        return self.kind in MATROID_KINDS


# --------------------------------------------------------------------------- parsing


class _Reader:
    def __init__(self) -> None:
        self.letters = False

    def element(self, v: Any, path: str, n: int | None) -> int:
        if isinstance(v, bool):
            raise SchemaError(path, "expected an element")
        if isinstance(v, int):
            e = v - 1
        elif isinstance(v, str) and len(v) == 1 and v in string.ascii_lowercase:
            self.letters = True
            e = ord(v) - ord("a")
        else:
            raise SchemaError(path, f"expected a positive integer or a letter, got {v!r}")
        if e < 0 or (n is not None and e >= n):
            raise SchemaError(path, f"element {v!r} out of range")
        return e

    def subset(self, v: Any, path: str, n: int | None) -> int:
        if isinstance(v, str) and v and all(c in string.ascii_lowercase for c in v):
            return mask_of(self.element(c, f"{path}[{k}]", n) for k, c in enumerate(v))
        if not isinstance(v, list):
            raise SchemaError(path, "expected a list of elements")
        items = [self.element(x, f"{path}[{k}]", n) for k, x in enumerate(v)]
        if len(set(items)) != len(items):
            raise SchemaError(path, "repeated element")
        return mask_of(items)

    def subsets(self, v: Any, path: str, n: int | None) -> list[int]:
        if not isinstance(v, list):
            raise SchemaError(path, "expected a list of sets")
        return [self.subset(x, f"{path}[{k}]", n) for k, x in enumerate(v)]


def _get(doc: dict, key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in doc:
        raise SchemaError(f"$.{key}", "missing")
    v = doc[key]
    if not isinstance(v, kind) or isinstance(v, bool):
        raise SchemaError(f"$.{key}", f"wrong type {type(v).__name__}")
    return v


def _int_matrix(v: Any) -> list[list[int]]:
    if not isinstance(v, list) or not v:
        raise SchemaError("$.matrix", "expected a nonempty list of rows")
    width = None
    for i, row in enumerate(v):
        if not isinstance(row, list):
            raise SchemaError(f"$.matrix[{i}]", "expected a row")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SchemaError(f"$.matrix[{i}]", "ragged row")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise SchemaError(f"$.matrix[{i}][{j}]", "expected an integer")
    return v


def parse_spec(text: str | bytes | dict | list) -> Spec:
    """Validate a JSON spec and build the matroid, antimatroid or lattice it describes.

    A bare JSON list is read as an antimatroid family on the union of its sets.
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from None
    else:
        doc = text
    rd = _Reader()
    if isinstance(doc, list):
        fam = rd.subsets(doc, "$", None)
        n = max((m.bit_length() for m in fam), default=0)
        union = 0
        for m in fam:
            union |= m
        return Spec("antimatroid", Antimatroid(n, fam, ground=union), rd.letters)
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    kind = _get(doc, "kind", str)
    if kind not in KINDS:
        raise SchemaError("$.kind", f"unknown kind {kind!r}")

    if kind == "linear":
        matrix = _int_matrix(doc.get("matrix"))
        fld = doc.get("field", 2)
        if fld not in (2, 3, 5, 7) or isinstance(fld, bool):
            raise SchemaError("$.field", "field must be one of 2, 3, 5, 7")
        m = linear_matroid(matrix, fld)
    elif kind == "graphic":
        edges = _get(doc, "edges", list)
        for k, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise SchemaError(f"$.edges[{k}]", "expected a pair of vertices")
        m = graphic_matroid([tuple(e) for e in edges])
    elif kind == "uniform":
        r, n = _get(doc, "r", int), _get(doc, "n", int)
        if not 0 <= r <= n:
            raise SchemaError("$.r", "need 0 <= r <= n")
        m = uniform_matroid(r, n)
    elif kind in ("bases", "circuits"):
        n = _get(doc, "n", int)
        sets = rd.subsets(doc.get(kind), f"$.{kind}", n)
        m = matroid_from_bases(n, sets) if kind == "bases" else matroid_from_circuits(n, sets)
    elif kind == "antimatroid":
        g = doc.get("ground")
        if isinstance(g, int) and not isinstance(g, bool):
            n, ground = g, full(g)
        elif isinstance(g, list):
            n = doc.get("n", 0)
            ground = rd.subset(g, "$.ground", None)
            n = max(n, ground.bit_length())
        else:
            raise SchemaError("$.ground", "expected a size or a list of elements")
        fam = rd.subsets(doc.get("feasible"), "$.feasible", n)
        for k, f in enumerate(fam):
            if f & ~ground:
                raise SchemaError(f"$.feasible[{k}]", "set outside the ground set")
        if len(set(fam)) != len(fam):
            raise SchemaError("$.feasible", "duplicate set")
        a = Antimatroid(n, fam, ground=ground)
        _check_order(doc, rd, n)
        return Spec(kind, a, rd.letters)
    else:
        return Spec(kind, _parse_lattice(doc, rd), rd.letters)

    order = _check_order(doc, rd, m.n)
    if order is not None:
        m = m.with_order(order)
    return Spec(kind, m, rd.letters)


def _check_order(doc: dict, rd: _Reader, n: int) -> GroundOrder | None:
    if "order" not in doc:
        return None
    raw = doc["order"]
    if not isinstance(raw, list):
        raise SchemaError("$.order", "expected a list of elements")
    perm = [rd.element(x, f"$.order[{k}]", n) for k, x in enumerate(raw)]
    if sorted(perm) != list(range(n)):
        raise SchemaError("$.order", "order must list every element exactly once")
    return GroundOrder(tuple(perm))


def _parse_lattice(doc: dict, rd: _Reader) -> JDLattice:
    names = _get(doc, "elements", list)
    if len(set(map(str, names))) != len(names):
        raise SchemaError("$.elements", "duplicate element name")
    pos = {str(v): k for k, v in enumerate(names)}
    covers = []
    for k, e in enumerate(_get(doc, "covers", list)):
        if not isinstance(e, list) or len(e) != 2 or str(e[0]) not in pos or str(e[1]) not in pos:
            raise SchemaError(f"$.covers[{k}]", "expected a pair of element names")
        covers.append((pos[str(e[0])], pos[str(e[1])]))
    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        if not isinstance(raw, dict):
            raise SchemaError("$.labels", "expected an object")
        labels = {}
        for key, v in raw.items():
            if key not in pos:
                raise SchemaError(f"$.labels.{key}", "unknown element")
            labels[pos[key]] = rd.element(v, f"$.labels.{key}", None)
    return lattice_from_covers([str(v) for v in names], covers, labels)


# --------------------------------------------------------------------------- export


def element_text(e: int, letters: bool) -> int | str:
    return chr(ord("a") + e) if letters else e + 1


def set_json(mask: int, letters: bool = False) -> list:
    return [element_text(e, letters) for e in bits(mask)]


def _dump(doc: dict) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def export_json(family: SetFamily, letters: bool = False) -> str:
    """Canonical list of sorted sets, ordered by (cardinality, mask)."""
    return json.dumps([set_json(m, letters) for m in sorted_masks(family.members)], separators=(", ", ": "))


def export_spec(obj: SetFamily | JDLattice, letters: bool = False) -> str:
    """Full canonical spec document; parses back to an equal object."""
    if isinstance(obj, JDLattice):
        doc: dict[str, Any] = {
            "kind": "lattice",
            "elements": list(obj.names),
            "covers": [[obj.names[a], obj.names[b]] for a, b in obj.cover_edges],
            "labels": {obj.names[y]: element_text(e, letters) for y, e in sorted(obj.mi_labels.items())},
        }
        return _dump(doc)
    ground: Any = obj.n if obj.ground == full(obj.n) else set_json(obj.ground, letters)
    doc = {"kind": "antimatroid", "ground": ground}
    if not isinstance(ground, int):
        doc["n"] = obj.n
    doc["feasible"] = [set_json(m, letters) for m in sorted_masks(obj.members)]
    return _dump(doc)


def export_dot(lat: JDLattice, names: Sequence[str] | None = None, title: str = "L") -> str:
    """Hasse diagram, bottom to top, with natural edge labels when they exist."""
    names = list(names) if names is not None else list(lat.names)
    out = [f"digraph {json.dumps(title)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i in range(lat.size):
        out.append(f"  n{i} [label={json.dumps(names[i])}];")
    for a, b in lat.cover_edges:
        lab = lat.edge_label(a, b)
        attr = f" [label={json.dumps(str(lab + 1))}]" if lab is not None else ""
        out.append(f"  n{a} -> n{b}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"
