"""JSON documents for hypergraphs, complexes, colorings and reports.

The profile is plain JSON restricted to objects, arrays, strings and integers.
Probabilities are written as ``"p/q"`` strings. Serialization is canonical:
edges sorted by index then vertex labels, palettes in index order, colors in
palette order, two-space indentation and sorted keys.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .core import ColoredHypergraph, Complex, Vertex, edge_index, edge_sort_key
from .errors import DanglingReference, HyperRamseyError, SchemaError
from .ramsey import ColoringAssignment, UniformHypergraph

FORMAT_VERSION = 1
KINDS = {"hypergraph": ColoredHypergraph, "complex": Complex, "coloring": ColoringAssignment, "uniform": UniformHypergraph}


@dataclass
class Document:
    kind: str
    payload: Any
    format_version: int = FORMAT_VERSION


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files(__package__).joinpath("schema/document.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# -- locating JSON paths in source text ---------------------------------------

_decoder = json.JSONDecoder()


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _offset_of(text: str, path) -> int:
    """Character offset of the value at ``path`` (keys and list positions)."""
    i = _skip_ws(text, 0)
    for step in path:
        if text[i] == "{":
            i = _skip_ws(text, i + 1)
            while text[i] != "}":
                key, i = json.decoder.scanstring(text, i + 1)
                i = _skip_ws(text, _skip_ws(text, i) + 1)
                if key == step:
                    break
                _, i = _decoder.raw_decode(text, i)
                i = _skip_ws(text, i)
                if text[i] == ",":
                    i = _skip_ws(text, i + 1)
            else:
                return i
        elif text[i] == "[":
            i = _skip_ws(text, i + 1)
            for _ in range(int(step)):
                _, i = _decoder.raw_decode(text, i)
                i = _skip_ws(text, i)
                if text[i] == ",":
                    i = _skip_ws(text, i + 1)
        else:
            return i
    return i


def _line_col(text: str, offset: int) -> tuple:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _error(text: str, message: str, path=(), cls=SchemaError) -> SchemaError:
    try:
        line, col = _line_col(text, _offset_of(text, list(path)))
    except (IndexError, ValueError):
        line, col = None, None
    return cls(message, line=line, column=col, path=tuple(path))


# -- parsing ------------------------------------------------------------------


_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|-?Infinity|NaN|-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?')


def _reject_float(s):
    raise ValueError(f"non-integer number {s}")


def _first_float(text: str) -> int | None:
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.startswith('"') and not tok.lstrip("-").isdigit():
            return m.start()
    return None


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise ValueError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _load(text: str):
    try:
        return json.loads(
            text, parse_float=_reject_float, parse_constant=_reject_float, object_pairs_hook=_no_duplicates
        )
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, line=exc.lineno, column=exc.colno) from None
    except ValueError as exc:
        at = _first_float(text) if str(exc).startswith("non-integer") else None
        line, col = _line_col(text, at) if at is not None else (None, None)
        raise SchemaError(str(exc), line=line, column=col) from None


def _vertex(text, classes, raw, path) -> Vertex:
    c, l = raw
    if c >= len(classes) or l not in classes[c]:
        raise _error(text, f"vertex {raw} is not in the declared classes", path, DanglingReference)
    return Vertex(c, l)


def _edge(text, classes, raw, path) -> tuple:
    vs = [_vertex(text, classes, v, (*path, i)) for i, v in enumerate(raw)]
    if len({v.cls for v in vs}) != len(vs):
        raise _error(text, "edge has two vertices in one class", path)
    return tuple(sorted(vs))


def _check_color(text, palettes, e, color, path):
    I = edge_index(e)
    if I not in palettes:
        raise _error(text, f"edge index {list(I)} has no palette", path, DanglingReference)
    if color not in palettes[I]:
        raise _error(text, f"color {color!r} is not in the palette of index {list(I)}", path, DanglingReference)


def _build_hypergraph(text, p):
    base = ("payload",)
    classes = [set(c) for c in p["classes"]]
    palettes, defaults = {}, {}
    for j, entry in enumerate(p["palettes"]):
        I = tuple(entry["index"])
        path = (*base, "palettes", j, "index")
        if list(I) != sorted(set(I)) or any(c >= len(classes) for c in I):
            raise _error(text, f"index {list(I)} is not a sorted set of declared classes", path, DanglingReference)
        if I in palettes:
            raise _error(text, f"index {list(I)} has two palettes", path)
        palettes[I] = tuple(entry["colors"])
        if "default" in entry:
            defaults[I] = entry["default"]
    colors = {}
    for j, entry in enumerate(p["edges"]):
        path = (*base, "edges", j)
        e = _edge(text, classes, entry["vertices"], (*path, "vertices"))
        _check_color(text, palettes, e, entry["color"], (*path, "color"))
        if e in colors:
            raise _error(text, "edge listed twice", path)
        colors[e] = entry["color"]
    try:
        return ColoredHypergraph(
            [sorted(c) for c in p["classes"]], p["k"], palettes, colors, default=defaults or None
        )
    except HyperRamseyError as exc:
        raise _error(text, str(exc), base) from None


def _build_complex(text, p):
    base = ("payload",)
    classes = [set(c) for c in p["classes"]]
    vis = {}
    for j, entry in enumerate(p["visible"]):
        path = (*base, "visible", j)
        e = _edge(text, classes, entry["vertices"], (*path, "vertices"))
        if e in vis:
            raise _error(text, "edge listed twice", path)
        vis[e] = entry["color"]
    try:
        return Complex.from_visible([sorted(c) for c in p["classes"]], p["k"], vis)
    except HyperRamseyError as exc:
        raise _error(text, str(exc), base) from None


def _build_simple(text, kind, p):
    try:
        if kind == "coloring":
            return ColoringAssignment(p["n"], p["k"], p["b"], tuple(p["colors"]))
        return UniformHypergraph(p["n"], p["k"], frozenset(tuple(e) for e in p["edges"]))
    except HyperRamseyError as exc:
        raise _error(text, str(exc), ("payload",)) from None


def parse_document(text: str) -> Document:
    """Parse and validate; errors carry the line and column of the offending value."""
    data = _load(text)
    validator = jsonschema.Draft202012Validator(schema())
    errors = list(validator.iter_errors(data))
    if errors:
        err = max(errors, key=lambda e: len(e.absolute_path))
        raise _error(text, err.message, list(err.absolute_path))
    kind, p = data["kind"], data["payload"]
    if kind == "hypergraph":
        obj = _build_hypergraph(text, p)
    elif kind == "complex":
        obj = _build_complex(text, p)
    elif kind in ("coloring", "uniform"):
        obj = _build_simple(text, kind, p)
    else:
        obj = p
    return Document(kind, obj, data["format_version"])


# -- serialization ------------------------------------------------------------


def fraction_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    """Turn report values into the restricted profile: fractions become ``"p/q"``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in documents")
    if isinstance(obj, Vertex):
        return [obj.cls, obj.local]
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _edge_json(e, color):
    return {"vertices": [[v.cls, v.local] for v in e], "color": color}


def _payload(doc: Document):
    obj = doc.payload
    if doc.kind == "complex":
        vis = obj.visible_edges()
        return {
            "classes": [list(c) for c in obj.vertex_sets],
            "k": obj.k,
            "visible": [_edge_json(e, vis[e]) for e in sorted(vis, key=edge_sort_key)],
        }
    if doc.kind == "hypergraph":
        return {
            "classes": [list(c) for c in obj.vertex_sets],
            "k": obj.k,
            "palettes": [{"index": list(I), "colors": list(obj.palettes[I])} for I in obj.indices()],
            "edges": [_edge_json(e, obj.color(e)) for e in obj.edges()],
        }
    if doc.kind == "coloring":
        return {"n": obj.n, "k": obj.k, "b": obj.b, "colors": list(obj.colors)}
    if doc.kind == "uniform":
        return {"n": obj.n, "k": obj.k, "edges": [list(e) for e in obj.sorted_edges()]}
    return jsonable(obj)


def serialize_document(doc: Document) -> str:
    if doc.kind not in (*KINDS, "report"):
        raise SchemaError(f"unknown document kind {doc.kind!r}")
    body = {"format_version": doc.format_version, "kind": doc.kind, "payload": _payload(doc)}
    return _dump(body, 0) + "\n"


def _flat(obj) -> bool:
    return isinstance(obj, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
        for x in obj
    )


def _dump(obj, depth: int) -> str:
    """Two-space indented JSON with sorted keys; arrays of scalars or scalar pairs stay on one line."""
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(key, ensure_ascii=False)}: {_dump(obj[key], depth + 1)}" for key in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and not _flat(obj):
        return "[\n" + ",\n".join(inner + _dump(x, depth + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def document_for(obj) -> Document:
    """Wrap a structure in a document of the matching kind."""
    for kind in ("complex", "hypergraph", "coloring", "uniform"):
        if isinstance(obj, KINDS[kind]):
            return Document(kind, obj)
    return Document("report", obj)


def read_document(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def write_document(path, obj) -> None:
    doc = obj if isinstance(obj, Document) else document_for(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_document(doc))
