import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hyperramsey.core import Complex
from hyperramsey.documents import (
    Document,
    document_for,
    fraction_str,
    jsonable,
    parse_document,
    read_document,
    serialize_document,
    write_document,
)
from hyperramsey.errors import DanglingReference, SchemaError
from hyperramsey.ramsey import UniformHypergraph, partition_ambient

from helpers import V, pentagon, rand_ambient

DATA = Path(__file__).parent / "data"


def three_class_complex():
    vis = {
        (V(0),): "a", (V(1, 0),): "x", (V(1, 1),): "x", (V(2),): "u",
        (V(0), V(1, 0)): "p", (V(0), V(1, 1)): "q", (V(1, 0), V(2)): "p",
    }
    return Complex.from_visible([[0], [0, 1], [0]], 2, vis)


def test_golden_pentagon():
    text = (DATA / "pentagon.json").read_text()
    doc = parse_document(text)
    assert doc.kind == "coloring" and doc.payload == pentagon()
    assert serialize_document(Document("coloring", pentagon())) == text


def test_golden_three_class_complex():
    text = (DATA / "three_class_complex.json").read_text()
    doc = parse_document(text)
    assert doc.payload == three_class_complex()
    assert serialize_document(doc) == text


@given(st.integers(0, 10**6))
def test_hypergraph_round_trip(seed):
    G = rand_ambient(seed, sizes=(2, 3, 1), palettes=(2, 3))
    text = serialize_document(document_for(G))
    back = parse_document(text)
    assert back.payload.vertex_sets == G.vertex_sets
    assert all(back.payload.color(e) == G.color(e) for e in G.edges())
    assert serialize_document(back) == text


def test_partitioned_pentagon_round_trip():
    G = partition_ambient(pentagon(), 5, 1)
    text = serialize_document(document_for(G))
    again = serialize_document(parse_document(text))
    assert again == text


def test_uniform_and_report_documents(tmp_path):
    H = UniformHypergraph.cycle(5)
    write_document(tmp_path / "h.json", H)
    assert read_document(tmp_path / "h.json").payload == H
    rep = {"value": Fraction(2, 6), "ok": True, "pair": (V(1, 2), 3)}
    doc = document_for(rep)
    assert doc.kind == "report"
    body = json.loads(serialize_document(doc))["payload"]
    assert body == {"value": "1/3", "ok": True, "pair": [[1, 2], 3]}


def test_fraction_strings_lowest_terms():
    assert fraction_str(Fraction(4, 8)) == "1/2"
    assert fraction_str(3) == "3/1"
    with pytest.raises(TypeError):
        jsonable(0.5)


def _complex_doc(vertices, color="a"):
    return json.dumps({
        "format_version": 1,
        "kind": "complex",
        "payload": {"classes": [[0], [0]], "k": 2, "visible": [{"vertices": vertices, "color": color}]},
    }, indent=2)


def test_two_vertices_in_one_class_rejected():
    with pytest.raises(SchemaError, match="two vertices in one class"):
        parse_document(_complex_doc([[0, 0], [0, 0]]))


def test_dangling_vertex_reports_position():
    text = _complex_doc([[0, 0], [1, 7]])
    with pytest.raises(DanglingReference) as info:
        parse_document(text)
    assert info.value.path == ("payload", "visible", 0, "vertices", 1)
    offset = sum(len(l) + 1 for l in text.splitlines()[: info.value.line - 1]) + info.value.column - 1
    assert json.JSONDecoder().raw_decode(text, offset)[0] == [1, 7]


def test_dangling_color_in_hypergraph():
    doc = json.loads(serialize_document(document_for(rand_ambient(1, sizes=(2, 2)))))
    doc["payload"]["edges"][0]["color"] = 99
    with pytest.raises(DanglingReference, match="not in the palette"):
        parse_document(json.dumps(doc))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('{"format_version": 1, "kind": "coloring", "payload": {"n": 2, "k": 2, "b": 1.5, "colors": [0]}}', "non-integer"),
        ('{"format_version": 1, "kind": "coloring", "kind": "coloring", "payload": {}}', "duplicate"),
        ('{"format_version": 2, "kind": "coloring", "payload": {}}', "1 was expected"),
        ('{"format_version": 1, "kind": "mystery", "payload": {}}', "is not one of"),
        ('{"format_version": 1, "kind": "coloring", "payload": {"n": 3, "k": 2, "b": 2, "colors": [0, 1]}}', "expected 3"),
        ("{not json", "line 1"),
    ],
)
def test_schema_errors(text, fragment):
    with pytest.raises(SchemaError, match=fragment):
        parse_document(text)


def test_schema_error_line_and_column():
    text = '{\n  "format_version": 1,\n  "kind": "uniform",\n  "payload": {"n": "five", "k": 2, "edges": []}\n}'
    with pytest.raises(SchemaError) as info:
        parse_document(text)
    assert info.value.line == 4
    assert text.splitlines()[3][info.value.column - 1:].startswith('"five"')


def test_missing_palette_is_dangling():
    doc = {
        "format_version": 1,
        "kind": "hypergraph",
        "payload": {
            "classes": [[0], [0]],
            "k": 2,
            "palettes": [{"index": [0], "colors": ["a"]}, {"index": [1], "colors": ["b"]}],
            "edges": [{"vertices": [[0, 0], [1, 0]], "color": "p"}],
        },
    }
    with pytest.raises(DanglingReference, match="no palette"):
        parse_document(json.dumps(doc))
