from __future__ import annotations

import json

import pytest
from hypothesis import given
from strategies import antimatroids

from extorder.antimatroid import Antimatroid, SetFamily
from extorder.cli import main, run
from extorder.corpus import fig1, fixture_text, jdb_lattice
from extorder.errors import ValidationError
from extorder.external_order import build
from extorder.lattice import lattice_from_antimatroid
from extorder.matroid import Matroid, uniform_matroid
from extorder.wire import export_dot, export_json, export_spec, parse_spec

FIG1 = '{"kind":"linear","field":2,"matrix":[[1,1,0,1],[0,1,1,0]]}'


def test_parse_examples():
    m = parse_spec(FIG1).obj
    assert isinstance(m, Matroid) and m.same_independence(fig1())
    assert parse_spec('{"kind":"uniform","r":2,"n":4}').obj.same_independence(uniform_matroid(2, 4))
    s = parse_spec(fixture_text("u24ce"))
    assert s.letters and isinstance(s.obj, Antimatroid) and len(s.obj) == 11


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        '{"kind":"torus"}',
        '{"kind":"linear","matrix":[[1,0],[1]]}',
        '{"kind":"uniform","r":3,"n":2}',
        '{"kind":"antimatroid","ground":2,"feasible":[[],[3]]}',
        '{"kind":"antimatroid","ground":2,"feasible":[[],[1],[2]]}',
        '{"kind":"uniform","r":1,"n":2,"order":[1,1]}',
        '{"kind":"bases","n":3,"bases":[[1,2],[3]]}',
    ],
)
def test_parse_rejects(doc):
    with pytest.raises(ValidationError):
        parse_spec(doc)


def test_order_field():
    m = parse_spec('{"kind":"uniform","r":1,"n":2,"order":[2,1]}').obj
    assert m.order.permutation == (1, 0)


def test_export_json():
    assert export_json(build(fig1()).antimatroid) == "[[], [3], [4], [2, 3], [2, 4], [3, 4], [1, 2, 4], [1, 3, 4], [2, 3, 4], [1, 2, 3, 4]]"
    assert export_json(SetFamily(0, [0])) == "[[]]"


@pytest.mark.parametrize("name", ["u24ce", "jdb", "jdb_lattice"])
def test_fixture_roundtrip(name):
    text = fixture_text(name)
    s = parse_spec(text)
    assert export_spec(s.obj, s.letters) == text


@given(antimatroids())
def test_export_spec_roundtrip(f):
    g = parse_spec(export_spec(f)).obj
    assert g == f and g.ground == f.ground


def test_export_dot():
    dot = export_dot(build(fig1()).lattice)
    assert dot.count("->") == 14 and dot.count("[label=") == 10 + 14
    one = export_dot(lattice_from_antimatroid(Antimatroid(0, [0])))
    assert one.count("->") == 0 and "n0" in one
    assert export_dot(jdb_lattice()).count("->") == 17


def test_cli_ext_order(tmp_path):
    status, out = run("ext-order", FIG1, ["--dot", str(tmp_path / "g.dot")])
    doc = json.loads(out)
    assert status == 0 and len(doc["nodes"]) == 10 and len(doc["edges"]) == 14
    assert doc["minimum"] == [3, 4] and doc["maximum"] == []
    assert (tmp_path / "g.dot").read_text().count("->") == 14


def test_cli_classify_and_tutte():
    status, out = run("classify", fixture_text("u24ce"))
    assert status == 0 and json.loads(out)["classification"] == "MJD-not-EO"
    status, out = run("tutte", FIG1)
    doc = json.loads(out)
    assert status == 0 and doc["agree"]
    assert {(i, j): c for i, j, c in doc["activity"]} == {(2, 0): 1, (1, 1): 1, (0, 2): 1, (1, 0): 1, (0, 1): 1}


def test_cli_other_commands():
    assert run("partition", FIG1)[0] == 0
    status, out = run("minor", FIG1, ["--delete", "1", "--greedoid"])
    assert status == 0 and len(parse_spec(out).obj) == 7
    status, out = run("circuits", FIG1)
    assert status == 0 and {"set": [2, 3, 4], "root": 2} in json.loads(out)
    status, out = run("check", fixture_text("jdb_lattice"))
    assert status == 0 and "FAIL" not in out


def test_cli_errors(tmp_path, capsys):
    assert run("tutte", fixture_text("u24ce"))[0] == 1
    assert run("minor", FIG1, ["--delete", "1", "--contract", "1"])[0] == 1
    spec = tmp_path / "bad.json"
    spec.write_text("{")
    assert main(["classify", str(spec)]) == 1
    assert main(["classify", str(tmp_path / "missing.json")]) == 1
    assert "error" in capsys.readouterr().err
