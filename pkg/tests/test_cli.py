import json

import pytest

from hyperramsey.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from hyperramsey.core import BlowupSpec, Complex, build_blowup
from hyperramsey.documents import parse_document, write_document
from hyperramsey.generate import full_pattern

from helpers import V, rand_ambient, single_color


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ramsey_triangle(capsys):
    code, out, _ = run(capsys, "ramsey", "--graph", "complete", "--order", "3")
    assert code == EXIT_OK and out == "R = 6\n"


def test_ramsey_json_and_budget(capsys):
    code, out, _ = run(capsys, "ramsey", "--graph", "path", "--order", "4", "--json")
    doc = parse_document(out)
    assert code == EXIT_OK and doc.kind == "report" and doc.payload["value"] == 5
    code, _, err = run(capsys, "ramsey", "--graph", "complete", "--order", "3", "--n-max", "4")
    assert code == EXIT_BUDGET and "bracket" in err


def test_usage_errors(capsys):
    assert run(capsys, "no-such-command")[0] == EXIT_USAGE
    assert run(capsys, "embed-prob", "--input", "/nonexistent.json", "--pattern", "x")[0] == EXIT_USAGE
    assert run(capsys, "verify-lemma", "--eta", "a,b")[0] == EXIT_USAGE


def test_schema_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "kind": "coloring", "payload": {"n": 1.5}}')
    code, _, err = run(capsys, "embed-prob", "--input", str(bad), "--pattern", str(bad))
    assert code == EXIT_USAGE and "line 1" in err


def test_embed_prob_and_density(capsys, tmp_path):
    G, S = rand_ambient(4), full_pattern(3, 2)
    write_document(tmp_path / "g.json", G)
    write_document(tmp_path / "s.json", S)
    code, out, _ = run(capsys, "embed-prob", "--input", str(tmp_path / "g.json"), "--pattern", str(tmp_path / "s.json"))
    assert code == EXIT_OK and "/" in out
    code, out, _ = run(capsys, "density", "--input", str(tmp_path / "g.json"), "--pattern", str(tmp_path / "s.json"), "--json")
    rep = parse_document(out).payload
    assert code == EXIT_OK and set(rep) == {"densities", "product", "probability", "discrepancy"}


def test_check_regular_and_subdivision(capsys, tmp_path):
    write_document(tmp_path / "one.json", single_color([2, 2], 2))
    write_document(tmp_path / "rand.json", rand_ambient(2, sizes=(2, 2), palettes=(1, 2)))
    assert run(capsys, "check-regular", "--input", str(tmp_path / "one.json"), "--h", "2")[0] == EXIT_OK
    assert run(capsys, "check-regular", "--input", str(tmp_path / "rand.json"), "--h", "2")[0] == EXIT_FAIL
    code = run(capsys, "check-regular", "--input", str(tmp_path / "rand.json"), "--h", "2", "--delta-value", "1", "--epsilon", "1", "--budget", "3")[0]
    assert code == EXIT_BUDGET
    code, out, _ = run(capsys, "check-subdivision", "--input", str(tmp_path / "rand.json"), "--coarse", str(tmp_path / "rand.json"))
    assert code == EXIT_OK and out == "subdivision: True\n"


def test_lemma_corollary_and_beta(capsys, tmp_path):
    S = full_pattern(3, 2)
    B = build_blowup(BlowupSpec(S, {V(0): 2}))
    write_document(tmp_path / "g.json", single_color([5, 5, 5], 2))
    write_document(tmp_path / "s.json", S)
    write_document(tmp_path / "b.json", B)
    common = ["--input", str(tmp_path / "g.json"), "--pattern", str(tmp_path / "s.json"),
              "--blowup", str(tmp_path / "b.json"), "--max-degree", "3", "--cap", "5",
              "--eta", "1/2,1/2", "--rho", "1/100,1/100"]
    code, out, _ = run(capsys, "verify-lemma", *common, "--vertex", "0,1")
    assert code == EXIT_OK and "lhs: 1/1" in out and "holds: True" in out
    code, out, _ = run(capsys, "verify-corollary", *common, "--json")
    rep = json.loads(out)["payload"]
    assert code == EXIT_OK and rep["probability"] == "4/5" and rep["witness"]
    write_document(tmp_path / "small.json", Complex.from_visible([1, 0, 0], 2, {(V(0),): 0}))
    code, out, _ = run(capsys, "beta-stats", "--input", str(tmp_path / "g.json"), "--base", str(tmp_path / "small.json"),
                       "--extended", str(tmp_path / "s.json"), "--max-degree", "2", "--eta", "1/2,1/2", "--rho", "1/100,1/100")
    assert code == EXIT_OK and "mean: 0/1" in out
    assert run(capsys, "verify-lemma", *common[:-4], "--vertex", "0,1")[0] == EXIT_USAGE


def test_pipeline_demo_and_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "pipeline-demo", "--json")
    rep = parse_document(out).payload
    assert code == EXIT_OK and rep["success"] and rep["verified"]
    assert run(capsys, "pipeline-demo", "--json")[1] == out
    out_path = tmp_path / "g.json"
    assert run(capsys, "gen", "--seed", "7", "--classes", "2,2", "--output", str(out_path))[0] == EXIT_OK
    first = out_path.read_text()
    run(capsys, "gen", "--seed", "7", "--classes", "2,2", "--output", str(out_path))
    assert out_path.read_text() == first and parse_document(first).kind == "hypergraph"


@pytest.mark.parametrize("samples", ["0", "4"])
def test_experiment_command(capsys, samples):
    code, out, _ = run(capsys, "experiment", "--samples", samples, "--eta", "1/2,1/2", "--json")
    rep = parse_document(out).payload
    assert code == EXIT_OK and rep["samples"] == int(samples)
    assert run(capsys, "experiment", "--samples", samples, "--eta", "1/2,1/2", "--json")[1] == out
