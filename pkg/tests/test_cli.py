"""End-to-end command-line checks: every subcommand is exercised in process
through main(), reports are parsed back from stdout and validated against
the JSON schemas, and the exit-code contract is pinned."""

import argparse
import io
import json
from pathlib import Path

import jsonschema
import pytest

import polyloj.cli as cli
from polyloj.cli import GRAMMAR, main

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"

G31 = "(x1^2 - 1)^2 + (x1*x2 - 1)^2"
H31 = "(x1^2 - 1)^2 + (x2^2 - 1)^2"
G32 = "x1^2 + x2^4"
H32 = "x1^2 + x2^2"


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_report(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def load_schema(name):
    with open(SCHEMA_DIR / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


def test_polyhedron_report(capsys):
    report = run_report(["polyhedron", "--text", G31, "--n", "2"], capsys)
    assert report["command"] == "polyhedron"
    assert report["schema"] == "polyloj/polyhedron/v1"
    assert report["tool"] == {"name": "polyloj", "version": "0.1.0"}
    assert report["inputs"][0]["name"] == "f1"
    result = report["result"]
    assert sorted(tuple(v) for v in result["polyhedron"]["vertices"]) == [
        (0, 0),
        (2, 2),
        (4, 0),
    ]
    assert result["convenient"] is False
    assert result["missing_axes"] == [2]
    jsonschema.validate(report, load_schema("report.v1.schema.json"))
    jsonschema.validate(result, load_schema("polyhedron.v1.schema.json"))


def test_convenient_report(capsys):
    report = run_report(["convenient", "--text", H31, "--n", "2"], capsys)
    assert report["result"] == {"convenient": True, "missing_axes": []}


def test_faces_report(capsys):
    report = run_report(["faces", "--text", "x1 + x2", "--n", "2"], capsys)
    faces = report["result"]["faces"]
    # a segment: the whole edge plus its two endpoints
    assert len(faces) == 3
    dims = sorted(face["dim"] for face in faces)
    assert dims == [0, 0, 1]


def test_check_nondegenerate_exact(capsys):
    report = run_report(
        ["check-nondegenerate", "--text", G32, "--text", H32, "--n", "2",
         "--mode", "exact"],
        capsys,
    )
    result = report["result"]
    assert result["verdict"] == "NonDegenerate"
    assert result["mode"] == "Exact2D"
    jsonschema.validate(result, load_schema("nondegeneracy.v1.schema.json"))


def test_check_nondegenerate_degenerate_witness(capsys):
    report = run_report(
        ["check-nondegenerate", "--text", "(x1 - x2)^2", "--n", "2"], capsys
    )
    assert report["result"]["verdict"] == "Degenerate"


def test_fit_exponents_report(capsys):
    report = run_report(
        ["fit-exponents", "--text", G32, "--text", H32, "--n", "2",
         "--budget", "12"],
        capsys,
    )
    result = report["result"]
    assert abs(result["alpha"] - 0.5) < 0.05
    assert abs(result["beta"] - 1.0) < 0.1
    jsonschema.validate(result, load_schema("fit.v1.schema.json"))


def test_genericity_report_with_pinned_coefficients(capsys):
    report = run_report(
        ["genericity", "--supports", "[[[2,0],[1,1],[0,2]]]",
         "--coeffs", "[[1,-2,1]]", "--trials", "1"],
        capsys,
    )
    result = report["result"]
    assert result["trials"] == 1
    assert result["degenerate"] == 1
    assert result["degenerate_instances"] == [[["1", "-2", "1"]]]
    jsonschema.validate(result, load_schema("genericity.v1.schema.json"))


def test_complete_basis_report(capsys):
    report = run_report(
        ["complete-basis", "--q-list", "[[1,1]]",
         "--support", "[[1,0],[0,1]]"],
        capsys,
    )
    result = report["result"]
    assert result["basis"]["rows"] == [[1, 1], [1, 0]]
    assert result["det"] == "-1"
    assert report["inputs"][0]["name"] == "q_list"


def test_complete_basis_support_from_text(capsys):
    report = run_report(
        ["complete-basis", "--q-list", "[[1,1]]", "--text", "x1*x2 + x1",
         "--n", "2"],
        capsys,
    )
    from polyloj.reports import input_hash

    # the support is the sorted union of the exponents appearing in the text
    assert report["inputs"][1]["name"] == "support"
    assert report["inputs"][1]["sha256"] == input_hash("[[1, 0], [1, 1]]")


def test_stdout_is_deterministic(capsys):
    argv = ["check-nondegenerate", "--text", G31, "--text", H31, "--n", "2",
            "--seed", "3"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        ["polyhedron", "--text", G32, "--n", "2", "--out", str(target)], capsys
    )
    assert code == 0
    assert out == ""
    on_disk = target.read_text(encoding="utf-8")
    _, stdout_copy, _ = run(["polyhedron", "--text", G32, "--n", "2"], capsys)
    assert on_disk == stdout_copy


def test_json_file_input(tmp_path, capsys):
    from polyloj.polynomials import PolynomialMapping, parse_polynomial

    F = PolynomialMapping((parse_polynomial(G32, 2), parse_polynomial(H32, 2)))
    source = tmp_path / "pair.json"
    source.write_text(json.dumps(F.to_json()), encoding="utf-8")
    report = run_report(
        ["check-nondegenerate", "--json", str(source), "--mode", "exact"], capsys
    )
    from polyloj.reports import input_hash

    assert report["result"]["verdict"] == "NonDegenerate"
    assert report["inputs"][1] == {"name": "f2", "sha256": input_hash(H32)}


def test_json_stdin_input(monkeypatch, capsys):
    from polyloj.polynomials import parse_polynomial

    payload = json.dumps(parse_polynomial("x1^2 + x2^2", 2).to_json())
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    report = run_report(["convenient", "--json", "-"], capsys)
    assert report["result"]["convenient"] is True


def test_wrong_component_count_is_usage_error(capsys):
    code, out, err = run(
        ["fit-exponents", "--text", G32, "--n", "2"], capsys
    )
    assert code == 1
    assert out == ""
    assert "expects exactly 2 polynomial component(s), got 1" in err
    assert GRAMMAR in err


def test_parse_error_is_usage_error(capsys):
    code, _, err = run(["polyhedron", "--text", "x1^^2", "--n", "1"], capsys)
    assert code == 1
    assert err.startswith("usage error:")


def test_missing_input_is_usage_error(capsys):
    code, _, err = run(["polyhedron"], capsys)
    assert code == 1
    assert "--text or --json" in err


def test_text_without_n_is_usage_error(capsys):
    code, _, err = run(["polyhedron", "--text", "x1 + x2"], capsys)
    assert code == 1
    assert "--n is required" in err


def test_constraint_without_level_is_usage_error(capsys):
    code, _, err = run(
        ["ktilde-probe", "--text", G32, "--n", "2", "--constraint", H32], capsys
    )
    assert code == 1
    assert "--constraint and --level" in err


def test_missing_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 1
    assert GRAMMAR in capsys.readouterr().err


def test_unknown_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["polyhedron", "--bogus"])
    assert excinfo.value.code == 1


def test_internal_failure_exits_two(monkeypatch, capsys):
    def explode(_gamma):
        raise RuntimeError("probe exploded")

    monkeypatch.setattr(cli, "newton_polyhedron", explode)
    code, out, err = run(["polyhedron", "--text", "x1", "--n", "1"], capsys)
    assert code == 2
    assert out == ""
    assert "RuntimeError: probe exploded" in err


SMOKE_CASES = [
    ("polyhedron", ["polyhedron", "--text", G32, "--n", "2"]),
    ("convenient", ["convenient", "--text", G32, "--n", "2"]),
    ("faces", ["faces", "--text", G32, "--n", "2"]),
    (
        "check-nondegenerate",
        ["check-nondegenerate", "--text", G32, "--text", H32, "--n", "2"],
    ),
    ("reduce", ["reduce", "--text", "x1^2*x2^2 + x1*x2", "--n", "2"]),
    (
        "complete-basis",
        ["complete-basis", "--q-list", "[[1,1]]", "--support", "[[1,0],[0,1]]"],
    ),
    (
        "fit-exponents",
        ["fit-exponents", "--text", G32, "--text", H32, "--n", "2",
         "--budget", "12"],
    ),
    (
        "verify-inequality",
        ["verify-inequality", "--text", G32, "--text", H32, "--n", "2",
         "--alpha", "0.5", "--beta", "1.0", "--c", "1.0", "--samples", "2000"],
    ),
    (
        "hunt-sequence",
        ["hunt-sequence", "--text", G31, "--text", H31, "--n", "2",
         "--kind", "second"],
    ),
    (
        "ktilde-probe",
        ["ktilde-probe", "--text", "(x1*x2 - 1)^2", "--n", "2",
         "--radii", "10,100", "--budget", "8"],
    ),
    (
        "multiplier",
        ["multiplier", "--text", G32, "--text", H32, "--n", "2",
         "--alpha", "0.5", "--samples", "2000"],
    ),
    (
        "genericity",
        ["genericity", "--supports", "[[[2,0],[0,4]],[[2,0],[0,2]]]",
         "--trials", "5"],
    ),
    ("reproduce-example31", ["reproduce-example31"]),
    ("reproduce-example32", ["reproduce-example32", "--budget", "16"]),
]


@pytest.mark.parametrize("command,argv", SMOKE_CASES, ids=[c for c, _ in SMOKE_CASES])
def test_subcommand_smoke(command, argv, capsys):
    report = run_report(argv, capsys)
    assert report["command"] == command
    assert report["schema"] == f"polyloj/{command}/v1"
    jsonschema.validate(report, load_schema("report.v1.schema.json"))


def test_smoke_covers_every_subcommand():
    parser = cli.build_parser()
    sub = next(
        a for a in parser._actions if isinstance(a, argparse._SubParsersAction)
    )
    assert sorted(sub.choices) == sorted(c for c, _ in SMOKE_CASES)


def test_reproduce_example32_claims_all_hold(capsys):
    report = run_report(["reproduce-example32", "--budget", "16"], capsys)
    claims = report["result"]["claims"]
    assert claims == {
        "g_convenient": True,
        "pair_nondegenerate": True,
        "alpha_near_half": True,
        "beta_near_one": True,
        "inequality_half_one_one_holds": True,
        "multiplier_is_six": True,
        "factor_bounded_by_ten": True,
    }
    jsonschema.validate(
        report["result"], load_schema("reproduce32.v1.schema.json")
    )
