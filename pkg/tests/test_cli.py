import json
import subprocess
import sys

import jsonschema
import pytest

from omnilie import catalog
from omnilie.cli import main
from omnilie.commands import Flags, run_command
from omnilie.lie import LieStruct
from omnilie.modelfile import load_model, model_from_lie, serialize_model
from omnilie.report import REPORT_SCHEMA


def write(tmp_path, m, name="m.json"):
    p = tmp_path / name
    p.write_text(serialize_model(m), encoding="utf-8")
    return str(p)


@pytest.mark.parametrize("name", list(catalog.ENTRIES))
def test_every_catalog_entry_passes_its_command(name, tmp_path):
    e = catalog.ENTRIES[name]
    assert main([e.command, "--model", write(tmp_path, e.build())]) == 0


def test_check_dirac_on_aff1_lift(tmp_path, capsys):
    assert main(["check-dirac", "--model", write(tmp_path, catalog.get("aff1-lift"))]) == 0
    assert capsys.readouterr().out.startswith("check-dirac: PASS")


def test_failing_check_exits_one_with_witness(tmp_path, capsys):
    bad = LieStruct.from_brackets(3, {(0, 1): [0, 0, 1], (1, 2): [0, 1, 0]})
    path = write(tmp_path, model_from_lie(bad, 3, "adjoint"))
    assert main(["check-lie", "--model", path, "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    jac = data["checks"][0]
    assert jac["name"] == "jacobi" and not jac["passed"] and len(jac["witness"]["triple"]) == 3


@pytest.mark.parametrize("argv", [
    ["check-lie"],
    ["bialgebra", "--model", "@aff1"],
    ["check-lie", "--model", "/nonexistent/file.json"],
    ["verify-axioms", "--count", "-1"],
    ["catalog", "--name", "no-such-entry"],
    ["check-lie", "--model", "@garbage"],
])
def test_input_errors_exit_two(argv, tmp_path, capsys):
    argv = list(argv)
    for i, a in enumerate(argv):
        if a == "@aff1":
            argv[i] = write(tmp_path, catalog.get("aff1"))
        elif a == "@garbage":
            p = tmp_path / "g.json"
            p.write_text('{"schema": "omnilie/1", "header": {"d": 0, "r": 2, "coefficients": "rational"}, '
                         '"payload": {"kind": "lie", "lie": {"n": 2, "structure": [[["0", "1/0"]]]}}}')
            argv[i] = str(p)
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("omnilie: error:")


def test_lift_then_reduce_round_trip(tmp_path):
    src = write(tmp_path, catalog.get("anchor-d1r1"))
    lifted, reduced = str(tmp_path / "lift.json"), str(tmp_path / "reduce.json")
    assert main(["lift", "--model", src, "--emit", lifted]) == 0
    assert load_model(lifted).kind == "dirac"
    assert main(["reduce", "--model", lifted, "--emit", reduced]) == 0
    assert load_model(reduced).payload == catalog.get("anchor-d1r1").payload


def test_point_lift_then_reduce(tmp_path):
    src = write(tmp_path, catalog.get("sl2"))
    lifted, reduced = str(tmp_path / "lift.json"), str(tmp_path / "reduce.json")
    assert main(["lift", "--model", src, "--emit", lifted]) == 0
    assert main(["reduce", "--model", lifted, "--emit", reduced]) == 0
    assert load_model(reduced).build()["lie"] == catalog.sl2()


def test_emit_without_model_output_is_an_input_error(tmp_path):
    assert main(["check-lie", "--model", write(tmp_path, catalog.get("aff1")),
                 "--emit", str(tmp_path / "x.json")]) == 2


def test_json_report_schema_and_out_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["graph-lambda", "--count", "3", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["payload"] == {"coboundary": 3, "random": 0}
    assert data["params"] == {"count": 3, "d": 2, "deg": 2, "r": 2}


def test_cohomology_payload():
    rep = run_command("cohomology", catalog.get("abelian-n2"))
    assert rep.ok and rep.payload == {"h0": 2, "h1": 4, "h2": 2, "h3": 0}


def test_normalizer_and_derivations_commands():
    for name in ("aff1-lift", "sl2-lift", "line-in-plane-lift"):
        m = catalog.get(name)
        assert run_command("normalizer", m, Flags(count=20)).ok
        assert run_command("derivations", m).ok
    assert run_command("derivations", catalog.get("full-flat-semidirect")).ok
    assert run_command("normalizer", catalog.get("anchor-d1r1"), Flags(count=2)).ok


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "omnilie.cli", *args], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_reports_are_byte_identical_across_processes():
    args = ("verify-axioms", "--seed", "7", "--count", "5", "--format", "json")
    a, b = run_cli(*args), run_cli(*args)
    assert a == b and a[0] == 0
    c = run_cli("catalog", "--format", "json")
    assert c == run_cli("catalog", "--format", "json") and c[0] == 0
