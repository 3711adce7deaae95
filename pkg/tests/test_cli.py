import csv
import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from cl3spacetime import algebra as ga
from cl3spacetime.checks import DEFAULT_TOLERANCES, SUITES, run_suites
from cl3spacetime.cli import RunConfig, UsageError, load_config, run

FIELD_ARG = '{"E":[0,1,0],"B":[0,0,0]}'


def schema(name):
    text = resources.files("cl3spacetime").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schemas_are_valid_documents():
    for name in ("multivector", "event", "field", "boost", "rotate", "compton", "wavepacket_fit", "check"):
        jsonschema.Draft202012Validator.check_schema(schema(name))


def test_boost_field_example(capsys):
    code, out, _ = call(capsys, "boost", "--speed", "0.6", "--axis", "1,0,0", "--field", FIELD_ARG)
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("boost"))
    assert report["output"]["field"]["E"][1] == pytest.approx(1.25, abs=1e-15)
    assert report["output"]["field"]["B"][2] == pytest.approx(-0.75, abs=1e-15)
    jsonschema.validate(report["output"]["field"], schema("field"))


def test_boost_event_scalar_and_vector_time(capsys, tmp_path):
    code, out, _ = call(capsys, "boost", "--phi", str(math.log(2)), "--axis", "2,0,0",
                        "--event", '{"x":[1,1,0],"t":0.5}')
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("boost"))
    jsonschema.validate(report["output"]["event"], schema("event"))
    np.testing.assert_allclose(report["output"]["event"]["x"], [0.875, 1, 0], atol=1e-15)
    path = tmp_path / "event.json"
    path.write_text(json.dumps(report["input"]["event"]))
    code, out2, _ = call(capsys, "boost", "--phi", str(math.log(2)), "--axis", "1,0,0", "--event", f"@{path}")
    assert code == 0
    assert json.loads(out2)["output"] == report["output"]


def test_boost_csv_round_trips_through_multivector(capsys):
    code, out, _ = call(capsys, "boost", "--speed", "0.6", "--axis", "1,0,0", "--field", FIELD_ARG, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["s", "e1", "e2", "e3", "e23", "e31", "e12", "e123"]
    M = ga.Multivector.from_csv_row(rows[1])
    assert M.isclose(ga.Multivector(v=(0, 1.25, 0), b=(0, 0, -0.75)), 1e-15)


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["boost", "--speed", "1.2", "--axis", "1,0,0", "--field", FIELD_ARG], "--speed"),
        (["boost", "--speed", "0.5", "--axis", "1,0", "--field", FIELD_ARG], "--axis"),
        (["boost", "--speed", "0.5", "--axis", "0,0,0", "--field", FIELD_ARG], "--axis"),
        (["boost", "--speed", "0.5", "--axis", "1,0,0", "--field", "{bad"], "--field"),
        (["boost", "--speed", "0.5", "--axis", "1,0,0", "--field", '{"E":[1,2]}'], "'E'"),
        (["boost", "--speed", "0.5", "--axis", "1,0,0", "--event", '{"x":[1,0,0],"t":[0,1,0]}'], "parallel"),
        (["boost", "--speed", "0.5", "--axis", "1,0,0", "--event", '{"x":[1,1,0],"t":[1,-1,1]}'], "aligned_event"),
        (["boost", "--speed", "0.5", "--axis", "1,0,0", "--event", "@/nonexistent.json"], "--event"),
        (["rotate", "--vector", "1,x,0", "--theta", "1", "--axis", "0,0,1"], "--vector"),
        (["compton", "--lambda-i", "-1", "--theta", "1"], "lambda_i"),
        (["compton", "--lambda-i", "1"], "--theta"),
        (["wavepacket", "--sigma", "1", "--k0", "10", "--format", "json"], "--format"),
        (["wavepacket", "--sigma", "1", "--k0", "10", "--x-range", "3,1"], "--x-range"),
        (["check", "--tolerance", "nope=1"], "nope"),
        (["check", "--tolerance", "kg.convergence_ratio"], "--tolerance"),
    ],
)
def test_usage_errors_exit_2_and_name_field(capsys, argv, fragment):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_argparse_errors_exit_2(capsys):
    assert call(capsys, "boost", "--speed", "0.5", "--phi", "1", "--axis", "1,0,0", "--field", FIELD_ARG)[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "check", "--suite", "nope")[0] == 2
    assert call(capsys, "--help")[0] == 0


def test_rotate(capsys):
    code, out, _ = call(capsys, "rotate", "--vector", "1,0,0", "--theta", "90", "--deg", "--axis", "0,0,5")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("rotate"))
    np.testing.assert_allclose(report["result"], [0, 1, 0], atol=1e-15)
    assert report["axis"] == [0.0, 0.0, 1.0]


def test_compton_example(capsys):
    code, out, _ = call(capsys, "compton", "--lambda-i", "1", "--theta", "3.14159265", "--m", "1", "--units", "natural")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("compton"))
    assert report["shift"] == pytest.approx(2 * report["h"] / (report["m"] * report["c"]), rel=1e-12)
    assert report["shift"] == pytest.approx(report["shift_formula"], rel=1e-12)


def test_compton_si_defaults_to_electron(capsys, monkeypatch):
    monkeypatch.setenv("CL3ST_UNITS", "si")
    code, out, _ = call(capsys, "compton", "--lambda-i", "1e-12", "--theta", "90", "--deg")
    assert code == 0
    report = json.loads(out)
    assert report["units"] == "si"
    assert report["shift"] == pytest.approx(2.42631023538e-12, rel=1e-9)
    monkeypatch.setenv("CL3ST_UNITS", "imperial")
    assert call(capsys, "compton", "--lambda-i", "1", "--theta", "1")[0] == 2


def test_compton_sweep_csv(capsys):
    code, out, _ = call(capsys, "compton", "--lambda-i", "1", "--sweep", "4", "--deg")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["theta"]) for r in rows] == pytest.approx([45, 90, 135, 180])
    for r in rows:
        assert float(r["shift"]) == pytest.approx(float(r["shift_formula"]), rel=1e-12)


def test_wavepacket_csv(capsys):
    code, out, _ = call(capsys, "wavepacket", "--sigma", "1", "--k0", "10", "--t", "0.5", "--samples", "11",
                        "--x-range", "3,7")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["x", "re", "im", "modulus", "analytic_modulus"]
    assert len(rows) == 11
    for r in rows:
        assert float(r["modulus"]) == pytest.approx(float(r["analytic_modulus"]), rel=1e-8)
        assert math.hypot(float(r["re"]), float(r["im"])) == pytest.approx(float(r["modulus"]))


def test_wavepacket_fit(capsys):
    code, out, _ = call(capsys, "wavepacket", "--sigma", "1", "--k0", "10", "--t", "1", "--fit")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("wavepacket_fit"))
    assert report["spread_fit"] == pytest.approx(report["spread_formula"], rel=1e-3)
    assert report["phase_rate_fit"] == pytest.approx(report["w0"], rel=1e-2)
    assert report["w0"] == 50.0


def test_check_report(capsys):
    code, out, _ = call(capsys, "check", "--suite", "all", "--seed", "42")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("check"))
    assert report["pass"] is True
    assert {r["check_name"] for r in report["results"]} == set(DEFAULT_TOLERANCES)


def test_check_failure_exit_1(capsys):
    code, out, _ = call(capsys, "check", "--suite", "kg", "--tolerance", "kg.convergence_ratio=0")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_check_csv(capsys):
    code, out, _ = call(capsys, "check", "--suite", "dirac", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["check_name"] for r in rows] == ["dirac.factorization", "dirac.chaining", "dirac.current"]
    assert all(r["pass"] == "true" for r in rows)


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nunits = natural\nformat = csv\nseed = 7\ntolerance.dirac.current = 0  # strict\n")
    loaded = load_config(cfg)
    assert loaded == {"units": "natural", "format": "csv", "seed": 7, "tolerances": {"dirac.current": 0.0}}
    code, out, _ = call(capsys, "check", "--suite", "dirac", "--config", str(cfg))
    assert code == 1
    assert "dirac.current" in out
    # Command-line flags win over the file.
    code, out, _ = call(capsys, "check", "--suite", "dirac", "--config", str(cfg), "--format", "json",
                        "--tolerance", "dirac.current=1e-12")
    assert code == 0
    assert json.loads(out)["seed"] == 7


@pytest.mark.parametrize(
    "text, fragment",
    [("colour = blue\n", "colour"), ("seed = many\n", "seed"), ("tolerance.nope = 1\n", "nope"),
     ("units\n", "key = value"), ("units = imperial\n", "units"), ("tolerance.kg.convergence_ratio = -1\n", "kg")],
)
def test_bad_config_exit_2(capsys, tmp_path, text, fragment):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, err = call(capsys, "check", "--suite", "kg", "--config", str(cfg))
    assert code == 2
    assert fragment in err


def test_run_config_validation():
    assert RunConfig().seed == 42
    assert RunConfig(units="si").c == 299792458.0
    with pytest.raises(UsageError):
        RunConfig(format="xml")
    with pytest.raises(UsageError):
        RunConfig(tolerances={"unknown": 1.0})


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = call(capsys, "rotate", "--vector", "0,1,0", "--theta", "1", "--axis", "1,0,0", "-o", str(path))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(path.read_text()), schema("rotate"))


def test_run_suites_is_seed_deterministic_per_suite():
    one = run_suites(["lorentz"], 5)
    both = run_suites(["algebra", "lorentz"], 5)
    assert [r.to_dict() for r in one] == [r.to_dict() for r in both if r.check_name.startswith("lorentz")]
    assert set(SUITES) >= {"algebra", "lorentz", "compton", "schrodinger"}


def test_module_entry_point_is_byte_identical():
    argv = [sys.executable, "-m", "cl3spacetime", "check", "--suite", "all", "--seed", "42"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["pass"] is True
