import json
import math
import subprocess
import sys

import numpy as np
import pytest

from formelastic.errors import ConfigError, UnknownSuite
from formelastic.harness.cli import main
from formelastic.harness.report import SCHEMA, Recorder
from formelastic.harness.suites import INVARIANTS, SUITES, SuiteConfig, run_suite

SMALL = dict(points=4, fields=6, traction_fields=5, moduli=2, geometry_points=10, lame_points=8)


@pytest.fixture(scope="module")
def small_all():
    return run_suite("all", SuiteConfig(**SMALL))


def test_every_invariant_is_executed(small_all):
    checks = {r.check for r in small_all.records}
    missing = {name: [c for c in ids if c not in checks] for name, ids in INVARIANTS.items()}
    assert not {k: v for k, v in missing.items() if v}


def test_every_suite_contributes(small_all):
    prefixes = {r.check.split(".")[0] for r in small_all.records}
    assert prefixes == {"jets", "geometry", "structural", "bridge", "strain", "cn", "traction", "killing", "cross",
                        "lame"}


def test_small_run_passes(small_all):
    assert small_all.passed, [r for r in small_all.records if not r.passed]


def test_records_sorted_and_unique(small_all):
    keys = [(r.check, r.chart) for r in small_all.records]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_determinism():
    a = run_suite("cn_equiv", SuiteConfig(seed=7, **SMALL)).to_json()
    b = run_suite("cn_equiv", SuiteConfig(seed=7, **SMALL)).to_json()
    c = run_suite("cn_equiv", SuiteConfig(seed=8, **SMALL)).to_json()
    assert a == b and a != c


def test_suite_independent_of_others(small_all):
    alone = run_suite("bridge", SuiteConfig(**SMALL))
    together = [r for r in small_all.records if r.check.startswith("bridge.")]
    assert [r.as_dict() for r in alone.records] == [r.as_dict() for r in together]


def test_killing_counts():
    rep = run_suite("killing")
    assert rep.passed
    rec = next(r for r in rep.records if r.check == "killing.stress" and r.chart == "spherical")
    assert rec.samples == 6 * 20


def test_strain_counts():
    rep = run_suite("strain_equiv", SuiteConfig(seed=42))
    rec = [r for r in rep.records if r.check == "strain.lie_vs_covariant"]
    assert sorted(r.chart for r in rec) == ["cartesian", "cylindrical", "spherical"]
    assert all(r.samples == 100 * 20 and r.max_rel_error <= 1e-10 for r in rec)


def test_tightened_tolerance_fails_honestly():
    rep = run_suite("bridge", SuiteConfig(tol_rel=1e-30, **SMALL))
    assert not rep.passed
    assert all(r.max_rel_error > 1e-30 for r in rep.records if not r.passed)


def test_errors():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
    with pytest.raises(ConfigError):
        SuiteConfig(points=0)
    with pytest.raises(ConfigError):
        SuiteConfig(charts=("toroidal",))
    with pytest.raises(ConfigError):
        SuiteConfig(tol_rel=-1.0)


def test_extra_chart_is_supported():
    rep = run_suite("cn_equiv", SuiteConfig(charts=("sheared",), **SMALL))
    assert rep.passed and {r.chart for r in rep.records} == {"sheared"}


def test_recorder_merges_worst_case():
    rec = Recorder("t")
    pts = np.zeros((2, 3))
    rec.compare("c", "x", np.array([[1.0], [1.0]]), np.array([[1.0], [1.1]]), tol=0.2, points=pts)
    rec.compare("c", "x", np.array([[1.0], [2.0]]), np.array([[1.0], [1.0]]), tol=0.2, points=pts)
    (r,) = rec.records
    assert r.max_rel_error == pytest.approx(0.5) and not r.passed and r.samples == 4


def test_recorder_nan_is_failure():
    rec = Recorder("t")
    r = rec.compare("c", "x", np.array([[np.nan]]), np.array([[1.0]]), tol=1.0, points=np.zeros((1, 3)))
    assert not r.passed and math.isnan(r.max_abs_error)


def test_report_json_schema(small_all):
    doc = json.loads(small_all.to_json())
    assert list(doc) == ["schema", "tool", "version", "suite", "seed", "config", "summary", "records"]
    assert doc["schema"] == SCHEMA
    rec = doc["records"][0]
    assert set(rec) == {"check", "chart", "field", "point", "max_abs_error", "max_rel_error", "tolerance",
                        "tolerance_kind", "samples", "passed"}
    assert "checks passed" in small_all.format_table()


# --- command line -----------------------------------------------------------


def test_cli_verify_report(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "strain_equiv", "--points", "3", "--fields", "4", "--chart", "spherical"]
    assert main(args + ["--report", str(a)]) == 0
    assert main(args + ["--report", str(b), "--quiet"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "PASS" in capsys.readouterr().out


def test_cli_failure_exit_code(tmp_path):
    assert main(["verify", "--suite", "bridge", "--points", "3", "--fields", "3", "--tol-rel", "1e-30",
                 "--quiet"]) == 1


@pytest.mark.parametrize("args", [
    ["verify", "--suite", "bogus"],
    ["verify", "--points", "0"],
    ["verify", "--chart", "toroidal"],
    ["verify", "--seed", "-3"],
    ["eval", "--op", "nope", "--at", "1,2,3"],
    ["eval", "--op", "metric", "--at", "1,2"],
    ["eval", "--op", "metric", "--chart", "cylindrical", "--at", "0,0.3,1"],
    ["eval", "--op", "strain", "--at", "1,2,3"],
    ["eval", "--op", "strain", "--at", "1,2,3", "--field", "/nonexistent/spec.json"],
    ["eval", "--op", "metric", "--at", "1,2,3", "--lambda", "1", "--mu", "0"],
    [],
])
def test_cli_usage_errors(args):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(args))
    assert exc.value.code == 2


def _write(tmp_path, spec):
    path = tmp_path / "field.json"
    path.write_text(json.dumps(spec))
    return str(path)


def test_cli_eval_strain_of_dilation(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "dilation", "params": {}, "chart": "cartesian"})
    assert main(["eval", "--op", "strain", "--field", f, "--chart", "cartesian", "--at", "0.3,-1,2"]) == 0
    out = capsys.readouterr().out
    assert "1.000000000000e+00" in out and "physical components" in out


def test_cli_eval_lame_traction(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "lame_sphere", "chart": "spherical",
                          "params": {"a": 1, "b": 2, "p_i": 2.5, "lambda": 1, "mu": 1}})
    assert main(["eval", "--op", "traction_adapted", "--field", f, "--chart", "spherical", "--at", "1,1.1,0.2"]) == 0
    out = capsys.readouterr().out.split("physical components:")[1]
    assert out.split()[:2] == ["dr", "-2.500000000000e+00"]


def test_cli_eval_christoffel(capsys):
    assert main(["eval", "--op", "christoffel", "--chart", "cylindrical", "--at", "2,0.3,1"]) == 0
    line = next(s for s in capsys.readouterr().out.splitlines() if "Gamma^r_theta,theta" in s)
    assert float(line.split()[-1]) == -2.0


def test_cli_eval_with_normal(tmp_path, capsys):
    f = _write(tmp_path, {"kind": "dilation", "params": {}, "chart": "cartesian"})
    assert main(["eval", "--op", "traction_form", "--field", f, "--at", "1,2,3", "--normal", "0,0,2",
                 "--lambda", "2", "--mu", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "7.000000000000e+00" in out  # (3 lambda + 2 mu) n


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "formelastic", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "formelastic" in out.stdout
