"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line with the observed worst error, the bound
and the runtime.  Run directly (``python tests/test_acceptance.py``) for the
lines alone; under pytest they are repeated in the terminal summary.
"""

import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from formelastic.harness.suites import SuiteConfig, run_suite

RESULTS = []


def _worst(records, checks, charts=None):
    sel = [r for r in records if r.check in checks and (charts is None or r.chart in charts)]
    assert {r.check for r in sel} == set(checks), f"missing checks: {set(checks) - {r.check for r in sel}}"
    return sel


def _error(r, kind):
    e = r.max_rel_error if kind == "rel" else r.max_abs_error
    return float("inf") if e is None else e


def _criterion(number, title, suite, checks, bound, kind, budget, charts=None, config=None):
    t0 = time.perf_counter()
    report = run_suite(suite, config or SuiteConfig())
    elapsed = time.perf_counter() - t0
    sel = _worst(report.records, checks, charts)
    worst = max(_error(r, kind) for r in sel)
    ok_err = worst <= bound
    ok_time = elapsed < budget
    line = (f"[{'PASS' if ok_err and ok_time else 'FAIL'}] criterion {number}: {title}: "
            f"worst {kind} error {worst:.2e} <= {bound:.0e} ({sum(r.samples for r in sel)} samples), "
            f"{elapsed:.2f} s < {budget:g} s")
    RESULTS.append(line)
    print(line)
    return ok_err, ok_time, line


def _check(result):
    ok_err, ok_time, line = result
    assert ok_err and ok_time, line


def test_criterion_1_bridge():
    _check(_criterion(1, "sharp d, *d*, sharp *d match classical grad, div, curl", "bridge",
                      {"bridge.grad", "bridge.div", "bridge.curl"}, 1e-9, "rel", 5.0))


def test_criterion_2_cauchy_navier():
    # form route = -(gradcurl route) = -flat(classical route): compared with the sign made explicit
    _check(_criterion(2, "three Cauchy-Navier residual routes agree pairwise (form = -classical)", "cn_equiv",
                      {"cn.form_vs_classical", "cn.gradcurl_vs_classical", "cn.form_vs_gradcurl"},
                      1e-9, "rel", 10.0))


def test_criterion_3_strain():
    _check(_criterion(3, "strain_lie equals strain_covariant", "strain_equiv", {"strain.lie_vs_covariant"},
                      1e-10, "rel", 5.0))


def test_criterion_4_traction():
    _check(_criterion(4, "traction routes agree on r = const surfaces", "traction_equiv",
                      {"traction.form_vs_cauchy", "traction.adapted_vs_cauchy", "traction.adapted_vs_form"},
                      1e-9, "rel", 5.0, charts={"cylindrical", "spherical"}))


def test_criterion_5_killing():
    checks = {"killing.strain_lie", "killing.strain_covariant", "killing.stress", "killing.volume_expansion",
              "killing.traction_cauchy", "killing.traction_form", "killing.traction_adapted", "killing.cn_form",
              "killing.cn_gradcurl", "killing.cn_classical"}
    _check(_criterion(5, "rigid motions give zero strain, stress, e, traction, residuals", "killing", checks,
                      1e-11, "abs", 2.0))


def test_criterion_6_lame_residuals():
    _check(_criterion("6a", "Lame sphere residuals (classical, form, stress divergence)", "lame",
                      {"lame.classical_residual", "lame.form_residual", "lame.stress_divergence"},
                      1e-9, "abs", 2.0, charts={"spherical"}))


def test_criterion_6_lame_pressure():
    _check(_criterion("6b", "Lame sphere traction at r = a reproduces -p_i dr", "lame", {"lame.inner_pressure"},
                      1e-8, "rel", 2.0, charts={"spherical"}))


@pytest.mark.parametrize("group,checks,kind", [
    ("d d = 0", {"structural.dd0", "structural.dd1"}, "abs"),
    ("** = id", {"structural.star_star_0", "structural.star_star_1", "structural.star_star_2",
                 "structural.star_star_3"}, "rel"),
    ("sharp flat = id", {"structural.sharp_flat"}, "rel"),
    ("delta delta = 0", {"structural.delta_delta_2", "structural.delta_delta_3"}, "abs"),
])
def test_criterion_7_structural(group, checks, kind):
    _check(_criterion(7, f"structural identity {group}", "structural", checks, 1e-11, kind, 5.0))


def test_criterion_8_cross_chart():
    _check(_criterion(8, "e, eps:eps, |t|^2 agree between Cartesian and curvilinear charts", "cross_chart",
                      {"cross.volume_expansion", "cross.strain_norm", "cross.traction_norm"}, 1e-9, "rel", 5.0))


def test_criterion_9_determinism():
    t0 = time.perf_counter()
    with tempfile.TemporaryDirectory() as tmp:
        paths = [Path(tmp) / f"run{i}.json" for i in range(2)]
        codes = [
            subprocess.run([sys.executable, "-m", "formelastic", "verify", "--suite", "all", "--seed", "42",
                            "--report", str(p), "--quiet"]).returncode
            for p in paths
        ]
        same = paths[0].read_bytes() == paths[1].read_bytes()
        size = paths[0].stat().st_size
    ok = same and codes == [0, 0]
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion 9: verify --suite all --seed 42 twice: "
            f"reports {'byte-identical' if same else 'DIFFER'} ({size} bytes), exit codes {codes}, "
            f"{time.perf_counter() - t0:.2f} s")
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
