import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_bvp

from conftest import spec_pair
from formelastic.charts import get_chart, metric_at, to_cartesian
from formelastic.elasticity import ElasticModuli, cn_residual_classical, traction_adapted
from formelastic.errors import InvalidSpec
from formelastic.harness.fields import (
    MONOMIALS,
    PRESETS,
    FieldSpec,
    lame_cylinder_constants,
    lame_sphere_constants,
    load_field_spec,
    make_field,
    random_polynomial_batch,
    rigid_generators,
)


def test_monomials_cover_cubics():
    assert len(MONOMIALS) == 20 and len(set(MONOMIALS)) == 20
    assert max(sum(e) for e in MONOMIALS) == 3


def test_rotation_and_dilation():
    p = np.array([[0.3, -1.2, 2.0]])
    rot = make_field(FieldSpec("rigid_rotation", {})).evaluate("cartesian", p).values()
    np.testing.assert_array_equal(rot, [[1.2, 0.3, 0.0]])
    dil = make_field(FieldSpec("dilation", {})).evaluate("cartesian", p).values()
    np.testing.assert_array_equal(dil, p)


def test_rigid_generators():
    gens = rigid_generators()
    assert [g.label for g in gens] == [
        "translation_x", "translation_y", "translation_z", "rotation_x", "rotation_y", "rotation_z"]


def test_polynomial_spec(tmp_path):
    spec = {"kind": "polynomial", "chart": "cartesian", "params": [
        {"target_component": 0, "exponents": [2, 0, 1], "coefficient": 1.5},
        {"target_component": 2, "exponents": [0, 1, 0], "coefficient": -2.0},
    ]}
    path = tmp_path / "f.json"
    path.write_text(json.dumps(spec))
    v = make_field(load_field_spec(path)).evaluate("cartesian", np.array([2.0, 3.0, -1.0]))
    np.testing.assert_allclose(v.values(), [1.5 * 4 * -1, 0.0, -6.0])
    np.testing.assert_allclose(v[0].grad, [1.5 * 2 * 2 * -1, 0, 1.5 * 4])


@pytest.mark.parametrize("spec", [
    FieldSpec("polynomial", [{"target_component": 0, "exponents": [2, 2, 0], "coefficient": 1.0}]),
    FieldSpec("polynomial", [{"target_component": 3, "exponents": [1, 0, 0], "coefficient": 1.0}]),
    FieldSpec("polynomial", [{"exponents": [1, 0, 0]}]),
    FieldSpec("polynomial", "x"),
    FieldSpec("wobble", {}),
    FieldSpec("dilation", {}, "spherical"),
    FieldSpec("lame_sphere", {"a": 2.0, "b": 1.0}, "spherical"),
    FieldSpec("lame_sphere", {}, "cylindrical"),
    FieldSpec("lame_cylinder", {"mu": -1.0}, "cylindrical"),
    FieldSpec("custom_preset", {"name": "nope"}),
    FieldSpec("rigid_rotation", {}, "nowhere"),
])
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        make_field(spec)


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InvalidSpec):
        load_field_spec(path)
    path.write_text("[1, 2]")
    with pytest.raises(InvalidSpec):
        load_field_spec(path)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_build(name):
    v = make_field(FieldSpec("custom_preset", {"name": name})).evaluate("cartesian", np.array([0.5, 0.2, -0.1]))
    assert np.all(np.isfinite(v.values()))


def test_random_batch_shapes(rng):
    chart = get_chart("spherical")
    p = chart.sample_points(rng, 7)
    v = random_polynomial_batch(rng, 5, "cartesian").evaluate(chart, p)
    assert v.values().shape == (5, 7, 3)


def _radial_bvp(kind, a, b, p_i, lam, mu):
    """Solve the radial equilibrium equation numerically (independent of the closed form)."""
    k = 2.0 if kind == "sphere" else 1.0  # sphere: u'' + 2u'/r - 2u/r^2; cylinder: u'' + u'/r - u/r^2

    def rhs(r, y):
        return np.vstack([y[1], -k * y[1] / r + k * y[0] / r**2])

    def sigma_rr(r, y):
        return (lam + 2 * mu) * y[1] + k * lam * y[0] / r

    def bc(ya, yb):
        return np.array([sigma_rr(a, ya) + p_i, sigma_rr(b, yb)])

    r = np.linspace(a, b, 50)
    sol = solve_bvp(rhs, bc, r, np.zeros((2, r.size)), tol=1e-10, max_nodes=100000)
    assert sol.success
    return sol


@pytest.mark.parametrize("lam,mu,p_i", [(1.0, 1.0, 1.0), (2.3, 0.4, 0.7), (-0.2, 1.5, 3.0)])
def test_lame_constants_against_ode(lam, mu, p_i):
    a, b = 1.0, 2.0
    r = np.linspace(a, b, 30)
    A, B = lame_sphere_constants(a, b, p_i, lam, mu)
    sol = _radial_bvp("sphere", a, b, p_i, lam, mu)
    np.testing.assert_allclose(A * r + B / r**2, sol.sol(r)[0], rtol=1e-6)
    A, B = lame_cylinder_constants(a, b, p_i, lam, mu)
    sol = _radial_bvp("cylinder", a, b, p_i, lam, mu)
    np.testing.assert_allclose(A * r + B / r, sol.sol(r)[0], rtol=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 2.0), st.floats(1.1, 3.0), st.floats(0.1, 3.0), st.floats(0.0, 3.0), st.floats(0.1, 3.0))
def test_lame_fields_are_equilibrium_witnesses(a, ratio, p_i, lam, mu):
    b = a * ratio
    params = {"a": a, "b": b, "p_i": p_i, "lambda": lam, "mu": mu}
    mod = ElasticModuli(lam, mu)
    for kind, name in (("lame_sphere", "spherical"), ("lame_cylinder", "cylindrical")):
        chart = get_chart(name)
        p = chart.sample_points(np.random.default_rng(0), 10)
        p[:, 0] = np.linspace(a, b, 10)
        m, v, u = spec_pair(FieldSpec(kind, params, name), chart, p)
        res = cn_residual_classical(mod, m, v).values()
        assert np.max(np.abs(res)) < 1e-9 * max(1.0, p_i)
        t = traction_adapted(mod, m, u, v, 0).values()
        np.testing.assert_allclose(t[0, 0], -p_i, rtol=1e-10)
        np.testing.assert_allclose(t[-1], 0.0, atol=1e-10 * p_i)


def test_lame_field_in_cartesian_chart_pulls_back(rng):
    params = {"a": 1.0, "b": 2.0, "p_i": 1.0, "lambda": 1.0, "mu": 1.0}
    field = make_field(FieldSpec("lame_sphere", params, "spherical"))
    p = np.array([[1.5, 1.0, 0.4]])
    x = to_cartesian("spherical", p)
    v = field.evaluate("cartesian", x).values()[0]
    A, B = lame_sphere_constants(1, 2, 1, 1, 1)
    ur = A * 1.5 + B / 1.5**2
    np.testing.assert_allclose(v, ur * x[0] / 1.5, rtol=1e-14)
    m = metric_at("cartesian", x)
    assert np.max(np.abs(cn_residual_classical(ElasticModuli(1, 1), m, field.evaluate("cartesian", x)).values())) < 1e-12
