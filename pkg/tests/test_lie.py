import numpy as np
import pytest

from conftest import form_at, vec_at
from formelastic.charts import BUILTIN_CHARTS, coordinate_jets, get_chart, metric_at
from formelastic.errors import DerivativeBudgetExceeded
from formelastic.harness.fields import random_polynomial_batch, random_scalar_batch, rigid_generators
from formelastic.jets import jet_const, jet_partial
from formelastic.lie import (
    lie_bracket,
    lie_cov2,
    lie_cov2_product_rule,
    lie_oneform,
    lie_oneform_coordinate,
    lie_scalar,
    metric_tensor,
)
from formelastic.tensors import CovTensor2, KForm, VecField

P = np.array([1.5, -0.5, 0.25])


def test_bracket_of_coordinate_fields_vanishes():
    a, b = VecField.basis(0, "cartesian", P), VecField.basis(2, "cartesian", P)
    np.testing.assert_array_equal(lie_bracket(a, b).values(), 0.0)


def test_bracket_example():
    # [x d/dy, d/dx] = -d/dy
    v = vec_at("cartesian", P, lambda q: (0.0 * q[0], q[0], 0.0 * q[0]))
    w = VecField.basis(0, "cartesian", P)
    np.testing.assert_allclose(lie_bracket(v, w).values(), [0, -1, 0])


def test_lie_scalar():
    v = vec_at("cartesian", P, lambda q: (q[1], jet_const(2.0), 0.0 * q[0]))
    f = form_at(0, "cartesian", P, lambda q: (q[0] * q[0] + q[1],))
    # v . grad f = y * 2x + 2
    assert lie_scalar(v, f).values()[0] == pytest.approx(-0.5 * 3.0 + 2.0)


def test_lie_of_dx_along_x_squared():
    v = vec_at("cartesian", P, lambda q: (q[0] * q[0], 0.0 * q[0], 0.0 * q[0]))
    dx = form_at(1, "cartesian", P, lambda q: (jet_const(1.0), 0.0 * q[0], 0.0 * q[0]))
    np.testing.assert_allclose(lie_oneform(v, dx).values(), [2 * P[0], 0, 0])
    np.testing.assert_allclose(lie_oneform_coordinate(v, dx).values(), [2 * P[0], 0, 0])


def test_rotation_is_killing_cartesian():
    v = vec_at("cartesian", P, lambda q: (-q[1], q[0], 0.0 * q[0]))
    m = metric_at("cartesian", P)
    np.testing.assert_array_equal(lie_cov2(v, metric_tensor(m), m).values(), 0.0)


def test_d_theta_is_killing_cylindrical():
    p = np.array([2.0, 0.3, 1.0])
    m = metric_at("cylindrical", p)
    v = VecField.basis(1, "cylindrical", p)
    np.testing.assert_allclose(lie_cov2(v, metric_tensor(m), m).values(), 0.0, atol=1e-15)


def test_dilation_lie_metric_is_twice_metric():
    p = np.array([1.2, 0.8, -0.3])
    m = metric_at("spherical", p)
    v = vec_at("spherical", p, lambda q: (q[0], 0.0 * q[0], 0.0 * q[0]))  # x d/dx in spherical
    np.testing.assert_allclose(lie_cov2(v, metric_tensor(m), m).values(), 2 * m.g, rtol=1e-14, atol=1e-15)


def test_budget_required():
    exhausted = jet_partial(jet_partial(coordinate_jets(P)[0] ** 3, 0), 0)
    v = VecField((exhausted, exhausted, exhausted), "cartesian", P)
    w = VecField.basis(0, "cartesian", P)
    with pytest.raises(DerivativeBudgetExceeded):
        lie_bracket(w, v)


def _batch(name, rng, n_fields=10, n_points=6):
    chart = get_chart(name)
    p = chart.sample_points(rng, n_points)
    q = coordinate_jets(p)
    v = VecField(random_polynomial_batch(rng, n_fields, name)(q), name, p)
    w = VecField(random_polynomial_batch(rng, n_fields, name)(q), name, p)
    s = [random_scalar_batch(rng, n_fields)(q) for _ in range(7)]
    return metric_at(chart, p), v, w, s


@pytest.mark.parametrize("name", BUILTIN_CHARTS + ("sheared",))
def test_lie_routes(name, rng):
    m, v, w, s = _batch(name, rng)
    a = KForm(1, tuple(s[:3]), name, m.point)
    np.testing.assert_allclose(lie_oneform(v, a).values(), lie_oneform_coordinate(v, a).values(),
                               rtol=1e-11, atol=1e-11 * np.max(np.abs(a.values())))
    np.testing.assert_allclose(lie_bracket(v, w).values(), -lie_bracket(w, v).values(), rtol=1e-14, atol=1e-12)
    t = CovTensor2(tuple(tuple(s[(i + 2 * j) % 7] for j in range(3)) for i in range(3)), name, m.point)
    ref = lie_cov2_product_rule(v, t).values()
    np.testing.assert_allclose(lie_cov2(v, t).values(), ref, rtol=1e-11, atol=1e-11 * np.max(np.abs(ref)))
    lg = lie_cov2(v, metric_tensor(m), m).values()
    np.testing.assert_array_equal(lg, np.swapaxes(lg, -1, -2))


@pytest.mark.parametrize("name", BUILTIN_CHARTS)
def test_rigid_generators_are_killing(name, rng):
    chart = get_chart(name)
    p = chart.sample_points(rng, 20)
    m = metric_at(chart, p)
    g = metric_tensor(m)
    for gen in rigid_generators():
        v = gen.evaluate(chart, p)
        assert np.max(np.abs(lie_cov2(v, g, m).values())) < 1e-11, gen.label


def test_product_rule_scalar_times_tensor(rng):
    m, v, _, s = _batch("spherical", rng)
    f = KForm(0, (s[0],), "spherical", m.point)
    g = metric_tensor(m)
    lhs = lie_cov2(v, g.scaled(s[0])).values()
    rhs = (g.scaled(lie_scalar(v, f)[0]) + lie_cov2(v, g, m).scaled(s[0])).values()
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10 * np.max(np.abs(rhs)))
