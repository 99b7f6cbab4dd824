"""Lie brackets and Lie derivatives of scalars, one-forms and (0,2)-tensors."""

from __future__ import annotations

from typing import Optional

from .charts import MetricAtPoint
from .exterior import exterior_derivative, interior_product
from .jets import jet_const, jet_partial
from .tensors import CovTensor2, KForm, VecField, check_metric, check_tags

__all__ = [
    "lie_bracket",
    "lie_scalar",
    "lie_oneform",
    "lie_oneform_coordinate",
    "lie_cov2",
    "lie_cov2_product_rule",
    "metric_tensor",
    "coordinate_covector",
]


def _dir(v: VecField, f) -> object:
    """Directional derivative v^k df/dq^k of a scalar jet."""
    return v[0] * jet_partial(f, 0) + v[1] * jet_partial(f, 1) + v[2] * jet_partial(f, 2)


def lie_bracket(v: VecField, w: VecField) -> VecField:
    """[v, w]^i = v^k w^i_,k - w^k v^i_,k."""
    check_tags(v, w)
    comps = tuple(_dir(v, w[i]) - _dir(w, v[i]) for i in range(3))
    return VecField(comps, v.chart, v.point)


def lie_scalar(v: VecField, f: KForm) -> KForm:
    if f.degree != 0:
        raise ValueError("lie_scalar expects a 0-form")
    check_tags(v, f)
    return KForm(0, (_dir(v, f[0]),), f.chart, f.point)


def lie_oneform(v: VecField, w: KForm) -> KForm:
    """Cartan's formula: L_v w = v _| dw + d(v _| w)."""
    if w.degree != 1:
        raise ValueError("lie_oneform expects a one-form")
    check_tags(v, w)
    return interior_product(v, exterior_derivative(w)) + exterior_derivative(interior_product(v, w))


def lie_oneform_coordinate(v: VecField, w: KForm) -> KForm:
    """(L_v w)_i = v^k w_i,k + w_k v^k_,i, an independent route to :func:`lie_oneform`."""
    if w.degree != 1:
        raise ValueError("lie_oneform_coordinate expects a one-form")
    check_tags(v, w)
    comps = tuple(
        _dir(v, w[i]) + sum((w[k] * jet_partial(v[k], i) for k in range(1, 3)), w[0] * jet_partial(v[0], i))
        for i in range(3)
    )
    return KForm(1, comps, w.chart, w.point)


def lie_cov2(v: VecField, t: CovTensor2, m: Optional[MetricAtPoint] = None) -> CovTensor2:
    """(L_v t)_ij = v^k t_ij,k + t_kj v^k_,i + t_ik v^k_,j."""
    check_tags(v, t)
    if m is not None:
        check_metric(m, t)
    dv = [[jet_partial(v[k], i) for i in range(3)] for k in range(3)]  # dv[k][i] = v^k_,i

    def entry(i, j):
        acc = _dir(v, t[i, j])
        for k in range(3):
            acc = acc + t[k, j] * dv[k][i] + t[i, k] * dv[k][j]
        return acc

    if t.symmetric:
        return CovTensor2.from_upper(entry, t.chart, t.point)
    rows = tuple(tuple(entry(i, j) for j in range(3)) for i in range(3))
    return CovTensor2(rows, t.chart, t.point)


def coordinate_covector(i: int, chart: str, point) -> KForm:
    """The constant one-form dq^i."""
    return KForm(1, tuple(jet_const(1.0 if k == i else 0.0) for k in range(3)), chart, point)


def lie_cov2_product_rule(v: VecField, t: CovTensor2) -> CovTensor2:
    """Lie derivative of t_ij dq^i (x) dq^j expanded with the tensor-product rule.

    Each basis covector is differentiated with Cartan's formula, so this
    route shares no code with :func:`lie_cov2` beyond the jet arithmetic.
    """
    check_tags(v, t)
    ld = [lie_oneform(v, coordinate_covector(i, t.chart, t.point)) for i in range(3)]
    scalar = [[_dir(v, t[i, j]) for j in range(3)] for i in range(3)]

    def entry(a, b):
        acc = scalar[a][b]
        for i in range(3):
            acc = acc + t[i, b] * ld[i][a] + t[a, i] * ld[i][b]
        return acc

    if t.symmetric:
        return CovTensor2.from_upper(entry, t.chart, t.point)
    return CovTensor2(tuple(tuple(entry(a, b) for b in range(3)) for a in range(3)), t.chart, t.point)


def metric_tensor(m: MetricAtPoint) -> CovTensor2:
    """The metric g_ij dq^i (x) dq^j as a symmetric tensor."""
    return CovTensor2.from_upper(lambda i, j: m.g_jet[i][j], m.chart.name, m.point)
