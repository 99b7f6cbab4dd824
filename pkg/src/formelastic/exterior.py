"""Exterior calculus on a chart: d, Hodge star, codifferential, wedge,
interior product and the musical isomorphisms.

All operators act on pointwise :class:`KForm` / :class:`VecField` values.
The Hodge star uses the chart metric and right-handed orientation of
``(q^1, q^2, q^3)``; on Euclidean 3-space it is an involution on every degree.
The codifferential follows the sign convention

    delta = -*d*  on 1- and 3-forms,   delta = +*d*  on 2-forms.
"""

from __future__ import annotations

from .charts import MetricAtPoint
from .errors import DegreeOverflow, DerivativeBudgetExceeded
from .jets import jet_partial
from .tensors import KForm, VecField, check_metric, check_tags

__all__ = [
    "flat",
    "sharp",
    "exterior_derivative",
    "hodge_star",
    "codifferential",
    "wedge",
    "interior_product",
]

_CYCLIC = ((1, 2), (2, 0), (0, 1))


def flat(m: MetricAtPoint, v: VecField) -> KForm:
    """Lower the index: (v_flat)_i = g_ij v^j."""
    check_metric(m, v)
    g = m.g_jet
    comps = tuple(g[i][0] * v[0] + g[i][1] * v[1] + g[i][2] * v[2] for i in range(3))
    return KForm(1, comps, v.chart, v.point)


def sharp(m: MetricAtPoint, w: KForm) -> VecField:
    """Raise the index of a one-form: (w_sharp)^i = g^ij w_j."""
    if w.degree != 1:
        raise ValueError("sharp is defined on one-forms")
    check_metric(m, w)
    gi = m.g_inv_jet
    comps = tuple(gi[i][0] * w[0] + gi[i][1] * w[1] + gi[i][2] * w[2] for i in range(3))
    return VecField(comps, w.chart, w.point)


def _d(c, k):
    try:
        return jet_partial(c, k)
    except DerivativeBudgetExceeded:
        raise DerivativeBudgetExceeded(
            "exterior derivative of a form whose derivative budget is exhausted"
        ) from None


def exterior_derivative(w: KForm) -> KForm:
    """Coordinate exterior derivative; consumes one derivative order."""
    if w.degree == 0:
        f = w[0]
        comps = tuple(_d(f, k) for k in range(3))
    elif w.degree == 1:
        comps = tuple(_d(w[k], j) - _d(w[j], k) for j, k in _CYCLIC)
    elif w.degree == 2:
        comps = (_d(w[0], 0) + _d(w[1], 1) + _d(w[2], 2),)
    else:
        raise DegreeOverflow("d of a 3-form on a 3-manifold is not represented")
    return KForm(w.degree + 1, comps, w.chart, w.point)


def hodge_star(m: MetricAtPoint, w: KForm) -> KForm:
    check_metric(m, w)
    vol = m.sqrt_det_jet
    if w.degree == 0:
        comps = (w[0] * vol,)
    elif w.degree == 1:
        gi = m.g_inv_jet
        comps = tuple(vol * (gi[i][0] * w[0] + gi[i][1] * w[1] + gi[i][2] * w[2]) for i in range(3))
    elif w.degree == 2:
        g = m.g_jet
        inv_vol = 1.0 / vol
        comps = tuple(inv_vol * (g[i][0] * w[0] + g[i][1] * w[1] + g[i][2] * w[2]) for i in range(3))
    else:
        comps = (w[0] / vol,)
    return KForm(3 - w.degree, comps, w.chart, w.point)


def codifferential(m: MetricAtPoint, w: KForm) -> KForm:
    if w.degree == 0:
        raise ValueError("the codifferential of a 0-form is not defined")
    out = hodge_star(m, exterior_derivative(hodge_star(m, w)))
    return out if w.degree == 2 else -out


def wedge(a: KForm, b: KForm) -> KForm:
    check_tags(a, b)
    p, q = a.degree, b.degree
    if p + q > 3:
        raise DegreeOverflow(f"wedge of degrees {p} and {q} exceeds 3")
    if p == 0:
        return KForm(q, tuple(a[0] * c for c in b.components), a.chart, a.point)
    if q == 0:
        return KForm(p, tuple(c * b[0] for c in a.components), a.chart, a.point)
    if p == 1 and q == 1:
        comps = tuple(a[j] * b[k] - a[k] * b[j] for j, k in _CYCLIC)
        return KForm(2, comps, a.chart, a.point)
    # one 1-form and one 2-form; the sign (-1)^(1*2) is +1
    return KForm(3, (a[0] * b[0] + a[1] * b[1] + a[2] * b[2],), a.chart, a.point)


def interior_product(v: VecField, w: KForm) -> KForm:
    """Contraction of ``v`` into the first slot of ``w``."""
    check_tags(v, w)
    if w.degree == 0:
        raise ValueError("interior product needs a form of degree >= 1")
    if w.degree == 1:
        comps = (v[0] * w[0] + v[1] * w[1] + v[2] * w[2],)
    elif w.degree == 2:
        # (v _| beta)_j = v^i beta_ij, beta_ij = eps_ijk beta~_k
        comps = tuple(w[j] * v[k] - w[k] * v[j] for j, k in _CYCLIC)
    else:
        comps = tuple(w[0] * v[i] for i in range(3))
    return KForm(w.degree - 1, comps, w.chart, w.point)
