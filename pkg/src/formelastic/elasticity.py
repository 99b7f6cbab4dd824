"""Static linear isotropic elasticity written with forms and Lie derivatives.

Strain comes by two routes (half the Lie derivative of the metric along the
displacement vector field, and the symmetrized covariant derivative of the
displacement one-form).  The Cauchy-Navier operator comes by three routes and
the boundary traction by three routes; the classical ones double as oracles.

Sign note: with delta = -*d* on one-forms,

    (lam + 2 mu) d delta u + mu delta d u  =  -( mu Lap u + (lam + mu) grad div u )_flat,

so :func:`cn_residual_form` is the negative of the flattened classical
residual.  Both vanish on exactly the same displacement fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .charts import MetricAtPoint
from .errors import ChartNotAdapted, DerivativeBudgetExceeded, InconsistentPair, InvalidModuli, NotNormalized
from .exterior import codifferential, exterior_derivative, flat, hodge_star, interior_product, sharp
from .jets import jet_partial
from .lie import coordinate_covector, lie_bracket, lie_cov2, metric_tensor
from .tensors import CovTensor2, KForm, VecField, check_metric, check_tags

__all__ = [
    "ElasticModuli",
    "BoundaryPoint",
    "boundary_point",
    "adapted_boundary",
    "volume_expansion",
    "strain_lie",
    "strain_covariant",
    "stress",
    "cn_residual_form",
    "cn_residual_gradcurl",
    "cn_residual_classical",
    "traction_cauchy",
    "traction_form",
    "traction_adapted",
    "PAIR_TOL",
    "NORMAL_TOL",
]

PAIR_TOL = 1e-12
NORMAL_TOL = 1e-10


@dataclass(frozen=True)
class ElasticModuli:
    """Lamé parameters in pascals."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.mu)):
            raise InvalidModuli("Lamé parameters must be finite")
        if not self.mu > 0:
            raise InvalidModuli(f"shear modulus mu must be positive, got {self.mu}")
        if not self.lam + 2.0 * self.mu / 3.0 > 0:
            raise InvalidModuli("bulk modulus lam + 2 mu / 3 must be positive")


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A unit normal field near a boundary point and its one-form."""

    normal: VecField
    normal_form: KForm

    @property
    def chart(self) -> str:
        return self.normal.chart

    @property
    def point(self) -> np.ndarray:
        return self.normal.point


def boundary_point(m: MetricAtPoint, normal: VecField) -> BoundaryPoint:
    """Wrap a normal field (given with at least one derivative order)."""
    check_metric(m, normal)
    if normal.order < 1:
        raise DerivativeBudgetExceeded("the boundary normal must carry first derivatives")
    n = flat(m, normal)
    norm2 = sum(n[i].value * normal[i].value for i in range(3))
    if np.any(np.abs(norm2 - 1.0) > NORMAL_TOL):
        raise NotNormalized(f"g(n, n) deviates from 1 by {np.max(np.abs(norm2 - 1.0)):.3e}")
    return BoundaryPoint(normal, n)


def _require_adapted(m: MetricAtPoint, r_index: int) -> None:
    if m.chart.unit_radial is None or m.chart.unit_radial != r_index:
        raise ChartNotAdapted(
            f"chart {m.chart.name!r} has unit_radial={m.chart.unit_radial}, requested {r_index}"
        )


def adapted_boundary(m: MetricAtPoint, r_index: int) -> BoundaryPoint:
    """Boundary data for a surface r = const with n = d/dr, extended off the surface as d/dr."""
    _require_adapted(m, r_index)
    return boundary_point(m, VecField.basis(r_index, m.chart.name, m.point))


def _check_pair(m: MetricAtPoint, u: KForm, v: VecField) -> None:
    check_metric(m, u, v)
    if u.degree != 1:
        raise ValueError("the displacement must be a one-form")
    raised = sharp(m, u)
    scale = max(1.0, float(np.max(np.abs(v.values()))))
    gap = float(np.max(np.abs(raised.values() - v.values())))
    if gap > PAIR_TOL * scale:
        raise InconsistentPair(f"v differs from sharp(u) by {gap:.3e}")


def volume_expansion(m: MetricAtPoint, u: KForm) -> KForm:
    """e = div u_sharp = -delta u."""
    return -codifferential(m, u)


def strain_lie(m: MetricAtPoint, v: VecField) -> CovTensor2:
    """Half the Lie derivative of the metric along the displacement vector field."""
    check_metric(m, v)
    return lie_cov2(v, metric_tensor(m), m).scaled(0.5)


def strain_covariant(m: MetricAtPoint, u: KForm) -> CovTensor2:
    """1/2 (u_i,j + u_j,i) - Gamma^k_ij u_k."""
    check_metric(m, u)
    gam = m.gamma_jet
    du = [[jet_partial(u[i], j) for j in range(3)] for i in range(3)]

    def entry(i, j):
        return 0.5 * (du[i][j] + du[j][i]) - (gam[0][i][j] * u[0] + gam[1][i][j] * u[1] + gam[2][i][j] * u[2])

    return CovTensor2.from_upper(entry, u.chart, u.point)


def stress(mod: ElasticModuli, m: MetricAtPoint, u: KForm, v: VecField) -> CovTensor2:
    """sigma = -lam (delta u) g + mu L_v g."""
    _check_pair(m, u, v)
    delta_u = codifferential(m, u)[0]
    g = metric_tensor(m)
    return g.scaled(delta_u * (-mod.lam)) + lie_cov2(v, g, m).scaled(mod.mu)


def cn_residual_form(mod: ElasticModuli, m: MetricAtPoint, u: KForm) -> KForm:
    """(lam + 2 mu) d delta u + mu delta d u."""
    check_metric(m, u)
    grad_part = exterior_derivative(codifferential(m, u))
    curl_part = codifferential(m, exterior_derivative(u))
    return grad_part.scaled(mod.lam + 2.0 * mod.mu) + curl_part.scaled(mod.mu)


def cn_residual_gradcurl(mod: ElasticModuli, m: MetricAtPoint, u: KForm) -> KForm:
    """(lam + 2 mu) grad div u - mu curl curl u, each operator built from d, * and the musical maps."""
    check_metric(m, u)
    grad_div = exterior_derivative(hodge_star(m, exterior_derivative(hodge_star(m, u))))
    curl = sharp(m, hodge_star(m, exterior_derivative(u)))
    curl_curl = flat(m, sharp(m, hodge_star(m, exterior_derivative(flat(m, curl)))))
    return grad_div.scaled(mod.lam + 2.0 * mod.mu) - curl_curl.scaled(mod.mu)


def cn_residual_classical(mod: ElasticModuli, m: MetricAtPoint, v: VecField) -> VecField:
    """mu Lap v + (lam + mu) grad div v with the classical operators."""
    lap = oracle.vector_laplacian(m, v)
    grad_div = oracle.grad_classical(m, oracle.div_classical(m, v))
    return lap.scaled(mod.mu) + grad_div.scaled(mod.lam + mod.mu)


def _contract(sigma: CovTensor2, n: VecField) -> KForm:
    comps = tuple(sigma[i, 0] * n[0] + sigma[i, 1] * n[1] + sigma[i, 2] * n[2] for i in range(3))
    return KForm(1, comps, sigma.chart, sigma.point)


def traction_cauchy(mod: ElasticModuli, m: MetricAtPoint, u: KForm, v: VecField, bp: BoundaryPoint) -> KForm:
    """t = sigma . n  (ground truth for the other traction routes)."""
    check_tags(u, bp.normal)
    return _contract(stress(mod, m, u, v), bp.normal)


def traction_form(mod: ElasticModuli, m: MetricAtPoint, u: KForm, v: VecField, bp: BoundaryPoint) -> KForm:
    """t = -lam (delta u) n + mu (d(v _| n) + v _| dn + [n, v]_flat)."""
    _check_pair(m, u, v)
    check_tags(u, bp.normal)
    n, nbar = bp.normal_form, bp.normal
    delta_u = codifferential(m, u)[0]
    shear = (
        exterior_derivative(interior_product(v, n))
        + interior_product(v, exterior_derivative(n))
        + flat(m, lie_bracket(nbar, v))
    )
    return n.scaled(delta_u * (-mod.lam)) + shear.scaled(mod.mu)


def traction_adapted(mod: ElasticModuli, m: MetricAtPoint, u: KForm, v: VecField, r_index: int) -> KForm:
    """t = -(lam delta u) dr + mu (d u^r + [d/dr, v]_flat) on a surface r = const."""
    _require_adapted(m, r_index)
    _check_pair(m, u, v)
    dr = coordinate_covector(r_index, u.chart, u.point)
    d_r = VecField.basis(r_index, u.chart, u.point)
    delta_u = codifferential(m, u)[0]
    u_r = KForm(0, (v[r_index],), v.chart, v.point)
    shear = exterior_derivative(u_r) + flat(m, lie_bracket(d_r, v))
    return dr.scaled(delta_u * (-mod.lam)) + shear.scaled(mod.mu)
