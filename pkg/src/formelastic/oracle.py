"""Classical index-tensor operators used as ground truth.

Nothing here imports the exterior-calculus or Lie-derivative modules: the
operators are written directly in terms of partial derivatives, Christoffel
symbols, the volume density and the Levi-Civita symbol, so agreement with the
form-based routes is evidence rather than a tautology.
"""

from __future__ import annotations

from typing import Union

from .charts import MetricAtPoint
from .jets import Jet2, jet_partial
from .tensors import CovTensor2, KForm, VecField, check_metric

__all__ = [
    "cov_deriv_covector",
    "grad_classical",
    "div_classical",
    "curl_classical",
    "vector_laplacian",
    "stress_divergence",
    "LEVI_CIVITA",
]

# (i, j, k, sign) for the nonzero entries of the permutation symbol
LEVI_CIVITA = (
    (0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0),
    (0, 2, 1, -1.0), (2, 1, 0, -1.0), (1, 0, 2, -1.0),
)


def _scalar(f: Union[KForm, Jet2]) -> Jet2:
    if isinstance(f, KForm):
        if f.degree != 0:
            raise ValueError("expected a scalar (0-form)")
        return f[0]
    return f


def cov_deriv_covector(m: MetricAtPoint, u: KForm) -> CovTensor2:
    """u_{i|j} = u_i,j - Gamma^k_ij u_k (not symmetric in general)."""
    check_metric(m, u)
    gam = m.gamma_jet
    rows = tuple(
        tuple(
            jet_partial(u[i], j) - (gam[0][i][j] * u[0] + gam[1][i][j] * u[1] + gam[2][i][j] * u[2])
            for j in range(3)
        )
        for i in range(3)
    )
    return CovTensor2(rows, u.chart, u.point)


def grad_classical(m: MetricAtPoint, f) -> VecField:
    """Gradient vector (grad f)^i = g^ij f_,j."""
    f_jet = _scalar(f)
    if isinstance(f, KForm):
        check_metric(m, f)
    df = [jet_partial(f_jet, k) for k in range(3)]
    gi = m.g_inv_jet
    comps = tuple(gi[i][0] * df[0] + gi[i][1] * df[1] + gi[i][2] * df[2] for i in range(3))
    return VecField(comps, m.chart.name, m.point)


def div_classical(m: MetricAtPoint, v: VecField) -> KForm:
    """Divergence by the density formula (1/sqrt g) (sqrt g v^i)_,i."""
    check_metric(m, v)
    vol = m.sqrt_det_jet
    acc = jet_partial(vol * v[0], 0) + jet_partial(vol * v[1], 1) + jet_partial(vol * v[2], 2)
    return KForm(0, (acc / vol,), v.chart, v.point)


def curl_classical(m: MetricAtPoint, v: VecField) -> VecField:
    """(curl v)^i = (1/sqrt g) eps^ijk (g_kl v^l)_,j."""
    check_metric(m, v)
    g = m.g_jet
    low = [g[k][0] * v[0] + g[k][1] * v[1] + g[k][2] * v[2] for k in range(3)]
    out = [None, None, None]
    for i, j, k, s in LEVI_CIVITA:
        term = s * jet_partial(low[k], j)
        out[i] = term if out[i] is None else out[i] + term
    inv_vol = 1.0 / m.sqrt_det_jet
    return VecField(tuple(c * inv_vol for c in out), v.chart, v.point)


def vector_laplacian(m: MetricAtPoint, v: VecField) -> VecField:
    """grad(div v) - curl(curl v)."""
    return grad_classical(m, div_classical(m, v)) - curl_classical(m, curl_classical(m, v))


def stress_divergence(m: MetricAtPoint, sigma: CovTensor2) -> KForm:
    """(div sigma)_i = g^jk (sigma_ij,k - Gamma^l_ik sigma_lj - Gamma^l_jk sigma_il)."""
    check_metric(m, sigma)
    gam = m.gamma_jet
    gi = m.g_inv_jet
    comps = []
    for i in range(3):
        acc = None
        for j in range(3):
            for k in range(3):
                cd = jet_partial(sigma[i, j], k)
                for l in range(3):
                    cd = cd - gam[l][i][k] * sigma[l, j] - gam[l][j][k] * sigma[i, l]
                term = gi[j][k] * cd
                acc = term if acc is None else acc + term
        comps.append(acc)
    return KForm(1, tuple(comps), sigma.chart, sigma.point)
