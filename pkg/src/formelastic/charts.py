"""Curvilinear charts of Euclidean 3-space.

A chart is described by its embedding into Cartesian coordinates together with
the analytic Jacobian of that embedding, both written against the jet API so
they can be evaluated on coordinate jets.  Evaluating the Jacobian on
coordinate jets yields the metric ``g = J^T J`` with exact first and second
partials; everything else (inverse metric, volume density, Christoffel
symbols) is derived from there mechanically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import OutOfDomain, SingularJet, SingularPoint
from .jets import EPS_SING, Jet2, jet_atan2, jet_const, jet_coord, jet_cos, jet_partial, jet_recip, jet_sin, jet_sqrt
from .tensors import VecField

__all__ = [
    "Chart",
    "MetricAtPoint",
    "CARTESIAN",
    "CYLINDRICAL",
    "SPHERICAL",
    "SHEARED",
    "CHARTS",
    "BUILTIN_CHARTS",
    "get_chart",
    "register_chart",
    "coordinate_jets",
    "metric_at",
    "metric_from_embedding",
    "christoffel",
    "christoffel_jets",
    "to_cartesian",
    "from_cartesian",
    "pullback_displacement",
    "pushforward_to_cartesian",
    "invert3",
]

JetTriple = Tuple[Jet2, Jet2, Jet2]
JetMatrix = Tuple[Tuple[Jet2, ...], ...]


@dataclass(frozen=True)
class Chart:
    """A coordinate system on an open subset of E^3.

    Attributes:
        name: registry key.
        coordinates: display names of q^1, q^2, q^3.
        embed: q-jets -> Cartesian (x, y, z) jets.
        jacobian: q-jets -> J[a][i] = dx^a/dq^i as jets.
        inverse: Cartesian jets -> q jets.
        regular: q array (..., 3) -> boolean mask of regular points.
        bounds: closed range of each coordinate; points outside are out of domain.
        unit_radial: index of a coordinate r with g_rr = 1 and g_ri = 0, if any.
        orthogonal: whether the metric is diagonal everywhere.
        sample_box: box used for random regular sample points.
    """

    name: str
    coordinates: Tuple[str, str, str]
    embed: Callable[[Sequence[Jet2]], JetTriple] = field(repr=False)
    jacobian: Callable[[Sequence[Jet2]], JetMatrix] = field(repr=False)
    inverse: Callable[[Sequence[Jet2]], JetTriple] = field(repr=False)
    regular: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    bounds: Tuple[Tuple[float, float], ...] = ((-np.inf, np.inf),) * 3
    unit_radial: Optional[int] = None
    orthogonal: bool = False
    sample_box: Tuple[Tuple[float, float], ...] = ((-2.0, 2.0),) * 3

    def sample_points(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lo = np.array([b[0] for b in self.sample_box])
        hi = np.array([b[1] for b in self.sample_box])
        return lo + (hi - lo) * rng.random((n, 3))


def coordinate_jets(p: np.ndarray) -> JetTriple:
    """Jets of the three coordinate functions at ``p`` (shape ``S + (3,)``)."""
    p = np.asarray(p, dtype=float)
    return tuple(jet_coord(k, p[..., k]) for k in range(3))


def invert3(a: JetMatrix) -> Tuple[JetMatrix, Jet2]:
    """Inverse and determinant of a 3x3 matrix of jets via cofactors."""
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        m = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
        return m if (i + j) % 2 == 0 else -m

    cofs = [[cof(i, j) for j in range(3)] for i in range(3)]
    det = a[0][0] * cofs[0][0] + a[0][1] * cofs[0][1] + a[0][2] * cofs[0][2]
    inv_det = jet_recip(det)
    inv = tuple(tuple(cofs[j][i] * inv_det for j in range(3)) for i in range(3))
    return inv, det


# ---------------------------------------------------------------------------
# builtin charts


def _cart_embed(q):
    return tuple(q)


def _cart_jacobian(q):
    return tuple(tuple(jet_const(1.0 if a == i else 0.0) for i in range(3)) for a in range(3))


def _all_regular(q):
    return np.ones(np.shape(q)[:-1], dtype=bool)


def _cyl_embed(q):
    r, th, z = q
    return r * jet_cos(th), r * jet_sin(th), z


def _cyl_jacobian(q):
    r, th, _ = q
    c, s = jet_cos(th), jet_sin(th)
    zero, one = jet_const(0.0), jet_const(1.0)
    return ((c, -(r * s), zero), (s, r * c, zero), (zero, zero, one))


def _cyl_inverse(x):
    X, Y, Z = x
    return jet_sqrt(X * X + Y * Y), jet_atan2(Y, X), Z


def _cyl_regular(q):
    return np.asarray(q)[..., 0] > EPS_SING


def _sph_embed(q):
    r, th, ph = q
    st, ct, sp, cp = jet_sin(th), jet_cos(th), jet_sin(ph), jet_cos(ph)
    return r * st * cp, r * st * sp, r * ct


def _sph_jacobian(q):
    r, th, ph = q
    st, ct, sp, cp = jet_sin(th), jet_cos(th), jet_sin(ph), jet_cos(ph)
    zero = jet_const(0.0)
    return (
        (st * cp, r * ct * cp, -(r * st * sp)),
        (st * sp, r * ct * sp, r * st * cp),
        (ct, -(r * st), zero),
    )


def _sph_inverse(x):
    X, Y, Z = x
    rho2 = X * X + Y * Y
    return jet_sqrt(rho2 + Z * Z), jet_atan2(jet_sqrt(rho2), Z), jet_atan2(Y, X)


def _sph_regular(q):
    q = np.asarray(q)
    return (q[..., 0] > EPS_SING) & (np.abs(np.sin(q[..., 1])) > EPS_SING)


# x = q1 + a q2^2, y = q2, z = q3 + b q1 q2; det J = 1 everywhere
_SHEAR_A, _SHEAR_B = 0.3, 0.2


def _shear_embed(q):
    q1, q2, q3 = q
    return q1 + _SHEAR_A * (q2 * q2), q2, q3 + _SHEAR_B * (q1 * q2)


def _shear_jacobian(q):
    q1, q2, _ = q
    zero, one = jet_const(0.0), jet_const(1.0)
    return (
        (one, 2.0 * _SHEAR_A * q2, zero),
        (zero, one, zero),
        (_SHEAR_B * q2, _SHEAR_B * q1, one),
    )


def _shear_inverse(x):
    X, Y, Z = x
    q1 = X - _SHEAR_A * (Y * Y)
    return q1, Y, Z - _SHEAR_B * (q1 * Y)


CARTESIAN = Chart(
    name="cartesian",
    coordinates=("x", "y", "z"),
    embed=_cart_embed,
    jacobian=_cart_jacobian,
    inverse=_cart_embed,
    regular=_all_regular,
    orthogonal=True,
    sample_box=((-2.0, 2.0),) * 3,
)

CYLINDRICAL = Chart(
    name="cylindrical",
    coordinates=("r", "theta", "z"),
    embed=_cyl_embed,
    jacobian=_cyl_jacobian,
    inverse=_cyl_inverse,
    regular=_cyl_regular,
    bounds=((0.0, np.inf), (-np.inf, np.inf), (-np.inf, np.inf)),
    unit_radial=0,
    orthogonal=True,
    sample_box=((0.5, 3.0), (-np.pi, np.pi), (-2.0, 2.0)),
)

SPHERICAL = Chart(
    name="spherical",
    coordinates=("r", "theta", "phi"),
    embed=_sph_embed,
    jacobian=_sph_jacobian,
    inverse=_sph_inverse,
    regular=_sph_regular,
    bounds=((0.0, np.inf), (0.0, np.pi), (-np.inf, np.inf)),
    unit_radial=0,
    orthogonal=True,
    sample_box=((0.5, 3.0), (0.4, np.pi - 0.4), (-np.pi, np.pi)),
)

SHEARED = Chart(
    name="sheared",
    coordinates=("q1", "q2", "q3"),
    embed=_shear_embed,
    jacobian=_shear_jacobian,
    inverse=_shear_inverse,
    regular=_all_regular,
    sample_box=((-1.5, 1.5),) * 3,
)

BUILTIN_CHARTS = ("cartesian", "cylindrical", "spherical")
CHARTS: Dict[str, Chart] = {c.name: c for c in (CARTESIAN, CYLINDRICAL, SPHERICAL, SHEARED)}


def register_chart(chart: Chart) -> Chart:
    CHARTS[chart.name] = chart
    return chart


def get_chart(name) -> Chart:
    if isinstance(name, Chart):
        return name
    try:
        return CHARTS[name]
    except KeyError:
        raise KeyError(f"unknown chart {name!r}; known: {sorted(CHARTS)}") from None


# ---------------------------------------------------------------------------
# metric geometry


def _check_domain(chart: Chart, p: np.ndarray) -> None:
    if not np.all(np.isfinite(p)):
        raise OutOfDomain("non-finite coordinates")
    for k, (lo, hi) in enumerate(chart.bounds):
        if np.any((p[..., k] < lo) | (p[..., k] > hi)):
            raise OutOfDomain(f"{chart.coordinates[k]} outside [{lo}, {hi}] in chart {chart.name!r}")
    if not np.all(chart.regular(p)):
        raise SingularPoint(f"point is on the singular set of chart {chart.name!r}")


@dataclass(frozen=True, eq=False)
class MetricAtPoint:
    """Metric data of a chart at a point (or a batch of points).

    The jet-valued fields carry the full second-order expansion; the plain
    array properties are their value channels.
    """

    chart: Chart
    point: np.ndarray
    g_jet: JetMatrix
    g_inv_jet: JetMatrix
    sqrt_det_jet: Jet2

    @property
    def chart_name(self) -> str:
        return self.chart.name

    @cached_property
    def g(self) -> np.ndarray:
        return _values3x3(self.g_jet)

    @cached_property
    def g_inv(self) -> np.ndarray:
        return _values3x3(self.g_inv_jet)

    @cached_property
    def dg(self) -> np.ndarray:
        """dg[..., i, j, k] = d g_ij / dq^k."""
        return np.stack([np.stack([self.g_jet[i][j].grad for j in range(3)], -2) for i in range(3)], -3)

    @property
    def sqrt_det(self) -> np.ndarray:
        return self.sqrt_det_jet.value

    @cached_property
    def gamma(self) -> np.ndarray:
        return christoffel(self)

    @cached_property
    def gamma_jet(self):
        return christoffel_jets(self)


def _values3x3(m: JetMatrix) -> np.ndarray:
    rows = [np.stack(np.broadcast_arrays(*[m[i][j].value for j in range(3)]), -1) for i in range(3)]
    return np.stack(np.broadcast_arrays(*rows), -2)


def metric_at(chart, p) -> MetricAtPoint:
    """Metric, inverse metric, volume density and derivatives at ``p``."""
    chart = get_chart(chart)
    p = np.asarray(p, dtype=float)
    _check_domain(chart, p)
    q = coordinate_jets(p)
    J = chart.jacobian(q)
    # broadcast every entry to the full batch so constant entries stack cleanly
    zero = Jet2(np.zeros(p.shape[:-1]))
    g = {}
    for i in range(3):
        for j in range(i, 3):
            g[i, j] = g[j, i] = zero + J[0][i] * J[0][j] + J[1][i] * J[1][j] + J[2][i] * J[2][j]
    g_jet = tuple(tuple(g[i, j] for j in range(3)) for i in range(3))
    try:
        g_inv, det = invert3(g_jet)
        if np.any(~(det.value > EPS_SING)):
            raise SingularJet("det g too small")
        sqrt_det = jet_sqrt(det)
    except SingularJet as exc:
        raise SingularPoint(f"degenerate metric in chart {chart.name!r}: {exc}") from None
    # symmetrize the inverse exactly (cofactors of a symmetric matrix are symmetric up to roundoff)
    g_inv = tuple(tuple(g_inv[min(i, j)][max(i, j)] for j in range(3)) for i in range(3))
    return MetricAtPoint(chart, p, g_jet, g_inv, sqrt_det)


def metric_from_embedding(chart, p) -> Tuple[np.ndarray, np.ndarray]:
    """g_ij and g_ij,k read off a second-order jet of the embedding alone.

    Independent of the chart's analytic Jacobian; used to cross-check it.
    """
    chart = get_chart(chart)
    p = np.asarray(p, dtype=float)
    _check_domain(chart, p)
    x = chart.embed(coordinate_jets(p))
    jac = np.stack(np.broadcast_arrays(*[c.grad for c in x]), axis=-2)  # (..., a, i)
    hess = np.stack(np.broadcast_arrays(*[c.hessian_matrix() for c in x]), axis=-3)  # (..., a, i, k)
    g = np.einsum("...ai,...aj->...ij", jac, jac)
    dg = np.einsum("...aik,...aj->...ijk", hess, jac) + np.einsum("...ai,...ajk->...ijk", jac, hess)
    return g, dg


def christoffel(m: MetricAtPoint) -> np.ndarray:
    """Christoffel symbols of the second kind, ``gamma[..., k, i, j] = Gamma^k_ij``."""
    dg = m.dg
    # first kind: [ij, m] = 1/2 (g_im,j + g_jm,i - g_ij,m)
    first = 0.5 * (
        np.einsum("...imj->...ijm", dg) + np.einsum("...jmi->...ijm", dg) - dg
    )
    return np.einsum("...km,...ijm->...kij", m.g_inv, first)


def christoffel_jets(m: MetricAtPoint):
    """Christoffel symbols as jets (one derivative order remains)."""
    dg = [[[jet_partial(m.g_jet[i][j], k) for k in range(3)] for j in range(3)] for i in range(3)]
    first = [
        [[0.5 * (dg[i][mm][j] + dg[j][mm][i] - dg[i][j][mm]) for mm in range(3)] for j in range(3)]
        for i in range(3)
    ]
    out = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for k in range(3):
        for i in range(3):
            for j in range(i, 3):
                acc = m.g_inv_jet[k][0] * first[i][j][0]
                acc = acc + m.g_inv_jet[k][1] * first[i][j][1]
                acc = acc + m.g_inv_jet[k][2] * first[i][j][2]
                out[k][i][j] = out[k][j][i] = acc
    return tuple(tuple(tuple(row) for row in plane) for plane in out)


# ---------------------------------------------------------------------------
# coordinate maps


def to_cartesian(chart, p) -> np.ndarray:
    chart = get_chart(chart)
    p = np.asarray(p, dtype=float)
    _check_domain(chart, p)
    x = chart.embed(tuple(jet_const(p[..., k]) for k in range(3)))
    return np.stack(np.broadcast_arrays(*[c.value for c in x]), axis=-1)


def from_cartesian(chart, x) -> np.ndarray:
    chart = get_chart(chart)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise OutOfDomain("non-finite Cartesian coordinates")
    try:
        q = chart.inverse(tuple(jet_const(x[..., k]) for k in range(3)))
    except SingularJet:
        raise SingularPoint(f"point is on the singular set of chart {chart.name!r}") from None
    p = np.stack(np.broadcast_arrays(*[c.value for c in q]), axis=-1)
    if not np.all(chart.regular(p)):
        raise SingularPoint(f"point is on the singular set of chart {chart.name!r}")
    return p


def _matvec(a: JetMatrix, v: Sequence[Jet2]) -> JetTriple:
    return tuple(a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] for i in range(3))


def pullback_displacement(src, dst, field_fn, p_dst) -> VecField:
    """Re-express a displacement field given in chart ``src`` in chart ``dst``.

    ``field_fn`` maps src-coordinate jets to the field's components in the
    src coordinate basis.  The result is a :class:`VecField` in the dst basis
    at ``p_dst`` carrying full second-order jets (chain rule through the two
    embeddings).
    """
    src, dst = get_chart(src), get_chart(dst)
    p_dst = np.asarray(p_dst, dtype=float)
    _check_domain(dst, p_dst)
    q_dst = coordinate_jets(p_dst)
    if src.name == dst.name:
        return VecField(tuple(field_fn(q_dst)), dst.name, p_dst)
    try:
        x = dst.embed(q_dst)
        q_src = src.inverse(x)
        v_src = field_fn(q_src)
        cart = _matvec(src.jacobian(q_src), v_src)
        j_inv, _ = invert3(dst.jacobian(q_dst))
    except SingularJet as exc:
        raise SingularPoint(f"pullback hit a singular set: {exc}") from None
    return VecField(_matvec(j_inv, cart), dst.name, p_dst)


def pushforward_to_cartesian(chart, v: VecField) -> np.ndarray:
    """Cartesian components (values only) of a vector given in ``chart``."""
    chart = get_chart(chart)
    q = tuple(jet_const(v.point[..., k]) for k in range(3))
    J = chart.jacobian(q)
    out = _matvec(J, v.components)
    return np.stack(np.broadcast_arrays(*[c.value for c in out]), axis=-1)
