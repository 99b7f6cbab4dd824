"""Randomized verification suites.

Each suite evaluates one family of identities on seeded random fields and
points and records the worst error per (check, chart).  Suites are
deterministic for a fixed seed and configuration: every (suite, chart) pair
draws from its own generator derived from the seed, so the result of one
suite never depends on which other suites ran.
"""

from __future__ import annotations

import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .. import __version__
from .. import oracle
from ..charts import (
    BUILTIN_CHARTS,
    coordinate_jets,
    from_cartesian,
    get_chart,
    metric_at,
    metric_from_embedding,
    pushforward_to_cartesian,
    to_cartesian,
)
from ..elasticity import (
    ElasticModuli,
    adapted_boundary,
    boundary_point,
    cn_residual_classical,
    cn_residual_form,
    cn_residual_gradcurl,
    strain_covariant,
    strain_lie,
    stress,
    traction_adapted,
    traction_cauchy,
    traction_form,
    volume_expansion,
)
from ..errors import ConfigError, FormElasticError, UnknownSuite
from ..exterior import codifferential, exterior_derivative, flat, hodge_star, interior_product, sharp, wedge
from ..jets import Jet2, jet_atan2, jet_cos, jet_recip, jet_sin, jet_sqrt
from ..lie import lie_bracket, lie_cov2, lie_cov2_product_rule, lie_oneform, lie_oneform_coordinate, lie_scalar, metric_tensor
from ..tensors import CovTensor2, KForm, VecField
from .fields import (
    FieldSpec,
    make_field,
    radial_unit_normal,
    random_polynomial_batch,
    random_scalar_batch,
    rigid_generators,
)
from .report import Recorder, SuiteReport

__all__ = ["SuiteConfig", "SUITES", "INVARIANTS", "TOLERANCES", "run_suite"]

# default tolerances; "two" = routes chaining two derivative orders
TOLERANCES = {
    "two_order": 1e-9,
    "one_order": 1e-10,
    "exact_zero": 1e-11,
    "dd_zero": 1e-13,
    "star_star": 1e-11,
    "musical": 1e-12,
    "lie_routes": 1e-11,
    "product_rule": 1e-10,
    "fd": 1e-6,
    "jet_algebra": 1e-14,
    "jet_ulps": 4 * np.finfo(float).eps,
    "metric_inverse": 1e-12,
    "metric_embedding": 1e-12,
    "compatibility": 1e-10,
    "roundtrip": 1e-12,
    "pushforward": 1e-10,
    "lame_pressure": 1e-8,
}


@dataclass
class SuiteConfig:
    seed: int = 42
    points: int = 20
    fields: int = 100
    traction_fields: int = 50
    moduli: int = 5
    geometry_points: int = 100
    lame_points: int = 50
    tol_rel: Optional[float] = None
    charts: Tuple[str, ...] = BUILTIN_CHARTS
    lame: Dict[str, float] = field(
        default_factory=lambda: {"a": 1.0, "b": 2.0, "p_i": 1.0, "lambda": 1.0, "mu": 1.0}
    )

    def __post_init__(self):
        for name in ("points", "fields", "traction_fields", "moduli", "geometry_points", "lame_points"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be a positive integer")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.tol_rel is not None and not (self.tol_rel > 0):
            raise ConfigError("tol_rel must be positive")
        if not self.charts:
            raise ConfigError("at least one chart is required")
        for c in self.charts:
            try:
                get_chart(c)
            except KeyError as exc:
                raise ConfigError(str(exc)) from None
        self.charts = tuple(dict.fromkeys(self.charts))

    def tol(self, key: str) -> float:
        return TOLERANCES[key] if self.tol_rel is None else self.tol_rel

    def rng(self, *names: str) -> np.random.Generator:
        entropy = [self.seed] + [zlib.crc32(n.encode("utf-8")) for n in names]
        return np.random.default_rng(entropy)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["charts"] = list(self.charts)
        return d


def _labels(prefix: str, n: int) -> List[str]:
    return [f"{prefix}#{i}" for i in range(n)]


def _random_moduli(rng: np.random.Generator, n: int) -> List[ElasticModuli]:
    out = []
    for _ in range(n):
        mu = rng.uniform(0.2, 2.0)
        lam = rng.uniform(-0.5 * mu, 2.0)  # keeps lam + 2 mu / 3 > 0
        out.append(ElasticModuli(lam, mu))
    return out


def _form(degree: int, comps, chart: str, p) -> KForm:
    return KForm(degree, tuple(comps), chart, p)


# ---------------------------------------------------------------------------
# jets


def _composite(q):
    x, y, z = q
    return (
        jet_sin(x * y) * jet_sqrt(1.0 + z * z)
        + jet_atan2(y, x + 3.0)
        + jet_cos(z) * jet_recip(2.0 + x * x)
        + x * x * x * y
    )


def _random_jet(rng, n, scale):
    return Jet2(
        rng.uniform(-scale, scale, n),
        rng.uniform(-scale, scale, (n, 3)),
        rng.uniform(-scale, scale, (n, 6)),
    )


def _jet_channels(j: Jet2) -> np.ndarray:
    return np.concatenate([np.asarray(j.value)[..., None], j.grad, j.hess], axis=-1)


def suite_jets_selftest(cfg: SuiteConfig, rec: Recorder) -> None:
    rng = cfg.rng("jets_selftest")
    n = 5 * cfg.points
    p = rng.uniform(-2.0, 2.0, (n, 3))
    h = 1e-5
    f = _composite(coordinate_jets(p))
    fd_grad = np.empty((n, 3))
    fd_hess = np.empty((n, 3, 3))
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        plus, minus = _composite(coordinate_jets(p + e)), _composite(coordinate_jets(p - e))
        fd_grad[:, k] = (plus.value - minus.value) / (2 * h)
        fd_hess[:, :, k] = (plus.grad - minus.grad) / (2 * h)
    rec.compare("jets.fd_grad", "-", f.grad, fd_grad, tol=cfg.tol("fd"), points=p)
    rec.compare("jets.fd_hess", "-", f.hessian_matrix(), fd_hess, tol=cfg.tol("fd"), points=p, comp_ndim=2)

    a, b, c = (_random_jet(rng, n, 1e3) for _ in range(3))
    rec.compare("jets.mul_commutative", "-", _jet_channels(a * b), _jet_channels(b * a),
                tol=cfg.tol("jet_algebra"), points=p)
    rec.compare("jets.mul_associative", "-", _jet_channels((a * b) * c), _jet_channels(a * (b * c)),
                tol=cfg.tol("jet_algebra"), points=p)

    # chain rule against closed forms on affine inputs s = s0 + w . q
    s0 = rng.uniform(0.5, 2.0, n)
    w = rng.uniform(-1.0, 1.0, (n, 3))
    s = Jet2(s0, w)
    ww = np.einsum("ni,nj->nij", w, w)
    # binary ops on two affine jets
    t0 = rng.uniform(0.5, 2.0, n)
    wt = rng.uniform(-1.0, 1.0, (n, 3))
    t = Jet2(t0, wt)
    sym = np.einsum("ni,nj->nij", w, wt)
    sym = (sym + np.swapaxes(sym, -1, -2))[:, [0, 0, 0, 1, 1, 2], [0, 1, 2, 1, 2, 2]]
    binary = {
        "add": (s + t, np.concatenate([(s0 + t0)[:, None], w + wt, np.zeros((n, 6))], -1)),
        "mul": (s * t, np.concatenate([(s0 * t0)[:, None], t0[:, None] * w + s0[:, None] * wt, sym], -1)),
    }
    for name, (out, expect) in binary.items():
        rec.compare(f"jets.closed_form_{name}", "-", _jet_channels(out), expect, tol=cfg.tol("jet_ulps"), points=p)

    closed = {
        "recip": (1 / s0, -1 / s0**2, 2 / s0**3, jet_recip),
        "sqrt": (np.sqrt(s0), 0.5 / np.sqrt(s0), -0.25 * s0**-1.5, jet_sqrt),
        "sin": (np.sin(s0), np.cos(s0), -np.sin(s0), jet_sin),
        "cos": (np.cos(s0), -np.sin(s0), -np.cos(s0), jet_cos),
    }
    for name, (f0, f1, f2, op) in closed.items():
        out = op(s)
        expect = np.concatenate(
            [f0[:, None], f1[:, None] * w, (f2[:, None, None] * ww)[:, [0, 0, 0, 1, 1, 2], [0, 1, 2, 1, 2, 2]]],
            axis=-1,
        )
        rec.compare(f"jets.closed_form_{name}", "-", _jet_channels(out), expect, tol=cfg.tol("jet_ulps"), points=p)


# ---------------------------------------------------------------------------
# geometry


def suite_geometry(cfg: SuiteConfig, rec: Recorder) -> None:
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("geometry", name)
        n = cfg.geometry_points
        p = chart.sample_points(rng, n)
        m = metric_at(chart, p)
        h = 1e-5
        jac = np.empty((n, 3, 3))
        for k in range(3):
            e = np.zeros(3)
            e[k] = h
            jac[:, :, k] = (to_cartesian(chart, p + e) - to_cartesian(chart, p - e)) / (2 * h)
        g_fd = np.einsum("nai,naj->nij", jac, jac)
        rec.compare("geometry.metric_fd", name, m.g, g_fd, tol=cfg.tol("fd"), points=p, comp_ndim=2)

        g_emb, dg_emb = metric_from_embedding(chart, p)
        rec.compare("geometry.metric_embedding", name, m.g, g_emb, tol=cfg.tol("metric_embedding"), points=p, comp_ndim=2)
        rec.compare("geometry.dmetric_embedding", name, m.dg, dg_emb, tol=cfg.tol("metric_embedding"), points=p, comp_ndim=3)

        eye = np.broadcast_to(np.eye(3), (n, 3, 3))
        rec.compare("geometry.metric_inverse", name, np.einsum("nij,njk->nik", m.g_inv, m.g), eye,
                    tol=cfg.tol("metric_inverse"), points=p, comp_ndim=2)
        rec.compare("geometry.metric_symmetric", name, m.g, np.swapaxes(m.g, -1, -2), tol=0.0, kind="abs",
                    points=p, comp_ndim=2)

        gam = m.gamma
        compat = m.dg - np.einsum("nmj,nmik->nijk", m.g, gam) - np.einsum("nim,nmjk->nijk", m.g, gam)
        rec.compare("geometry.metric_compatibility", name, compat, 0.0, tol=TOLERANCES["compatibility"],
                    kind="abs", points=p, comp_ndim=3)
        rec.compare("geometry.christoffel_symmetry", name, gam, np.swapaxes(gam, -1, -2), tol=0.0, kind="abs",
                    points=p, comp_ndim=3)
        if name == "cartesian":
            rec.compare("geometry.cartesian_flat", name, np.concatenate([m.dg.reshape(n, -1), gam.reshape(n, -1)], -1),
                        0.0, tol=0.0, kind="abs", points=p)

        back = from_cartesian(chart, to_cartesian(chart, p))
        rec.compare("geometry.roundtrip", name, back, p, tol=cfg.tol("roundtrip"), points=p)

        field = random_polynomial_batch(rng, cfg.points, "cartesian")
        v = field.evaluate(chart, p[: cfg.points])
        direct = field.evaluate("cartesian", to_cartesian(chart, p[: cfg.points]))
        pushed = pushforward_to_cartesian(chart, v)
        rec.compare("geometry.pullback_pushforward", name, pushed, direct.values(), tol=cfg.tol("pushforward"),
                    points=p[: cfg.points], labels=_labels("poly", cfg.points))


# ---------------------------------------------------------------------------
# structural identities


def suite_structural(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.fields
    labels = _labels("poly", F)
    tz, tdd = TOLERANCES["exact_zero"], TOLERANCES["dd_zero"]
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("structural", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        q = coordinate_jets(p)
        scal = [random_scalar_batch(rng, F)(q) for _ in range(8)]
        f0 = _form(0, scal[:1], name, p)
        w1 = _form(1, scal[1:4], name, p)
        w2 = _form(2, scal[4:7], name, p)
        w3 = _form(3, scal[7:8], name, p)
        v = random_polynomial_batch(rng, F, name)(q)
        v = VecField(v, name, p)
        w = VecField(random_polynomial_batch(rng, F, name)(q), name, p)

        kw = dict(points=p, labels=labels)
        rec.compare("structural.dd0", name, exterior_derivative(exterior_derivative(f0)).values(), 0.0,
                    tol=tdd, kind="abs", **kw)
        rec.compare("structural.dd1", name, exterior_derivative(exterior_derivative(w1)).values(), 0.0,
                    tol=tdd, kind="abs", **kw)
        for form in (f0, w1, w2, w3):
            rec.compare(f"structural.star_star_{form.degree}", name, hodge_star(m, hodge_star(m, form)).values(),
                        form.values(), tol=cfg.tol("star_star"), **kw)
        rec.compare("structural.sharp_flat", name, sharp(m, flat(m, v)).values(), v.values(),
                    tol=cfg.tol("musical"), **kw)
        rec.compare("structural.flat_sharp", name, flat(m, sharp(m, w1)).values(), w1.values(),
                    tol=cfg.tol("musical"), **kw)
        rec.compare("structural.delta_delta_2", name, codifferential(m, codifferential(m, w2)).values(), 0.0,
                    tol=tz, kind="abs", **kw)
        rec.compare("structural.delta_delta_3", name, codifferential(m, codifferential(m, w3)).values(), 0.0,
                    tol=tz, kind="abs", **kw)

        a1 = _form(1, scal[4:7], name, p)
        rec.compare("structural.wedge_anticommute", name, wedge(w1, a1).values(), (-wedge(a1, w1)).values(),
                    tol=cfg.tol("jet_algebra"), **kw)
        rec.compare("structural.wedge_graded", name, wedge(w1, w2).values(), wedge(w2, w1).values(),
                    tol=cfg.tol("jet_algebra"), **kw)
        # exact zero built from products, so normalize by |v|^2 |w|
        scale = np.max(np.abs(v.values()), -1) ** 2 * np.max(np.abs(w2.values()), -1)
        rec.compare("structural.interior_twice", name,
                    interior_product(v, interior_product(v, w2)).values() / scale[..., None], 0.0,
                    tol=tz, kind="abs", **kw)

        rec.compare("structural.bracket_antisymmetric", name, lie_bracket(v, w).values(),
                    (-lie_bracket(w, v)).values(), tol=cfg.tol("lie_routes"), **kw)
        rec.compare("structural.cartan_vs_coordinate", name, lie_oneform(v, w1).values(),
                    lie_oneform_coordinate(v, w1).values(), tol=cfg.tol("lie_routes"), **kw)

        g = metric_tensor(m)
        t = CovTensor2.from_upper(lambda i, j: scal[[1, 2, 3, 4, 5, 6][min(i, j) + max(i, j)]] * (1.0 + i * j),
                                  name, p)
        for tname, tens in (("metric", g), ("random", t)):
            rec.compare(f"structural.lie_cov2_product_expansion_{tname}", name, lie_cov2(v, tens, m).values(),
                        lie_cov2_product_rule(v, tens).values(), tol=cfg.tol("lie_routes"), comp_ndim=2, **kw)
        lg = lie_cov2(v, g, m).values()
        rec.compare("structural.lie_g_symmetric", name, lg, np.swapaxes(lg, -1, -2), tol=0.0, kind="abs",
                    comp_ndim=2, **kw)
        ft = t.scaled(f0[0])
        rhs = t.scaled(lie_scalar(v, f0)[0]) + lie_cov2(v, t).scaled(f0[0])
        rec.compare("structural.lie_product_rule", name, lie_cov2(v, ft).values(), rhs.values(),
                    tol=cfg.tol("product_rule"), comp_ndim=2, **kw)


# ---------------------------------------------------------------------------
# bridge identities between forms and vector calculus


def suite_bridge(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.fields
    labels = _labels("poly", F)
    tol = cfg.tol("two_order")
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("bridge", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        q = coordinate_jets(p)
        f = _form(0, [random_scalar_batch(rng, F)(q)], name, p)
        v = VecField(random_polynomial_batch(rng, F, name)(q), name, p)
        u = flat(m, v)
        kw = dict(points=p, labels=labels)
        rec.compare("bridge.grad", name, sharp(m, exterior_derivative(f)).values(),
                    oracle.grad_classical(m, f).values(), tol=tol, **kw)
        div_o = oracle.div_classical(m, v).values()
        rec.compare("bridge.div", name, hodge_star(m, exterior_derivative(hodge_star(m, u))).values(), div_o,
                    tol=tol, **kw)
        rec.compare("bridge.curl", name, sharp(m, hodge_star(m, exterior_derivative(u))).values(),
                    oracle.curl_classical(m, v).values(), tol=tol, **kw)
        rec.compare("bridge.codifferential_divergence", name, codifferential(m, u).values(), -div_o, tol=tol, **kw)
        rec.compare("bridge.volume_expansion", name, volume_expansion(m, u).values(), div_o, tol=tol, **kw)


# ---------------------------------------------------------------------------
# strain


def suite_strain_equiv(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.fields
    labels = _labels("poly", F)
    tol = cfg.tol("one_order")
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("strain_equiv", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        v = random_polynomial_batch(rng, F, name).evaluate(chart, p)
        u = flat(m, v)
        kw = dict(points=p, labels=labels, comp_ndim=2)
        eps_cov = strain_covariant(m, u).values()
        rec.compare("strain.lie_vs_covariant", name, strain_lie(m, v).values(), eps_cov, tol=tol, **kw)
        cd = oracle.cov_deriv_covector(m, u).values()
        rec.compare("strain.covariant_vs_oracle", name, 0.5 * (cd + np.swapaxes(cd, -1, -2)), eps_cov, tol=tol, **kw)


# ---------------------------------------------------------------------------
# Cauchy-Navier operator


def suite_cn_equiv(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.fields
    labels = _labels("poly", F)
    tol = cfg.tol("two_order")
    moduli = _random_moduli(cfg.rng("cn_equiv", "moduli"), cfg.moduli)
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("cn_equiv", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        v = random_polynomial_batch(rng, F, name).evaluate(chart, p)
        u = flat(m, v)
        for k, mod in enumerate(moduli):
            kw = dict(points=p, labels=[f"{s}@moduli#{k}" for s in labels])
            classical = flat(m, cn_residual_classical(mod, m, v)).values()
            form = cn_residual_form(mod, m, u).values()
            gradcurl = cn_residual_gradcurl(mod, m, u).values()
            # the form operator carries the opposite overall sign of the classical one
            rec.compare("cn.form_vs_classical", name, form, -classical, tol=tol, **kw)
            rec.compare("cn.gradcurl_vs_classical", name, gradcurl, classical, tol=tol, **kw)
            rec.compare("cn.form_vs_gradcurl", name, form, -gradcurl, tol=tol, **kw)
            sd = oracle.stress_divergence(m, stress(mod, m, u, v)).values()
            rec.compare("cn.stress_divergence", name, sd, classical, tol=tol, **kw)


# ---------------------------------------------------------------------------
# traction


def suite_traction_equiv(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.traction_fields
    labels = _labels("poly", F)
    tol = cfg.tol("two_order")
    mod = ElasticModuli(cfg.lame["lambda"], cfg.lame["mu"])
    normal_field = radial_unit_normal()
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("traction_equiv", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        v = random_polynomial_batch(rng, F, name).evaluate(chart, p)
        u = flat(m, v)
        kw = dict(points=p, labels=labels)
        if chart.unit_radial is not None:
            r = chart.unit_radial
            bp = adapted_boundary(m, r)
            t_c = traction_cauchy(mod, m, u, v, bp).values()
            t_f = traction_form(mod, m, u, v, bp).values()
            t_a = traction_adapted(mod, m, u, v, r).values()
            rec.compare("traction.form_vs_cauchy", name, t_f, t_c, tol=tol, **kw)
            rec.compare("traction.adapted_vs_cauchy", name, t_a, t_c, tol=tol, **kw)
            rec.compare("traction.adapted_vs_form", name, t_a, t_f, tol=tol, **kw)
        # a non-coordinate normal field (unit normals of spheres about the origin)
        bp = boundary_point(m, normal_field.evaluate(chart, p))
        rec.compare("traction.general_normal_form_vs_cauchy", name, traction_form(mod, m, u, v, bp).values(),
                    traction_cauchy(mod, m, u, v, bp).values(), tol=tol, **kw)


# ---------------------------------------------------------------------------
# rigid motions


def suite_killing(cfg: SuiteConfig, rec: Recorder) -> None:
    tz = TOLERANCES["exact_zero"]
    mod = ElasticModuli(cfg.lame["lambda"], cfg.lame["mu"])
    normal_field = radial_unit_normal()
    for name in cfg.charts:
        chart = get_chart(name)
        rng = cfg.rng("killing", name)
        p = chart.sample_points(rng, cfg.points)
        m = metric_at(chart, p)
        bp = boundary_point(m, normal_field.evaluate(chart, p))
        for gen in rigid_generators():
            v = gen.evaluate(chart, p)
            u = flat(m, v)
            kw = dict(points=p, label=gen.label, tol=tz, kind="abs")
            rec.compare("killing.lie_metric", name, lie_cov2(v, metric_tensor(m), m).values(), 0.0, comp_ndim=2, **kw)
            rec.compare("killing.strain_lie", name, strain_lie(m, v).values(), 0.0, comp_ndim=2, **kw)
            rec.compare("killing.strain_covariant", name, strain_covariant(m, u).values(), 0.0, comp_ndim=2, **kw)
            rec.compare("killing.stress", name, stress(mod, m, u, v).values(), 0.0, comp_ndim=2, **kw)
            rec.compare("killing.volume_expansion", name, volume_expansion(m, u).values(), 0.0, **kw)
            rec.compare("killing.traction_cauchy", name, traction_cauchy(mod, m, u, v, bp).values(), 0.0, **kw)
            rec.compare("killing.traction_form", name, traction_form(mod, m, u, v, bp).values(), 0.0, **kw)
            if chart.unit_radial is not None:
                rec.compare("killing.traction_adapted", name,
                            traction_adapted(mod, m, u, v, chart.unit_radial).values(), 0.0, **kw)
            rec.compare("killing.cn_form", name, cn_residual_form(mod, m, u).values(), 0.0, **kw)
            rec.compare("killing.cn_gradcurl", name, cn_residual_gradcurl(mod, m, u).values(), 0.0, **kw)
            rec.compare("killing.cn_classical", name, cn_residual_classical(mod, m, v).values(), 0.0, **kw)


# ---------------------------------------------------------------------------
# chart invariance of physical scalars


def _invariants(mod, chart, p, field, normal_field):
    m = metric_at(chart, p)
    v = field.evaluate(chart, p)
    u = flat(m, v)
    e = volume_expansion(m, u).values()[..., 0]
    eps = strain_lie(m, v).values()
    gi = m.g_inv
    eps_eps = np.einsum("...ik,...jl,...ij,...kl->...", gi, gi, eps, eps)
    bp = boundary_point(m, normal_field.evaluate(chart, p))
    t = traction_cauchy(mod, m, u, v, bp).values()
    t2 = np.einsum("...ij,...i,...j->...", gi, t, t)
    res = flat(m, cn_residual_classical(mod, m, v)).values()
    r2 = np.einsum("...ij,...i,...j->...", gi, res, res)
    return e, eps_eps, t2, r2


def suite_cross_chart(cfg: SuiteConfig, rec: Recorder) -> None:
    F = cfg.fields
    labels = _labels("poly", F)
    tol = cfg.tol("two_order")
    mod = ElasticModuli(cfg.lame["lambda"], cfg.lame["mu"])
    normal_field = radial_unit_normal()
    for name in cfg.charts:
        if name == "cartesian":
            continue
        chart = get_chart(name)
        rng = cfg.rng("cross_chart", name)
        p = chart.sample_points(rng, cfg.points)
        x = to_cartesian(chart, p)
        field = random_polynomial_batch(rng, F, "cartesian")
        here = _invariants(mod, chart, p, field, normal_field)
        there = _invariants(mod, "cartesian", x, field, normal_field)
        for check, a, b in zip(("cross.volume_expansion", "cross.strain_norm", "cross.traction_norm",
                                "cross.cn_residual_norm"), here, there):
            rec.compare(check, name, a[..., None], b[..., None], tol=tol, points=p, labels=labels)


# ---------------------------------------------------------------------------
# Lamé vessels


def suite_lame(cfg: SuiteConfig, rec: Recorder) -> None:
    lame = dict(cfg.lame)
    a, b, p_i = lame["a"], lame["b"], lame["p_i"]
    mod = ElasticModuli(lame["lambda"], lame["mu"])
    t2 = TOLERANCES["two_order"]
    for kind, name in (("lame_sphere", "spherical"), ("lame_cylinder", "cylindrical")):
        chart = get_chart(name)
        rng = cfg.rng("lame", name)
        field = make_field(FieldSpec(kind, lame, name))
        p = chart.sample_points(rng, cfg.lame_points)
        p[:, 0] = a + (b - a) * (0.01 + 0.98 * rng.random(cfg.lame_points))
        m = metric_at(chart, p)
        v = field.evaluate(chart, p)
        u = flat(m, v)
        kw = dict(points=p, label=kind, tol=t2, kind="abs")
        rec.compare("lame.classical_residual", name, cn_residual_classical(mod, m, v).values(), 0.0, **kw)
        rec.compare("lame.form_residual", name, cn_residual_form(mod, m, u).values(), 0.0, **kw)
        rec.compare("lame.gradcurl_residual", name, cn_residual_gradcurl(mod, m, u).values(), 0.0, **kw)
        rec.compare("lame.stress_divergence", name, oracle.stress_divergence(m, stress(mod, m, u, v)).values(), 0.0,
                    **kw)
        x = to_cartesian(chart, p)
        mc = metric_at("cartesian", x)
        rec.compare("lame.cartesian_residual", name,
                    cn_residual_classical(mod, mc, field.evaluate("cartesian", x)).values(), 0.0, **kw)

        for where, radius in (("inner", a), ("outer", b)):
            pb = p.copy()
            pb[:, 0] = radius
            mb = metric_at(chart, pb)
            vb = field.evaluate(chart, pb)
            ub = flat(mb, vb)
            t = traction_adapted(mod, mb, ub, vb, chart.unit_radial).values()
            expected = np.zeros_like(t)
            if where == "inner":
                expected[..., chart.unit_radial] = -p_i
                rec.compare("lame.inner_pressure", name, t, expected, tol=cfg.tol("lame_pressure"), points=pb,
                            label=kind)
            else:
                rec.compare("lame.outer_traction_free", name, t, expected, tol=t2, kind="abs", points=pb, label=kind)
            bp = adapted_boundary(mb, chart.unit_radial)
            rec.compare(f"lame.{where}_traction_routes", name, t, traction_cauchy(mod, mb, ub, vb, bp).values(),
                        tol=t2, kind="abs", points=pb, label=kind)


# ---------------------------------------------------------------------------

SUITES: Dict[str, Callable[[SuiteConfig, Recorder], None]] = {
    "jets_selftest": suite_jets_selftest,
    "geometry": suite_geometry,
    "structural": suite_structural,
    "bridge": suite_bridge,
    "strain_equiv": suite_strain_equiv,
    "cn_equiv": suite_cn_equiv,
    "traction_equiv": suite_traction_equiv,
    "killing": suite_killing,
    "cross_chart": suite_cross_chart,
    "lame": suite_lame,
}

# invariant -> check ids (all must appear in the "all" report)
INVARIANTS: Dict[str, Tuple[str, ...]] = {
    "jets: ops match closed-form derivatives": (
        "jets.closed_form_add", "jets.closed_form_mul", "jets.closed_form_recip",
        "jets.closed_form_sqrt", "jets.closed_form_sin", "jets.closed_form_cos"),
    "jets: multiplication is commutative and associative": ("jets.mul_commutative", "jets.mul_associative"),
    "jets: derivatives match central differences": ("jets.fd_grad", "jets.fd_hess"),
    "charts: metric matches finite differences of the embedding": (
        "geometry.metric_fd", "geometry.metric_embedding", "geometry.dmetric_embedding"),
    "charts: metric compatibility of the Christoffel symbols": (
        "geometry.metric_compatibility", "geometry.christoffel_symmetry"),
    "charts: the Cartesian chart is flat": ("geometry.cartesian_flat",),
    "charts: coordinate maps round trip": ("geometry.roundtrip", "geometry.pullback_pushforward"),
    "exterior: d d = 0": ("structural.dd0", "structural.dd1"),
    "exterior: star star = id": (
        "structural.star_star_0", "structural.star_star_1", "structural.star_star_2", "structural.star_star_3"),
    "exterior: flat and sharp are mutually inverse": ("structural.sharp_flat", "structural.flat_sharp"),
    "exterior: bridge to grad, div, curl": ("bridge.grad", "bridge.div", "bridge.curl"),
    "exterior: codifferential is minus the divergence": ("bridge.codifferential_divergence",),
    "exterior: delta delta = 0": ("structural.delta_delta_2", "structural.delta_delta_3"),
    "exterior: wedge and interior product algebra": (
        "structural.wedge_anticommute", "structural.wedge_graded", "structural.interior_twice"),
    "lie: Cartan and coordinate routes agree": ("structural.cartan_vs_coordinate",),
    "lie: L_v g is symmetric": ("structural.lie_g_symmetric",),
    "lie: rigid motions are Killing fields": ("killing.lie_metric",),
    "lie: product rule": (
        "structural.lie_product_rule", "structural.lie_cov2_product_expansion_metric",
        "structural.lie_cov2_product_expansion_random"),
    "lie: bracket antisymmetry": ("structural.bracket_antisymmetric",),
    "elasticity: strain equivalence": ("strain.lie_vs_covariant", "strain.covariant_vs_oracle"),
    "elasticity: Cauchy-Navier route equivalence": (
        "cn.form_vs_classical", "cn.gradcurl_vs_classical", "cn.form_vs_gradcurl"),
    "elasticity: traction route equivalence": (
        "traction.form_vs_cauchy", "traction.adapted_vs_cauchy", "traction.adapted_vs_form",
        "traction.general_normal_form_vs_cauchy"),
    "elasticity: rigid-motion annihilation": (
        "killing.strain_lie", "killing.strain_covariant", "killing.stress", "killing.volume_expansion",
        "killing.traction_cauchy", "killing.traction_form", "killing.traction_adapted",
        "killing.cn_form", "killing.cn_gradcurl", "killing.cn_classical"),
    "elasticity: cross-chart invariance": (
        "cross.volume_expansion", "cross.strain_norm", "cross.traction_norm", "cross.cn_residual_norm"),
    "oracle: stress divergence equals the Cauchy-Navier residual": ("cn.stress_divergence",),
    "oracle: classical operators agree with the exterior routes": ("bridge.grad", "bridge.div", "bridge.curl"),
    "harness: Lamé vessels are zero-residual witnesses": (
        "lame.classical_residual", "lame.form_residual", "lame.gradcurl_residual", "lame.stress_divergence",
        "lame.cartesian_residual", "lame.inner_pressure", "lame.outer_traction_free"),
}


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run one suite (or ``"all"``) and return its report."""
    cfg = config or SuiteConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {sorted(SUITES) + ['all']}")
    records = []
    for suite in names:
        rec = Recorder(suite)
        try:
            SUITES[suite](cfg, rec)
        except FormElasticError as exc:
            rec.fail(f"{suite}.error", "-", f"{type(exc).__name__}: {exc}", 0.0)
        records.extend(rec.records)
    records.sort(key=lambda r: (r.check, r.chart))
    return SuiteReport(suite=name, seed=cfg.seed, version=__version__, config=cfg.as_dict(), records=records)
