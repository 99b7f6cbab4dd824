"""Analytic displacement fields used as test vehicles.

A :class:`DisplacementField` is a closure over jets: given the coordinates of
its defining chart as jets (in whatever variables the caller differentiates
with respect to), it returns the field's components in that chart's
coordinate basis.  Evaluating in another chart goes through
:func:`~formelastic.charts.pullback_displacement`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..charts import get_chart, pullback_displacement
from ..errors import InvalidSpec
from ..jets import Jet2, jet_const, jet_recip, jet_sqrt
from ..tensors import VecField

__all__ = [
    "FieldSpec",
    "DisplacementField",
    "FIELD_KINDS",
    "PRESETS",
    "MONOMIALS",
    "make_field",
    "load_field_spec",
    "random_polynomial_batch",
    "random_scalar_batch",
    "rigid_generators",
    "radial_unit_normal",
    "lame_sphere_constants",
    "lame_cylinder_constants",
]

FIELD_KINDS = (
    "polynomial",
    "rigid_translation",
    "rigid_rotation",
    "dilation",
    "lame_sphere",
    "lame_cylinder",
    "custom_preset",
)

# all exponent triples of total degree <= 3, in a fixed order
MONOMIALS: Tuple[Tuple[int, int, int], ...] = tuple(
    e for d in range(4) for e in sorted(
        (t for t in itertools.product(range(4), repeat=3) if sum(t) == d), reverse=True
    )
)


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    params: object = field(default_factory=dict)
    chart: str = "cartesian"

    @classmethod
    def from_dict(cls, data: dict) -> "FieldSpec":
        if not isinstance(data, dict) or "kind" not in data:
            raise InvalidSpec("a field spec needs at least a 'kind' entry")
        return cls(kind=data["kind"], params=data.get("params", {}), chart=data.get("chart", "cartesian"))


@dataclass(frozen=True, eq=False)
class DisplacementField:
    chart: str
    fn: Callable[[Sequence[Jet2]], Tuple[Jet2, Jet2, Jet2]] = field(repr=False)
    label: str = ""

    def __call__(self, q):
        return self.fn(q)

    def evaluate(self, chart, p) -> VecField:
        """Components (with full 2-jets) in ``chart`` at ``p``."""
        return pullback_displacement(self.chart, chart, self.fn, p)


def load_field_spec(path) -> FieldSpec:
    with open(Path(path), "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"{path}: {exc}") from None
    return FieldSpec.from_dict(data)


# ---------------------------------------------------------------------------
# polynomials


def _powers(q: Sequence[Jet2]) -> List[List[Jet2]]:
    out = []
    for qk in q:
        p = [jet_const(1.0), qk]
        p.append(qk * qk)
        p.append(p[2] * qk)
        out.append(p)
    return out


def _monomial(pw, e) -> Jet2:
    a, b, c = e
    term = None
    for k, n in enumerate((a, b, c)):
        if n:
            term = pw[k][n] if term is None else term * pw[k][n]
    return jet_const(1.0) if term is None else term


def _polynomial_fn(terms: Sequence[Tuple[int, Tuple[int, int, int], float]]):
    def fn(q):
        pw = _powers(q)
        comps: List[Jet2] = [jet_const(0.0)] * 3
        for comp, e, coef in terms:
            comps[comp] = comps[comp] + _monomial(pw, e) * coef
        return tuple(comps)

    return fn


def _parse_polynomial(params) -> list:
    entries = params.get("terms") if isinstance(params, dict) else params
    if not isinstance(entries, list):
        raise InvalidSpec("polynomial params must be a list of {target_component, exponents, coefficient}")
    terms = []
    for t in entries:
        try:
            comp = int(t["target_component"])
            e = tuple(int(x) for x in t["exponents"])
            coef = float(t["coefficient"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"bad polynomial term {t!r}: {exc}") from None
        if comp not in (0, 1, 2) or len(e) != 3 or min(e) < 0:
            raise InvalidSpec(f"bad polynomial term {t!r}")
        if sum(e) > 3:
            raise InvalidSpec("polynomial degree is capped at 3 so that 2-jets stay exact")
        terms.append((comp, e, coef))
    return terms


def random_polynomial_batch(rng: np.random.Generator, n_fields: int, chart: str, label: str = "poly") -> DisplacementField:
    """``n_fields`` random cubic vector fields evaluated together.

    Coefficients are uniform in [-1, 1] with shape ``(n_fields, 1)``, so
    evaluating at ``P`` points yields jets of batch shape ``(n_fields, P)``.
    """
    coef = rng.uniform(-1.0, 1.0, size=(3, len(MONOMIALS), n_fields, 1))

    def fn(q):
        pw = _powers(q)
        monos = [_monomial(pw, e) for e in MONOMIALS]
        comps = []
        for i in range(3):
            acc = monos[0] * coef[i, 0]
            for m_idx in range(1, len(MONOMIALS)):
                acc = acc + monos[m_idx] * coef[i, m_idx]
            comps.append(acc)
        return tuple(comps)

    return DisplacementField(get_chart(chart).name, fn, label)


def random_scalar_batch(rng: np.random.Generator, n_fields: int):
    """Random cubic scalar polynomials; returns a jet-callable q -> Jet2."""
    coef = rng.uniform(-1.0, 1.0, size=(len(MONOMIALS), n_fields, 1))

    def fn(q):
        pw = _powers(q)
        acc = _monomial(pw, MONOMIALS[0]) * coef[0]
        for m_idx in range(1, len(MONOMIALS)):
            acc = acc + _monomial(pw, MONOMIALS[m_idx]) * coef[m_idx]
        return acc

    return fn


# ---------------------------------------------------------------------------
# rigid motions and dilation (defined in Cartesian coordinates)


def _vec3(params, key, default):
    value = params.get(key, default) if isinstance(params, dict) else default
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise InvalidSpec(f"{key} must be three numbers") from None
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InvalidSpec(f"{key} must be three finite numbers")
    return arr


def _translation_fn(d):
    def fn(q):
        return tuple(jet_const(float(d[i])) + 0.0 * q[i] for i in range(3))

    return fn


def _rotation_fn(w, c):
    def fn(q):
        x = [q[i] - float(c[i]) for i in range(3)]
        return (
            x[2] * float(w[1]) - x[1] * float(w[2]),
            x[0] * float(w[2]) - x[2] * float(w[0]),
            x[1] * float(w[0]) - x[0] * float(w[1]),
        )

    return fn


def _dilation_fn(s):
    def fn(q):
        return tuple(qk * s for qk in q)

    return fn


def rigid_generators() -> List[DisplacementField]:
    """The six infinitesimal rigid motions: three translations, three rotations."""
    out = []
    for k, name in enumerate("xyz"):
        out.append(DisplacementField("cartesian", _translation_fn(np.eye(3)[k]), f"translation_{name}"))
    for k, name in enumerate("xyz"):
        out.append(DisplacementField("cartesian", _rotation_fn(np.eye(3)[k], np.zeros(3)), f"rotation_{name}"))
    return out


def radial_unit_normal() -> DisplacementField:
    """x / |x|, the outward unit normal of spheres about the origin (Cartesian)."""

    def fn(q):
        inv = jet_recip(jet_sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]))
        return tuple(qk * inv for qk in q)

    return DisplacementField("cartesian", fn, "radial_normal")


# ---------------------------------------------------------------------------
# Lamé thick-walled vessels under internal pressure


def _lame_params(params) -> Tuple[float, float, float, float, float]:
    if not isinstance(params, dict):
        raise InvalidSpec("Lamé params must be an object")
    try:
        a = float(params.get("a", 1.0))
        b = float(params.get("b", 2.0))
        p_i = float(params.get("p_i", 1.0))
        lam = float(params.get("lambda", 1.0))
        mu = float(params.get("mu", 1.0))
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(str(exc)) from None
    if not 0.0 < a < b:
        raise InvalidSpec("Lamé fields need 0 < a < b")
    if not (mu > 0 and lam + 2.0 * mu / 3.0 > 0):
        raise InvalidSpec("Lamé fields need mu > 0 and a positive bulk modulus")
    return a, b, p_i, lam, mu


def lame_sphere_constants(a: float, b: float, p_i: float, lam: float, mu: float) -> Tuple[float, float]:
    """Coefficients of u_r = A r + B / r^2 for a hollow sphere.

    Boundary conditions: radial stress -p_i at r = a, traction-free at r = b.
    The radial stress of this family is (3 lam + 2 mu) A - 4 mu B / r^3.
    """
    cube = b**3 - a**3
    A = p_i * a**3 / ((3.0 * lam + 2.0 * mu) * cube)
    B = p_i * a**3 * b**3 / (4.0 * mu * cube)
    return A, B


def lame_cylinder_constants(a: float, b: float, p_i: float, lam: float, mu: float) -> Tuple[float, float]:
    """Coefficients of u_r = A r + B / r for a thick cylinder in plane strain.

    Radial stress is 2 (lam + mu) A - 2 mu B / r^2; same boundary conditions
    as :func:`lame_sphere_constants`.
    """
    sq = b**2 - a**2
    A = p_i * a**2 / (2.0 * (lam + mu) * sq)
    B = p_i * a**2 * b**2 / (2.0 * mu * sq)
    return A, B


def _lame_sphere_fn(A, B):
    def fn(q):
        r = q[0]
        inv_r = jet_recip(r)
        zero = 0.0 * q[1]
        return (r * A + inv_r * inv_r * B, zero, zero)

    return fn


def _lame_cylinder_fn(A, B):
    def fn(q):
        r = q[0]
        zero = 0.0 * q[1]
        return (r * A + jet_recip(r) * B, zero, zero)

    return fn


# ---------------------------------------------------------------------------
# presets

PRESETS: Dict[str, FieldSpec] = {
    # gradient of the harmonic potential x^2 - y^2 + x y z
    "harmonic_gradient": FieldSpec(
        "polynomial",
        [
            {"target_component": 0, "exponents": [1, 0, 0], "coefficient": 2.0},
            {"target_component": 0, "exponents": [0, 1, 1], "coefficient": 1.0},
            {"target_component": 1, "exponents": [0, 1, 0], "coefficient": -2.0},
            {"target_component": 1, "exponents": [1, 0, 1], "coefficient": 1.0},
            {"target_component": 2, "exponents": [1, 1, 0], "coefficient": 1.0},
        ],
    ),
    # curl of (0, 0, psi) with the harmonic psi = x^3 - 3 x y^2
    "harmonic_curl": FieldSpec(
        "polynomial",
        [
            {"target_component": 0, "exponents": [1, 1, 0], "coefficient": -6.0},
            {"target_component": 1, "exponents": [2, 0, 0], "coefficient": -3.0},
            {"target_component": 1, "exponents": [0, 2, 0], "coefficient": 3.0},
        ],
    ),
    "uniaxial": FieldSpec(
        "polynomial", [{"target_component": 0, "exponents": [1, 0, 0], "coefficient": 1.0}]
    ),
    "quadratic_x": FieldSpec(
        "polynomial", [{"target_component": 0, "exponents": [2, 0, 0], "coefficient": 1.0}]
    ),
}


def make_field(spec: FieldSpec) -> DisplacementField:
    """Build the displacement closure described by ``spec``."""
    if spec.kind not in FIELD_KINDS:
        raise InvalidSpec(f"unknown field kind {spec.kind!r}; expected one of {FIELD_KINDS}")
    params = spec.params
    try:
        chart = get_chart(spec.chart).name
    except KeyError as exc:
        raise InvalidSpec(str(exc)) from None

    if spec.kind == "custom_preset":
        name = params.get("name") if isinstance(params, dict) else params
        if name not in PRESETS:
            raise InvalidSpec(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
        preset = PRESETS[name]
        return DisplacementField(chart, make_field(FieldSpec(preset.kind, preset.params, chart)).fn, str(name))
    if spec.kind == "polynomial":
        return DisplacementField(chart, _polynomial_fn(_parse_polynomial(params)), "polynomial")

    if spec.kind in ("rigid_translation", "rigid_rotation", "dilation") and chart != "cartesian":
        raise InvalidSpec(f"{spec.kind} fields are defined in the cartesian chart")
    if spec.kind == "rigid_translation":
        return DisplacementField(chart, _translation_fn(_vec3(params, "direction", [1.0, 0.0, 0.0])), spec.kind)
    if spec.kind == "rigid_rotation":
        w = _vec3(params, "axis", [0.0, 0.0, 1.0])
        c = _vec3(params, "center", [0.0, 0.0, 0.0])
        return DisplacementField(chart, _rotation_fn(w, c), spec.kind)
    if spec.kind == "dilation":
        s = float(params.get("scale", 1.0)) if isinstance(params, dict) else 1.0
        return DisplacementField(chart, _dilation_fn(s), spec.kind)

    a, b, p_i, lam, mu = _lame_params(params)
    if spec.kind == "lame_sphere":
        if chart != "spherical":
            raise InvalidSpec("lame_sphere is defined in the spherical chart")
        return DisplacementField(chart, _lame_sphere_fn(*lame_sphere_constants(a, b, p_i, lam, mu)), spec.kind)
    if chart != "cylindrical":
        raise InvalidSpec("lame_cylinder is defined in the cylindrical chart")
    return DisplacementField(chart, _lame_cylinder_fn(*lame_cylinder_constants(a, b, p_i, lam, mu)), spec.kind)
