"""Single-point evaluation of named operations, printed as component tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..charts import get_chart, metric_at
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
from ..errors import InvalidSpec, UnknownOp
from ..exterior import flat
from ..jets import Jet2
from ..lie import lie_cov2, metric_tensor
from ..tensors import VecField
from .fields import FieldSpec, make_field

__all__ = ["OPS", "EvalResult", "eval_op", "format_result"]


@dataclass
class EvalResult:
    op: str
    chart: str
    point: np.ndarray
    kind: str  # "scalar", "vector", "form1", "tensor2", "christoffel"
    coordinate: np.ndarray
    physical: Optional[np.ndarray] = None


@dataclass
class _Ctx:
    chart: object
    m: object
    v: Optional[VecField]
    u: object
    mod: ElasticModuli
    normal: Optional[np.ndarray]

    def boundary(self):
        if self.normal is None:
            if self.chart.unit_radial is None:
                raise InvalidSpec(f"chart {self.chart.name!r} has no adapted coordinate; pass a normal")
            return adapted_boundary(self.m, self.chart.unit_radial)
        n = np.asarray(self.normal, dtype=float)
        length = np.sqrt(n @ self.m.g @ n)
        if not length > 0:
            raise InvalidSpec("normal must be nonzero")
        n = n / length
        return boundary_point(self.m, VecField(tuple(Jet2(c) for c in n), self.chart.name, self.m.point))


def _adapted(ctx: _Ctx):
    if ctx.chart.unit_radial is None:
        raise InvalidSpec(f"traction_adapted needs a chart with an adapted coordinate, not {ctx.chart.name!r}")
    return traction_adapted(ctx.mod, ctx.m, ctx.u, ctx.v, ctx.chart.unit_radial).values()


# name -> (result kind, needs a field, evaluator)
OPS: Dict[str, tuple] = {
    "metric": ("tensor2", False, lambda c: c.m.g),
    "inverse_metric": ("tensor2_upper", False, lambda c: c.m.g_inv),
    "christoffel": ("christoffel", False, lambda c: c.m.gamma),
    "displacement": ("vector", True, lambda c: c.v.values()),
    "displacement_form": ("form1", True, lambda c: c.u.values()),
    "volume_expansion": ("scalar", True, lambda c: volume_expansion(c.m, c.u).values()),
    "strain": ("tensor2", True, lambda c: strain_lie(c.m, c.v).values()),
    "strain_covariant": ("tensor2", True, lambda c: strain_covariant(c.m, c.u).values()),
    "lie_metric": ("tensor2", True, lambda c: lie_cov2(c.v, metric_tensor(c.m), c.m).values()),
    "stress": ("tensor2", True, lambda c: stress(c.mod, c.m, c.u, c.v).values()),
    "cn_residual_form": ("form1", True, lambda c: cn_residual_form(c.mod, c.m, c.u).values()),
    "cn_residual_gradcurl": ("form1", True, lambda c: cn_residual_gradcurl(c.mod, c.m, c.u).values()),
    "cn_residual_classical": ("vector", True, lambda c: cn_residual_classical(c.mod, c.m, c.v).values()),
    "traction_cauchy": ("form1", True, lambda c: traction_cauchy(c.mod, c.m, c.u, c.v, c.boundary()).values()),
    "traction_form": ("form1", True, lambda c: traction_form(c.mod, c.m, c.u, c.v, c.boundary()).values()),
    "traction_adapted": ("form1", True, _adapted),
}


def _physical(kind: str, values: np.ndarray, g: np.ndarray) -> Optional[np.ndarray]:
    """Components in the orthonormal frame e_i / h_i, h_i = sqrt(g_ii)."""
    h = np.sqrt(np.diag(g))
    if kind == "vector":
        return values * h
    if kind == "form1":
        return values / h
    if kind == "tensor2":
        return values / np.outer(h, h)
    if kind == "tensor2_upper":
        return values * np.outer(h, h)
    if kind == "scalar":
        return values
    return None


def eval_op(
    op: str,
    field: Optional[FieldSpec],
    chart,
    point: Sequence[float],
    moduli: Optional[ElasticModuli] = None,
    normal: Optional[Sequence[float]] = None,
) -> EvalResult:
    """Evaluate operation ``op`` for ``field`` at one point of ``chart``."""
    if op not in OPS:
        raise UnknownOp(f"unknown op {op!r}; expected one of {sorted(OPS)}")
    kind, needs_field, fn = OPS[op]
    chart = get_chart(chart)
    p = np.asarray(point, dtype=float)
    if p.shape != (3,):
        raise InvalidSpec("point must have three coordinates")
    m = metric_at(chart, p)
    v = u = None
    if needs_field:
        if field is None:
            raise InvalidSpec(f"op {op!r} needs a displacement field")
        v = make_field(field).evaluate(chart, p)
        u = flat(m, v)
    ctx = _Ctx(chart, m, v, u, moduli or ElasticModuli(1.0, 1.0), normal)
    values = np.asarray(fn(ctx), dtype=float)
    phys = _physical(kind, values, m.g) if chart.orthogonal else None
    return EvalResult(op, chart.name, p, kind, values, phys)


def _fmt(x: float) -> str:
    return f"{x: .12e}"


def _table(title: str, names: Sequence[str], kind: str, values: np.ndarray) -> List[str]:
    lines = [title]
    if kind == "scalar":
        lines.append(f"  {_fmt(float(np.ravel(values)[0]))}")
    elif kind in ("vector", "form1"):
        prefix = "d" if kind == "form1" else ""
        for i, n in enumerate(names):
            lines.append(f"  {prefix + n:<8} {_fmt(values[i])}")
    elif kind in ("tensor2", "tensor2_upper"):
        lines.append("  " + " " * 8 + "".join(f"{n:>20}" for n in names))
        for i, n in enumerate(names):
            lines.append(f"  {n:<8}" + "".join(f"{_fmt(values[i, j]):>20}" for j in range(3)))
    elif kind == "christoffel":
        labels = [(f"Gamma^{nk}_{ni},{names[j]}", (k, i, j))
                  for k, nk in enumerate(names) for i, ni in enumerate(names) for j in range(i, 3)]
        width = max(len(t) for t, _ in labels)
        for text, idx in labels:
            lines.append(f"  {text:<{width}} {_fmt(values[idx])}")
    return lines


def format_result(res: EvalResult) -> str:
    names = get_chart(res.chart).coordinates
    at = ", ".join(f"{x:g}" for x in res.point)
    out = [f"{res.op} in chart {res.chart} at ({at})"]
    out += _table("coordinate components:", names, res.kind, res.coordinate)
    if res.physical is not None:
        out += _table("physical components:", names, res.kind, res.physical)
    return "\n".join(out)
