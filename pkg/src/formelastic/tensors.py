"""Pointwise containers: k-forms, vector fields and covariant 2-tensors.

Components are :class:`~formelastic.jets.Jet2` values in the unnormalized
coordinate (co)basis of a chart.  Every container is tagged with the chart
name and the evaluation point; binary operations refuse to mix tags.

Degree-2 forms store three components in the order
``(dq2^dq3, dq3^dq1, dq1^dq2)``, so slot ``i`` is the plane normal to ``q^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import TagMismatch
from .jets import Jet2, jet_const

__all__ = ["KForm", "VecField", "CovTensor2", "check_tags", "check_metric", "FORM_SIZES"]

FORM_SIZES = {0: 1, 1: 3, 2: 3, 3: 1}


def _same_point(a: np.ndarray, b: np.ndarray) -> bool:
    if a is b:
        return True
    return np.shape(a) == np.shape(b) and np.array_equal(a, b)


def check_tags(*objs) -> None:
    """Raise :class:`TagMismatch` unless all objects share chart and point."""
    first = objs[0]
    for other in objs[1:]:
        if other.chart != first.chart:
            raise TagMismatch(f"chart {other.chart!r} does not match {first.chart!r}")
        if not _same_point(other.point, first.point):
            raise TagMismatch("operands were evaluated at different points")


class _Site:
    __slots__ = ("chart", "point")

    def __init__(self, chart, point):
        self.chart, self.point = chart, point


def check_metric(m, *objs) -> None:
    """Raise :class:`TagMismatch` unless every object lives where ``m`` was evaluated."""
    check_tags(_Site(m.chart.name, m.point), *objs)


def _min_order(jets) -> int:
    return min(j.order for j in jets)


@dataclass(frozen=True, eq=False)
class KForm:
    degree: int
    components: tuple
    chart: str
    point: np.ndarray

    def __post_init__(self):
        if self.degree not in FORM_SIZES:
            raise ValueError(f"form degree must be 0..3, got {self.degree}")
        comps = tuple(self.components)
        if len(comps) != FORM_SIZES[self.degree]:
            raise ValueError(
                f"a {self.degree}-form has {FORM_SIZES[self.degree]} components, got {len(comps)}"
            )
        object.__setattr__(self, "components", comps)

    @property
    def order(self) -> int:
        """Derivative orders still carried by every component."""
        return _min_order(self.components)

    def values(self) -> np.ndarray:
        """Component values stacked on a trailing axis."""
        return np.stack(np.broadcast_arrays(*[c.value for c in self.components]), axis=-1)

    def __getitem__(self, i: int) -> Jet2:
        return self.components[i]

    def _like(self, comps) -> "KForm":
        return KForm(self.degree, tuple(comps), self.chart, self.point)

    def __add__(self, other: "KForm") -> "KForm":
        check_tags(self, other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return self._like(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "KForm") -> "KForm":
        check_tags(self, other)
        if other.degree != self.degree:
            raise ValueError("cannot subtract forms of different degree")
        return self._like(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> "KForm":
        return self._like(-a for a in self.components)

    def scaled(self, c) -> "KForm":
        """Multiply every component by a real or a scalar jet."""
        return self._like(a * c for a in self.components)

    @classmethod
    def zero(cls, degree: int, chart: str, point: np.ndarray) -> "KForm":
        return cls(degree, tuple(jet_const(0.0) for _ in range(FORM_SIZES[degree])), chart, point)


@dataclass(frozen=True, eq=False)
class VecField:
    components: tuple
    chart: str
    point: np.ndarray

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 3:
            raise ValueError(f"a vector field has 3 components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @property
    def order(self) -> int:
        return _min_order(self.components)

    def values(self) -> np.ndarray:
        return np.stack(np.broadcast_arrays(*[c.value for c in self.components]), axis=-1)

    def __getitem__(self, i: int) -> Jet2:
        return self.components[i]

    def __add__(self, other: "VecField") -> "VecField":
        check_tags(self, other)
        return VecField(tuple(a + b for a, b in zip(self.components, other.components)), self.chart, self.point)

    def __sub__(self, other: "VecField") -> "VecField":
        check_tags(self, other)
        return VecField(tuple(a - b for a, b in zip(self.components, other.components)), self.chart, self.point)

    def __neg__(self) -> "VecField":
        return VecField(tuple(-a for a in self.components), self.chart, self.point)

    def scaled(self, c) -> "VecField":
        return VecField(tuple(a * c for a in self.components), self.chart, self.point)

    @classmethod
    def basis(cls, axis: int, chart: str, point: np.ndarray) -> "VecField":
        """The coordinate vector field d/dq^axis (constant components)."""
        return cls(tuple(jet_const(1.0 if k == axis else 0.0) for k in range(3)), chart, point)


@dataclass(frozen=True, eq=False)
class CovTensor2:
    """Covariant rank-2 tensor t_ij dq^i (x) dq^j.

    With ``symmetric=True`` the stored entries must satisfy ``t[i][j] is``
    (or equals, bit for bit) ``t[j][i]``.
    """

    components: tuple
    chart: str
    point: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.components)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a rank-2 tensor needs 3x3 components")
        object.__setattr__(self, "components", rows)
        if self.symmetric:
            for i in range(3):
                for j in range(i + 1, 3):
                    a, b = rows[i][j], rows[j][i]
                    if a is b:
                        continue
                    if not (
                        np.array_equal(a.value, b.value)
                        and np.array_equal(a._grad, b._grad)
                        and np.array_equal(a._hess, b._hess)
                    ):
                        raise ValueError(f"component ({i},{j}) differs from ({j},{i})")

    @classmethod
    def from_upper(cls, upper, chart: str, point: np.ndarray) -> "CovTensor2":
        """Symmetric tensor from a callable or mapping giving t_ij for i <= j."""
        get = upper if callable(upper) else (lambda i, j: upper[i][j])
        entries = {}
        for i in range(3):
            for j in range(i, 3):
                entries[i, j] = entries[j, i] = get(i, j)
        rows = tuple(tuple(entries[i, j] for j in range(3)) for i in range(3))
        return cls(rows, chart, point, symmetric=True)

    @property
    def order(self) -> int:
        return min(c.order for row in self.components for c in row)

    def __getitem__(self, ij) -> Jet2:
        i, j = ij
        return self.components[i][j]

    def values(self) -> np.ndarray:
        """Values as an array of shape ``S + (3, 3)``."""
        flat = np.broadcast_arrays(*[c.value for row in self.components for c in row])
        return np.stack(flat, axis=-1).reshape(np.shape(flat[0]) + (3, 3))

    def _map(self, fn, other=None) -> "CovTensor2":
        if other is None:
            rows = tuple(tuple(fn(c) for c in row) for row in self.components)
            sym = self.symmetric
        else:
            check_tags(self, other)
            rows = tuple(
                tuple(fn(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.components, other.components)
            )
            sym = self.symmetric and other.symmetric
        if sym:
            return CovTensor2.from_upper(lambda i, j: rows[i][j], self.chart, self.point)
        return CovTensor2(rows, self.chart, self.point)

    def __add__(self, other: "CovTensor2") -> "CovTensor2":
        return self._map(lambda a, b: a + b, other)

    def __sub__(self, other: "CovTensor2") -> "CovTensor2":
        return self._map(lambda a, b: a - b, other)

    def __neg__(self) -> "CovTensor2":
        return self._map(lambda a: -a)

    def scaled(self, c) -> "CovTensor2":
        return self._map(lambda a: a * c)


def stack_components(jets: Sequence[Jet2]) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*[j.value for j in jets]), axis=-1)
