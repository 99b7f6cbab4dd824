"""Second-order truncated Taylor arithmetic ("jets") in three variables.

A :class:`Jet2` carries the value of a quantity together with its three first
partials and six second partials with respect to the chart coordinates of the
evaluation point.  All channels may be numpy arrays of a common batch shape
``S``; the derivative channels then have shapes ``S + (3,)`` and ``S + (6,)``.
Batching is how point sweeps are evaluated: every operation is elementwise
over ``S``.

Each jet also records how many derivative orders are still trustworthy
(``order``).  Differentiating a jet consumes one order, and reading an
exhausted channel raises :class:`DerivativeBudgetExceeded` instead of
returning stale numbers.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from .errors import DerivativeBudgetExceeded, SingularJet

__all__ = [
    "EPS_SING",
    "HESS_PAIRS",
    "HESS_INDEX",
    "Jet2",
    "jet_const",
    "jet_coord",
    "jet_add",
    "jet_sub",
    "jet_mul",
    "jet_scale",
    "jet_recip",
    "jet_sqrt",
    "jet_sin",
    "jet_cos",
    "jet_atan",
    "jet_atan2",
    "jet_partial",
    "pack_hessian",
    "unpack_hessian",
]

EPS_SING = 1e-12

# Packed upper triangle, row-major: 00, 01, 02, 11, 12, 22.
HESS_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
HESS_INDEX = np.array([[0, 1, 2], [1, 3, 4], [2, 4, 5]])
_I = np.array([p[0] for p in HESS_PAIRS])
_J = np.array([p[1] for p in HESS_PAIRS])

Real = Union[float, np.ndarray]


def pack_hessian(h: np.ndarray) -> np.ndarray:
    """Pack a (..., 3, 3) symmetric matrix into (..., 6)."""
    h = np.asarray(h, dtype=float)
    return h[..., _I, _J]


def unpack_hessian(packed: np.ndarray) -> np.ndarray:
    """Inverse of :func:`pack_hessian`; the result is symmetric by construction."""
    packed = np.asarray(packed, dtype=float)
    return packed[..., HESS_INDEX]


def _arr(x) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    return a[()] if a.ndim == 0 else a


class Jet2:
    """Value, gradient and packed Hessian of a scalar at a point."""

    __slots__ = ("value", "_grad", "_hess", "order")
    __array_priority__ = 1000  # make ndarray * Jet2 defer to Jet2.__rmul__

    def __init__(self, value, grad=None, hess=None, order: int = 2):
        self.value = _arr(value)
        shape = np.shape(self.value)
        self._grad = np.zeros(shape + (3,)) if grad is None else np.asarray(grad, dtype=float)
        self._hess = np.zeros(shape + (6,)) if hess is None else np.asarray(hess, dtype=float)
        self.order = int(order)

    @property
    def grad(self) -> np.ndarray:
        if self.order < 1:
            raise DerivativeBudgetExceeded("gradient channel of this jet is exhausted")
        return self._grad

    @property
    def hess(self) -> np.ndarray:
        if self.order < 2:
            raise DerivativeBudgetExceeded("Hessian channel of this jet is exhausted")
        return self._hess

    @property
    def shape(self) -> tuple:
        return np.shape(self.value)

    def hessian_matrix(self) -> np.ndarray:
        return unpack_hessian(self.hess)

    def truncated(self, order: int) -> "Jet2":
        """Copy with the derivative budget lowered to ``order``."""
        return Jet2(self.value, self._grad, self._hess, min(order, self.order))

    def __repr__(self) -> str:
        return (
            f"Jet2(value={self.value!r}, grad={self._grad!r}, "
            f"hess={self._hess!r}, order={self.order})"
        )

    # arithmetic sugar; semantics live in the jet_* functions
    def __add__(self, other):
        return jet_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return jet_sub(self, other)

    def __rsub__(self, other):
        return jet_sub(_lift(other), self)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return jet_mul(self, other)
        return jet_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return jet_mul(self, jet_recip(other))
        return jet_scale(self, 1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return jet_scale(jet_recip(self), other)

    def __neg__(self):
        return Jet2(-self.value, -self._grad, -self._hess, self.order)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = jet_const(np.ones_like(self.value))
        base = self
        while n:
            if n & 1:
                out = jet_mul(out, base)
            base = jet_mul(base, base)
            n >>= 1
        return out.truncated(self.order)


def _lift(x) -> Jet2:
    return x if isinstance(x, Jet2) else jet_const(x)


def jet_const(c: Real) -> Jet2:
    """Constant: zero gradient and Hessian, full derivative budget."""
    return Jet2(c)


def jet_coord(axis: int, x: Real) -> Jet2:
    """The coordinate function ``q^axis`` evaluated at ``x``."""
    if axis not in (0, 1, 2):
        raise IndexError(f"axis must be 0, 1 or 2, got {axis!r}")
    value = _arr(x)
    grad = np.zeros(np.shape(value) + (3,))
    grad[..., axis] = 1.0
    return Jet2(value, grad)


def jet_add(a, b) -> Jet2:
    a, b = _lift(a), _lift(b)
    return Jet2(a.value + b.value, a._grad + b._grad, a._hess + b._hess, min(a.order, b.order))


def jet_sub(a, b) -> Jet2:
    a, b = _lift(a), _lift(b)
    return Jet2(a.value - b.value, a._grad - b._grad, a._hess - b._hess, min(a.order, b.order))


def jet_mul(a, b) -> Jet2:
    """Product rule, truncated after second order."""
    a, b = _lift(a), _lift(b)
    av = np.asarray(a.value)[..., None]
    bv = np.asarray(b.value)[..., None]
    ag, bg = a._grad, b._grad
    # paired so that swapping a and b reproduces the same floating-point sums
    hess = (av * b._hess + bv * a._hess) + (ag[..., _I] * bg[..., _J] + ag[..., _J] * bg[..., _I])
    return Jet2(a.value * b.value, av * bg + bv * ag, hess, min(a.order, b.order))


def jet_scale(a: Jet2, c: Real) -> Jet2:
    """Multiply by a plain real (or array of reals broadcasting over the batch)."""
    c = np.asarray(c, dtype=float)
    ce = c[..., None]
    return Jet2(a.value * c, a._grad * ce, a._hess * ce, a.order)


def _chain(a: Jet2, f0, f1, f2) -> Jet2:
    # composition g(a) given g, g', g'' evaluated at a.value
    f1e = np.asarray(f1)[..., None]
    f2e = np.asarray(f2)[..., None]
    g = a._grad
    return Jet2(f0, f1e * g, f1e * a._hess + f2e * g[..., _I] * g[..., _J], a.order)


def jet_recip(a: Jet2) -> Jet2:
    a = _lift(a)
    v = np.asarray(a.value)
    if np.any(~(np.abs(v) > EPS_SING)):
        raise SingularJet(f"reciprocal of a jet with |value| <= {EPS_SING}")
    inv = 1.0 / v
    return _chain(a, inv, -inv * inv, 2.0 * inv * inv * inv)


def jet_sqrt(a: Jet2) -> Jet2:
    a = _lift(a)
    v = np.asarray(a.value)
    if np.any(~(v > EPS_SING)):
        raise SingularJet(f"square root of a jet with value <= {EPS_SING}")
    s = np.sqrt(v)
    return _chain(a, s, 0.5 / s, -0.25 / (s * v))


def jet_sin(a: Jet2) -> Jet2:
    a = _lift(a)
    s, c = np.sin(a.value), np.cos(a.value)
    return _chain(a, s, c, -s)


def jet_cos(a: Jet2) -> Jet2:
    a = _lift(a)
    s, c = np.sin(a.value), np.cos(a.value)
    return _chain(a, c, -s, -c)


def jet_atan(a: Jet2) -> Jet2:
    a = _lift(a)
    v = np.asarray(a.value)
    d = 1.0 / (1.0 + v * v)
    return _chain(a, np.arctan(v), d, -2.0 * v * d * d)


def jet_atan2(y, x) -> Jet2:
    """Two-argument arctangent; singular where x = y = 0."""
    y, x = _lift(y), _lift(x)
    xv, yv = np.asarray(x.value), np.asarray(y.value)
    rho2 = xv * xv + yv * yv
    if np.any(~(rho2 > EPS_SING)):
        raise SingularJet("atan2 of a jet at the origin")
    xe, ye, re = xv[..., None], yv[..., None], rho2[..., None]
    num = xe * y._grad - ye * x._grad
    grad = num / re
    dr = 2.0 * (xe * x._grad + ye * y._grad)
    # the antisymmetric part of d(num) cancels in the symmetric Hessian
    hess = (xe * y._hess - ye * x._hess) / re - 0.5 * (
        num[..., _I] * dr[..., _J] + num[..., _J] * dr[..., _I]
    ) / (re * re)
    return Jet2(np.arctan2(yv, xv), grad, hess, min(x.order, y.order))


def jet_partial(a: Jet2, axis: int) -> Jet2:
    """The jet of ``da/dq^axis``; consumes one derivative order."""
    if a.order < 1:
        raise DerivativeBudgetExceeded("cannot differentiate a jet with no derivative budget left")
    value = a._grad[..., axis]
    grad = a._hess[..., HESS_INDEX[axis]]
    return Jet2(value, grad, None, a.order - 1)


def max_abs(j: Jet2) -> float:
    return float(np.max(np.abs(j.value))) if np.size(j.value) else 0.0

