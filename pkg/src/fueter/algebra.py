"""Quaternion and biquaternion arithmetic, plus multi-index bookkeeping.

Components are always stored in the order (x0, x1, x2, x3), meaning
x0 + x1*i + x2*j + x3*k with x0 the real part.  The array helpers operate on
ndarrays whose last axis has length 4 and broadcast over all leading axes;
they accept float arrays (quaternions) and complex arrays (biquaternions)
alike, since the i,j,k multiplication table is the same in both cases and
scalar coefficients commute with the units.
"""

from __future__ import annotations

import math
from itertools import combinations_with_replacement

import numpy as np

from .errors import ZeroDivisor

# Inversion trips ZeroDivisor only below this floor; small kernel denominators
# near an integration sphere must pass through untouched.
ZERO_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# array helpers
# ---------------------------------------------------------------------------

def qmul(a, b):
    """Hamilton product of (..., 4) component arrays, broadcasting."""
    a = np.asarray(a)
    b = np.asarray(b)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ),
        axis=-1,
    )


def qconj(a):
    """Quaternionic conjugate: negate the i,j,k components.

    For complex component arrays this is the biquaternion main involution;
    the complex scalars themselves are not conjugated.
    """
    a = np.asarray(a)
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def qnormsq(a):
    """Squared Euclidean norm x0^2 + x1^2 + x2^2 + x3^2 (real arrays)."""
    a = np.asarray(a)
    return (a * a).sum(axis=-1)


def qnorm(a):
    return np.sqrt(qnormsq(a))


def qinv(a):
    """Pointwise inverse conj(a)/|a|^2.  Raises ZeroDivisor at genuine zeros."""
    a = np.asarray(a, dtype=float)
    n2 = qnormsq(a)
    if np.any(n2 < ZERO_FLOOR):
        raise ZeroDivisor("quaternion norm below zero floor")
    return qconj(a) / n2[..., None]


def bq_quadratic_norm(a):
    """Complex quadratic form sum_l c_l^2 (not the Hermitian norm).

    This is the denominator seed of the complexified reproducing kernel; it
    vanishes on isotropic offsets, which is exactly what membership tests
    have to guard against.
    """
    a = np.asarray(a)
    return (a * a).sum(axis=-1)


def bq_abs(a):
    """Euclidean norm of the 8 real components of a biquaternion array."""
    a = np.asarray(a)
    return np.sqrt((a.real * a.real + a.imag * a.imag).sum(axis=-1))


# ---------------------------------------------------------------------------
# scalar wrappers
# ---------------------------------------------------------------------------

class Quaternion:
    """A single quaternion with float64 components."""

    __slots__ = ("_c",)

    def __init__(self, x0=0.0, x1=0.0, x2=0.0, x3=0.0):
        self._c = np.array([x0, x1, x2, x3], dtype=float)

    @classmethod
    def from_array(cls, arr):
        q = cls.__new__(cls)
        q._c = np.asarray(arr, dtype=float).reshape(4).copy()
        return q

    @property
    def components(self):
        return self._c.copy()

    @property
    def x0(self):
        return float(self._c[0])

    @property
    def x1(self):
        return float(self._c[1])

    @property
    def x2(self):
        return float(self._c[2])

    @property
    def x3(self):
        return float(self._c[3])

    def conj(self):
        return Quaternion.from_array(qconj(self._c))

    def norm_sq(self):
        return float(qnormsq(self._c))

    def norm(self):
        return math.sqrt(self.norm_sq())

    def inverse(self):
        n2 = self.norm_sq()
        if n2 < ZERO_FLOOR:
            raise ZeroDivisor("cannot invert a (numerically) zero quaternion")
        return Quaternion.from_array(qconj(self._c) / n2)

    def __add__(self, other):
        return Quaternion.from_array(self._c + _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Quaternion.from_array(self._c - _coerce(other))

    def __rsub__(self, other):
        return Quaternion.from_array(_coerce(other) - self._c)

    def __neg__(self):
        return Quaternion.from_array(-self._c)

    def __mul__(self, other):
        return Quaternion.from_array(qmul(self._c, _coerce(other)))

    def __rmul__(self, other):
        return Quaternion.from_array(qmul(_coerce(other), self._c))

    def __truediv__(self, scalar):
        return Quaternion.from_array(self._c / float(scalar))

    def __eq__(self, other):
        if isinstance(other, (Quaternion, int, float)):
            return bool(np.array_equal(self._c, _coerce(other)))
        return NotImplemented

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return "Quaternion(%g, %g, %g, %g)" % tuple(self._c)


def _coerce(value):
    """Quaternion | real scalar | length-4 iterable -> (4,) float array."""
    if isinstance(value, Quaternion):
        return value._c
    if np.isscalar(value):
        return np.array([float(value), 0.0, 0.0, 0.0])
    return np.asarray(value, dtype=float).reshape(4)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
UNITS = (ONE, I, J, K)


class Biquaternion:
    """A single element of the complexified algebra, four complex scalars.

    Restricting to all-real components reproduces Quaternion arithmetic
    exactly: the same multiplication table applies and complex scalars
    commute with the i,j,k units.
    """

    __slots__ = ("_c",)

    def __init__(self, c0=0j, c1=0j, c2=0j, c3=0j):
        self._c = np.array([c0, c1, c2, c3], dtype=complex)

    @classmethod
    def from_array(cls, arr):
        q = cls.__new__(cls)
        q._c = np.asarray(arr, dtype=complex).reshape(4).copy()
        return q

    @classmethod
    def from_quaternion(cls, q):
        return cls.from_array(_coerce(q))

    @property
    def components(self):
        return self._c.copy()

    def conj(self):
        """Main involution: negates the i,j,k parts, keeps scalars as-is."""
        return Biquaternion.from_array(qconj(self._c))

    def quadratic_norm(self):
        return complex(bq_quadratic_norm(self._c))

    def abs(self):
        return float(bq_abs(self._c))

    def real_part(self):
        return Quaternion.from_array(self._c.real)

    def __add__(self, other):
        return Biquaternion.from_array(self._c + _coerce_bq(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Biquaternion.from_array(self._c - _coerce_bq(other))

    def __rsub__(self, other):
        return Biquaternion.from_array(_coerce_bq(other) - self._c)

    def __neg__(self):
        return Biquaternion.from_array(-self._c)

    def __mul__(self, other):
        return Biquaternion.from_array(qmul(self._c, _coerce_bq(other)))

    def __rmul__(self, other):
        return Biquaternion.from_array(qmul(_coerce_bq(other), self._c))

    def __eq__(self, other):
        if isinstance(other, (Biquaternion, Quaternion, int, float, complex)):
            return bool(np.array_equal(self._c, _coerce_bq(other)))
        return NotImplemented

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return "Biquaternion(%s, %s, %s, %s)" % tuple(self._c)


def _coerce_bq(value):
    if isinstance(value, Biquaternion):
        return value._c
    if isinstance(value, Quaternion):
        return value.components.astype(complex)
    if np.isscalar(value):
        return np.array([complex(value), 0j, 0j, 0j])
    return np.asarray(value, dtype=complex).reshape(4)


def bq_mul(a, b):
    """Biquaternion product (scalar wrapper around qmul)."""
    return Biquaternion.from_array(qmul(_coerce_bq(a), _coerce_bq(b)))


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------
# A multi-index is a plain tuple of non-negative ints, one exponent per real
# coordinate of a quaternionic variable (length 4, or 8 for two variables).

def midx_order(alpha):
    return int(sum(alpha))


def midx_factorial(alpha):
    """alpha! as an exact Python integer."""
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def multi_indices(order, dim=4):
    """All multi-indices of the given total order, in a fixed deterministic
    (lexicographically decreasing) enumeration."""
    if order == 0:
        return [(0,) * dim]
    out = []
    # positions of the `order` unit increments among `dim` slots
    for combo in combinations_with_replacement(range(dim), order):
        alpha = [0] * dim
        for pos in combo:
            alpha[pos] += 1
        out.append(tuple(alpha))
    # combinations_with_replacement already yields a deterministic order, but
    # sort to make the contract explicit and independent of itertools details
    out = sorted(set(out), reverse=True)
    return out


def multi_indices_upto(max_order, dim=4):
    """All multi-indices with |alpha| <= max_order, ordered by shell."""
    out = []
    for k in range(max_order + 1):
        out.extend(multi_indices(k, dim))
    return out
