"""Representations of quaternion-valued functions and the Cauchy-Fueter
operators acting on them.

A function of n quaternionic variables (n in {1, 2}) maps a point with
4*n real coordinates to a quaternion.  Two representations are supported:

* :class:`PolyFunction` -- a finite sum  sum_alpha  c_alpha * x^alpha  with
  real monomials x^alpha and quaternion coefficients c_alpha.  Monomials are
  real scalars, so they commute with the coefficients and evaluation needs
  no ordering convention.
* :class:`BlackBoxFunction` -- a deterministic pointwise evaluator together
  with a domain descriptor.  Derivatives are taken by 4th-order central
  finite differences.

The left operator applies the units on the left of the partials
(d/dx0 + i d/dx1 + j d/dx2 + k d/dx3); this is the regularity convention
used everywhere in the library.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    Quaternion,
    midx_order,
    multi_indices_upto,
    qmul,
    qnorm,
    qnormsq,
    qconj,
)
from .errors import EvaluationFailure, OutOfDomain, UnknownName

# 4th-order central first/second derivative stencils on offsets (-2h..2h)
_D1_OFFSETS = np.array([-2.0, -1.0, 1.0, 2.0])
_D1_WEIGHTS = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
_D2_OFFSETS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
_D2_WEIGHTS = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0

DEFAULT_FD_STEP = 1e-4  # relative to the domain scale

_UNIT_ARRAYS = np.eye(4)


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

class Domain:
    """Base class for evaluation domains over one quaternionic variable."""

    scale = 1.0

    def contains(self, x, margin=0.0):
        """Vectorized membership test on (..., 4) coordinate arrays."""
        raise NotImplementedError

    def interior_radius(self, x):
        """Distance from x to the domain boundary (negative if outside)."""
        raise NotImplementedError


class WholeSpace(Domain):
    def contains(self, x, margin=0.0):
        x = np.asarray(x)
        return np.ones(x.shape[:-1], dtype=bool)

    def interior_radius(self, x):
        x = np.asarray(x)
        return np.full(x.shape[:-1], np.inf)


class BallDomain(Domain):
    def __init__(self, center=0.0, radius=1.0):
        self.center = _point(center)
        self.radius = float(radius)
        self.scale = self.radius

    def contains(self, x, margin=0.0):
        return qnorm(np.asarray(x) - self.center) <= self.radius - margin

    def interior_radius(self, x):
        return self.radius - qnorm(np.asarray(x) - self.center)


class ExcludedBallDomain(Domain):
    """Everything except a closed ball (used for functions with one pole)."""

    def __init__(self, center, radius):
        self.center = _point(center)
        self.radius = float(radius)
        self.scale = max(1.0, qnorm(self.center))

    def contains(self, x, margin=0.0):
        return qnorm(np.asarray(x) - self.center) >= self.radius + margin

    def interior_radius(self, x):
        return qnorm(np.asarray(x) - self.center) - self.radius


class ProductDomain(Domain):
    """Cartesian product of per-variable domains (coordinates concatenated)."""

    def __init__(self, *factors):
        self.factors = factors
        self.scale = min(f.scale for f in factors)

    def contains(self, x, margin=0.0):
        x = np.asarray(x)
        ok = np.ones(x.shape[:-1], dtype=bool)
        for i, f in enumerate(self.factors):
            ok &= f.contains(x[..., 4 * i:4 * i + 4], margin)
        return ok

    def interior_radius(self, x):
        x = np.asarray(x)
        r = np.full(x.shape[:-1], np.inf)
        for i, f in enumerate(self.factors):
            r = np.minimum(r, f.interior_radius(x[..., 4 * i:4 * i + 4]))
        return r


def _point(value, dim=4):
    """Coerce scalars/Quaternions/sequences to a (dim,) float array."""
    if isinstance(value, Quaternion):
        arr = value.components
    elif np.isscalar(value):
        arr = np.zeros(dim)
        arr[0] = float(value)
        return arr
    else:
        arr = np.asarray(value, dtype=float).ravel()
    if arr.size == dim:
        return arr.astype(float)
    if arr.size == 4 and dim == 8:
        out = np.zeros(8)
        out[:4] = arr
        return out
    raise ValueError(f"cannot coerce {value!r} to a {dim}-coordinate point")


def as_point(value, nvars=1):
    """Public coercion helper: point with 4*nvars real coordinates."""
    if nvars == 2 and isinstance(value, (tuple, list)) and len(value) == 2:
        return np.concatenate([_point(value[0]), _point(value[1])])
    return _point(value, dim=4 * nvars)


# ---------------------------------------------------------------------------
# function representations
# ---------------------------------------------------------------------------

class QFunction:
    """Base class: a map from 4*nvars real coordinates to a quaternion."""

    nvars = 1
    domain: Domain = WholeSpace()
    name = None
    regular = None  # documented ground truth where known

    def evaluate(self, x):
        """Evaluate on an (..., 4*nvars) array, returning (..., 4)."""
        raise NotImplementedError

    def __call__(self, *args):
        if len(args) == 1 and isinstance(args[0], np.ndarray) and args[0].ndim > 1:
            return self.evaluate(args[0])
        pt = as_point(args if len(args) > 1 else args[0], self.nvars)
        return Quaternion.from_array(self.evaluate(pt[None, :])[0])

    def reference_partial(self, var, coord, x):
        """Closed-form partial derivative, where the function provides one.

        Returns an (..., 4) array or None.  Used as an oracle by tests; the
        finite-difference machinery never calls it.
        """
        return None


class PolyFunction(QFunction):
    """Finite term map {multi-index: quaternion coefficient}.

    Zero coefficients are dropped so the representation is canonical.
    """

    def __init__(self, terms, nvars=1, domain=None, name=None):
        self.nvars = int(nvars)
        dim = 4 * self.nvars
        canon = {}
        for alpha, coeff in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dim:
                raise ValueError(f"exponent tuple {alpha} has wrong length")
            arr = np.asarray(
                coeff.components if isinstance(coeff, Quaternion) else coeff,
                dtype=float,
            ).reshape(4)
            if np.any(arr != 0.0):
                canon[alpha] = canon.get(alpha, np.zeros(4)) + arr
        self.terms = {a: c for a, c in sorted(canon.items()) if np.any(c != 0.0)}
        self.domain = domain if domain is not None else WholeSpace()
        self.name = name
        self._cf_cache = {}

    @property
    def degree(self):
        return max((midx_order(a) for a in self.terms), default=0)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1] + (4,))
        for alpha, coeff in self.terms.items():
            mono = np.ones(x.shape[:-1])
            for axis, e in enumerate(alpha):
                if e:
                    mono = mono * x[..., axis] ** e
            out += mono[..., None] * coeff
        return out

    # -- exact calculus -----------------------------------------------------

    def partial(self, coord):
        """Exact partial derivative along one real coordinate."""
        terms = {}
        for alpha, coeff in self.terms.items():
            e = alpha[coord]
            if e:
                beta = alpha[:coord] + (e - 1,) + alpha[coord + 1:]
                terms[beta] = terms.get(beta, np.zeros(4)) + e * coeff
        return PolyFunction(terms, nvars=self.nvars, domain=self.domain)

    def left_operator(self, var, signs=(1.0, 1.0, 1.0, 1.0)):
        """sum_l s_l e_l * d/dx_l in the chosen variable, units on the left."""
        key = ("L", var, signs)
        if key not in self._cf_cache:
            terms = {}
            for l in range(4):
                d = self.partial(4 * var + l)
                for alpha, coeff in d.terms.items():
                    c = signs[l] * qmul(_UNIT_ARRAYS[l], coeff)
                    terms[alpha] = terms.get(alpha, np.zeros(4)) + c
            self._cf_cache[key] = PolyFunction(terms, nvars=self.nvars, domain=self.domain)
        return self._cf_cache[key]

    def right_operator(self, var, signs=(1.0, 1.0, 1.0, 1.0)):
        key = ("R", var, signs)
        if key not in self._cf_cache:
            terms = {}
            for l in range(4):
                d = self.partial(4 * var + l)
                for alpha, coeff in d.terms.items():
                    c = signs[l] * qmul(coeff, _UNIT_ARRAYS[l])
                    terms[alpha] = terms.get(alpha, np.zeros(4)) + c
            self._cf_cache[key] = PolyFunction(terms, nvars=self.nvars, domain=self.domain)
        return self._cf_cache[key]

    def laplacian_poly(self, var):
        key = ("Lap", var)
        if key not in self._cf_cache:
            terms = {}
            for l in range(4):
                d2 = self.partial(4 * var + l).partial(4 * var + l)
                for alpha, coeff in d2.terms.items():
                    terms[alpha] = terms.get(alpha, np.zeros(4)) + coeff
            self._cf_cache[key] = PolyFunction(terms, nvars=self.nvars, domain=self.domain)
        return self._cf_cache[key]

    # -- algebra on polynomials (coefficients multiply in given order) ------

    def __add__(self, other):
        terms = dict(self.terms)
        for alpha, coeff in other.terms.items():
            terms[alpha] = terms.get(alpha, np.zeros(4)) + coeff
        return PolyFunction(terms, nvars=self.nvars, domain=self.domain)

    def __mul__(self, other):
        """Product; quaternion coefficients multiply left-to-right."""
        if isinstance(other, PolyFunction):
            terms = {}
            for a1, c1 in self.terms.items():
                for a2, c2 in other.terms.items():
                    alpha = tuple(x + y for x, y in zip(a1, a2))
                    terms[alpha] = terms.get(alpha, np.zeros(4)) + qmul(c1, c2)
            return PolyFunction(terms, nvars=self.nvars, domain=self.domain)
        coeff = other.components if isinstance(other, Quaternion) else other
        if np.isscalar(coeff):
            terms = {a: c * float(coeff) for a, c in self.terms.items()}
        else:
            terms = {a: qmul(c, np.asarray(coeff)) for a, c in self.terms.items()}
        return PolyFunction(terms, nvars=self.nvars, domain=self.domain)

    def scale_coeffs(self, s):
        return PolyFunction(
            {a: c * s for a, c in self.terms.items()},
            nvars=self.nvars,
            domain=self.domain,
        )

    def recenter(self, center):
        """Taylor table of the polynomial around ``center`` (exact shift)."""
        center = as_point(center, self.nvars)
        dim = 4 * self.nvars
        terms = {}
        for alpha, coeff in self.terms.items():
            # expand prod_l (c_l + u_l)^{alpha_l}
            new = {(0,) * dim: 1.0}
            for l in range(dim):
                cur = {}
                for beta, w in new.items():
                    for m in range(alpha[l] + 1):
                        b = list(beta)
                        b[l] = m
                        cur_w = w * math.comb(alpha[l], m) * center[l] ** (alpha[l] - m)
                        if cur_w != 0.0:
                            b = tuple(b)
                            cur[b] = cur.get(b, 0.0) + cur_w
                new = cur
            for beta, w in new.items():
                terms[beta] = terms.get(beta, np.zeros(4)) + w * coeff
        return PolyFunction(terms, nvars=self.nvars, domain=self.domain)

    # -- serialization -------------------------------------------------------

    def to_json_obj(self):
        return {
            "nvars": self.nvars,
            "terms": [
                {"exponents": list(alpha), "coeff": [float(v) for v in coeff]}
                for alpha, coeff in sorted(self.terms.items())
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj):
        try:
            nvars = int(obj["nvars"])
            terms = {
                tuple(int(e) for e in t["exponents"]): np.asarray(t["coeff"], dtype=float)
                for t in obj["terms"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial object: {exc}") from exc
        return cls(terms, nvars=nvars)

    @classmethod
    def loads(cls, text):
        return cls.from_json_obj(json.loads(text))


class BlackBoxFunction(QFunction):
    """Pointwise evaluator with a domain descriptor.

    ``fn`` must map an (n, 4*nvars) array to an (n, 4) array and be pure:
    repeated calls at the same points return identical values.
    """

    def __init__(self, fn, nvars=1, domain=None, name=None):
        self.fn = fn
        self.nvars = int(nvars)
        self.domain = domain if domain is not None else WholeSpace()
        self.name = name

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, x.shape[-1])
        vals = np.asarray(self.fn(flat), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise EvaluationFailure(f"non-finite values from {self.name or 'function'}")
        return vals.reshape(x.shape[:-1] + (4,))


def fix_variable(f, var, value):
    """Freeze one variable of a two-variable function.

    Returns a one-variable QFunction q -> f(value, q) (var=0 frozen) or
    p -> f(p, value) (var=1 frozen).
    """
    if f.nvars != 2:
        raise ValueError("fix_variable expects a two-variable function")
    frozen = _point(value)

    if isinstance(f, PolyFunction):
        lo, hi = (0, 4) if var == 0 else (4, 8)
        keep = slice(4, 8) if var == 0 else slice(0, 4)
        terms = {}
        for alpha, coeff in f.terms.items():
            w = 1.0
            for l in range(lo, hi):
                w *= frozen[l - lo] ** alpha[l]
            if w != 0.0:
                beta = tuple(alpha[keep])
                terms[beta] = terms.get(beta, np.zeros(4)) + w * coeff
        return PolyFunction(terms, nvars=1)

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        full = np.empty((pts.shape[0], 8))
        if var == 0:
            full[:, :4] = frozen
            full[:, 4:] = pts
        else:
            full[:, :4] = pts
            full[:, 4:] = frozen
        return f.evaluate(full)

    if isinstance(f.domain, ProductDomain):
        sub = f.domain.factors[1 - var]
    else:
        sub = WholeSpace()
    return BlackBoxFunction(fn, nvars=1, domain=sub,
                            name=f"{f.name or 'f'}|var{var}={frozen[0]:g}")


def restrict_domain(f, domain):
    """Same evaluator, smaller domain; queries outside raise OutOfDomain."""
    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        ok = domain.contains(pts)
        if not np.all(ok):
            bad = pts[~ok][0]
            raise OutOfDomain(f"evaluation at {bad} outside restricted domain")
        return f.evaluate(pts)

    g = BlackBoxFunction(fn, nvars=f.nvars, domain=domain,
                         name=f"{f.name or 'f'}|restricted")
    g.regular = f.regular
    return g


# ---------------------------------------------------------------------------
# Cauchy-Fueter operators
# ---------------------------------------------------------------------------

def _fd_directional(f, x, coords, h, second=False):
    """Stacked central differences of f along the listed coordinates."""
    x = np.asarray(x, dtype=float)
    offsets = _D2_OFFSETS if second else _D1_OFFSETS
    weights = _D2_WEIGHTS if second else _D1_WEIGHTS
    shifted = []
    for c in coords:
        for o in offsets:
            y = x.copy()
            y[..., c] = y[..., c] + o * h
            shifted.append(y)
    stacked = np.stack(shifted, axis=0)
    vals = f.evaluate(stacked)
    vals = vals.reshape((len(coords), len(offsets)) + x.shape[:-1] + (4,))
    denom = h * h if second else h
    return np.einsum("s,cs...->c...", weights, vals) / denom


def _check_stencil_domain(f, x, h):
    margin = 2.0 * h
    ok = f.domain.contains(np.asarray(x, dtype=float), margin=margin)
    if not np.all(ok):
        bad = np.asarray(x, dtype=float).reshape(-1, 4 * f.nvars)[~np.asarray(ok).ravel()][0]
        raise OutOfDomain(f"finite-difference stencil leaves the domain near {bad}")


def _fd_step(f, h):
    return DEFAULT_FD_STEP * f.domain.scale if h is None else float(h)


def _apply_units(partials, side, signs):
    """Combine per-coordinate partials with the units on one side."""
    out = np.zeros(partials.shape[1:])
    for l in range(4):
        if side == "left":
            out = out + signs[l] * qmul(_UNIT_ARRAYS[l], partials[l])
        else:
            out = out + signs[l] * qmul(partials[l], _UNIT_ARRAYS[l])
    return out


def _operator(f, var, x, side, signs, h):
    single = not (isinstance(x, np.ndarray) and x.ndim > 1)
    pts = as_point(x, f.nvars)[None, :] if single else np.asarray(x, dtype=float)
    if isinstance(f, PolyFunction):
        op = f.left_operator(var, signs) if side == "left" else f.right_operator(var, signs)
        vals = op.evaluate(pts)
    else:
        h = _fd_step(f, h)
        _check_stencil_domain(f, pts, h)
        coords = [4 * var + l for l in range(4)]
        partials = _fd_directional(f, pts, coords, h)
        vals = _apply_units(partials, side, signs)
    if single:
        return Quaternion.from_array(vals[0])
    return vals


def cf_left(f, var=0, x=0.0, h=None):
    """Left Cauchy-Fueter operator (d/dx0 + i d/dx1 + j d/dx2 + k d/dx3) f.

    Exact term-by-term differentiation for polynomials; 4th-order central
    differences (step ``h``, default 1e-4 times the domain scale) otherwise.
    Vanishes identically on left regular functions.
    """
    return _operator(f, var, x, "left", (1.0, 1.0, 1.0, 1.0), h)


def cf_left_conj(f, var=0, x=0.0, h=None):
    """The companion operator (d/dx0 - i d/dx1 - j d/dx2 - k d/dx3) f.

    Composing it with :func:`cf_left` gives the 4-dimensional Laplacian.
    """
    return _operator(f, var, x, "left", (1.0, -1.0, -1.0, -1.0), h)


def cf_right(f, var=0, x=0.0, h=None):
    """Right operator: units multiply the partials on the right."""
    return _operator(f, var, x, "right", (1.0, 1.0, 1.0, 1.0), h)


def laplacian(f, var=0, x=0.0, h=None):
    """Componentwise 4-D Laplacian in the chosen variable."""
    single = not (isinstance(x, np.ndarray) and x.ndim > 1)
    pts = as_point(x, f.nvars)[None, :] if single else np.asarray(x, dtype=float)
    if isinstance(f, PolyFunction):
        vals = f.laplacian_poly(var).evaluate(pts)
    else:
        h = _fd_step(f, h)
        _check_stencil_domain(f, pts, h)
        coords = [4 * var + l for l in range(4)]
        partials = _fd_directional(f, pts, coords, h, second=True)
        vals = partials.sum(axis=0)
    if single:
        return Quaternion.from_array(vals[0])
    return vals


# ---------------------------------------------------------------------------
# regularity report
# ---------------------------------------------------------------------------

@dataclass
class RegularityReport:
    max_residual: float
    worst_point: np.ndarray
    tol: float
    n_samples: int
    per_variable: dict

    @property
    def passed(self):
        return bool(self.max_residual <= self.tol)

    def to_json_obj(self):
        return {
            "max_residual": float(self.max_residual),
            "worst_point": [float(v) for v in self.worst_point],
            "tol": float(self.tol),
            "n_samples": int(self.n_samples),
            "per_variable": {str(k): float(v) for k, v in self.per_variable.items()},
            "passed": self.passed,
        }


def sample_ball(center, radius, n, rng, dim=4):
    """Uniform sample in a ball, deterministic for a fixed Generator state."""
    center = _point(center, dim)
    d = rng.normal(size=(n, dim))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = radius * rng.random(n) ** (1.0 / dim)
    return center + d * r[:, None]


def sample_annulus(center, r_min, r_max, n, rng):
    d = rng.normal(size=(n, 4))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    u = rng.random(n)
    r = (r_min**4 + u * (r_max**4 - r_min**4)) ** 0.25
    return _point(center) + d * r[:, None]


def is_regular(f, points, tol=1e-8, h=None):
    """Max Cauchy-Fueter residual of f over sample points, across variables.

    ``points`` is an (n, 4*nvars) array (use :func:`sample_ball` /
    :func:`sample_annulus` to build one).  Passes iff the max residual is
    at most ``tol``.
    """
    points = np.asarray(points, dtype=float)
    worst = -1.0
    worst_pt = points[0]
    per_var = {}
    for var in range(f.nvars):
        res = qnorm(cf_left(f, var, points, h=h))
        i = int(np.argmax(res))
        per_var[var] = float(res[i])
        if res[i] > worst:
            worst = float(res[i])
            worst_pt = points[i]
    return RegularityReport(worst, worst_pt, tol, points.shape[0], per_var)


# ---------------------------------------------------------------------------
# reference functions
# ---------------------------------------------------------------------------

def _slice_pair(z):
    """Map complex samples to quaternions in the span of 1 and i."""
    out = np.zeros(z.shape + (4,))
    out[..., 0] = z.real
    out[..., 1] = z.imag
    return out


def _zeta(x, block):
    """The slice variable x1 - i*x0 of one variable, as a complex array."""
    return x[..., block + 1] - 1j * x[..., block + 0]


def zoo(name, **params):
    """Construct a documented reference function.

    Members (``nvars`` in parentheses):

    - ``constant`` (1): f = c.  Regular.
    - ``identity`` (1): f(p) = p.  Not regular -- the left operator returns
      the constant -2; kept as a control.
    - ``fueter_variable`` (1): f(p) = x_i - e_i x0 for i in {1,2,3}.  The
      degree-1 regular functions.
    - ``kernel`` (1): f(p) = conj(p - c)/|p - c|^4.  Regular away from c.
    - ``product_regular`` (2): (x1 - i x0)^m (y1 - i y0)^n.  Both factors
      take values in the commutative 1,i slice, which is what makes the
      product jointly regular.
    - ``bounded_strip_regular`` (2): 1/(a_p - zeta(p)) * 1/(a_q - zeta(q))
      with zeta the slice variable; bounded and regular on B_ap x B_aq.
    - ``slice_exponential`` (2): exp(lam_p zeta(p)) exp(lam_q zeta(q));
      entire, with nonvanishing coefficients in every slice-plane order.
    - ``q_kernel`` (2): kernel in the second variable, constant in the first.
    """
    if name == "constant":
        value = params.get("value", Quaternion(1.0))
        nvars = params.get("nvars", 1)
        if not isinstance(value, Quaternion):
            value = Quaternion.from_array(_point(value))
        f = PolyFunction({(0,) * (4 * nvars): value.components}, nvars=nvars, name="constant")
        f.regular = True
        return f

    if name == "identity":
        terms = {tuple(np.eye(4, dtype=int)[l]): _UNIT_ARRAYS[l] for l in range(4)}
        f = PolyFunction(terms, nvars=1, name="identity")
        f.regular = False
        return f

    if name == "fueter_variable":
        i = int(params.get("i", 1))
        if i not in (1, 2, 3):
            raise UnknownName(f"fueter_variable index must be 1, 2 or 3, got {i}")
        e_i = np.zeros(4, dtype=int)
        e_i[i] = 1
        terms = {
            tuple(e_i): _UNIT_ARRAYS[0],
            (1, 0, 0, 0): -_UNIT_ARRAYS[i],
        }
        f = PolyFunction(terms, nvars=1, name=f"fueter_variable_{i}")
        f.regular = True
        return f

    if name == "kernel":
        center = _point(params.get("center", 2.0))
        excl = max(0.05 * max(1.0, qnorm(center)), 1e-3)

        def fn(pts):
            w = np.asarray(pts, dtype=float) - center
            return qconj(w) / (qnormsq(w) ** 2)[..., None]

        f = BlackBoxFunction(fn, nvars=1,
                             domain=ExcludedBallDomain(center, excl),
                             name="kernel")
        f.regular = True
        f.center = center.copy()

        def ref(var, coord, x):
            w = np.asarray(x, dtype=float) - center
            rho = qnormsq(w)
            ebar = qconj(_UNIT_ARRAYS[coord])
            return (ebar * rho[..., None] - 4.0 * w[..., coord:coord + 1] * qconj(w)) \
                / (rho ** 3)[..., None]

        f.reference_partial = ref
        return f

    if name == "product_regular":
        m = int(params.get("m", 1))
        n = int(params.get("n", 1))
        # expand (x1 - i x0)^m over the p block, (y1 - i y0)^n over q
        zp = PolyFunction({
            (0, 1, 0, 0, 0, 0, 0, 0): _UNIT_ARRAYS[0],
            (1, 0, 0, 0, 0, 0, 0, 0): -_UNIT_ARRAYS[1],
        }, nvars=2)
        zq = PolyFunction({
            (0, 0, 0, 0, 0, 1, 0, 0): _UNIT_ARRAYS[0],
            (0, 0, 0, 0, 1, 0, 0, 0): -_UNIT_ARRAYS[1],
        }, nvars=2)
        f = PolyFunction({(0,) * 8: _UNIT_ARRAYS[0]}, nvars=2)
        for _ in range(m):
            f = f * zp
        for _ in range(n):
            f = f * zq
        f.name = f"product_regular_{m}_{n}"
        f.regular = True
        return f

    if name == "bounded_strip_regular":
        a_p = float(params.get("a_p", 2.0))
        a_q = float(params.get("a_q", 2.0))

        def fn(pts):
            pts = np.asarray(pts, dtype=float)
            w = 1.0 / (a_p - _zeta(pts, 0)) / (a_q - _zeta(pts, 4))
            return _slice_pair(w)

        dom = ProductDomain(BallDomain(0.0, 0.98 * a_p), BallDomain(0.0, 0.98 * a_q))
        f = BlackBoxFunction(fn, nvars=2, domain=dom, name="bounded_strip_regular")
        f.regular = True
        f.slice_params = (a_p, a_q)

        def ref(var, coord, x):
            pts = np.asarray(x, dtype=float)
            zp, zq = _zeta(pts, 0), _zeta(pts, 4)
            if var == 0:
                dz = {0: -1j, 1: 1.0}.get(coord, 0.0)
                w = dz / (a_p - zp) ** 2 / (a_q - zq)
            else:
                dz = {0: -1j, 1: 1.0}.get(coord, 0.0)
                w = dz / (a_p - zp) / (a_q - zq) ** 2
            return _slice_pair(np.asarray(w, dtype=complex) * np.ones_like(zp))

        f.reference_partial = ref
        return f

    if name == "slice_exponential":
        lam_p = float(params.get("lam_p", 1.0))
        lam_q = float(params.get("lam_q", 1.0))

        def fn(pts):
            pts = np.asarray(pts, dtype=float)
            w = np.exp(lam_p * _zeta(pts, 0)) * np.exp(lam_q * _zeta(pts, 4))
            return _slice_pair(w)

        f = BlackBoxFunction(fn, nvars=2, domain=WholeSpace(), name="slice_exponential")
        f.regular = True
        f.slice_params = (lam_p, lam_q)

        def ref(var, coord, x):
            pts = np.asarray(x, dtype=float)
            w = np.exp(lam_p * _zeta(pts, 0)) * np.exp(lam_q * _zeta(pts, 4))
            lam = lam_p if var == 0 else lam_q
            dz = {0: -1j, 1: 1.0}.get(coord, 0.0)
            return _slice_pair(lam * dz * w)

        f.reference_partial = ref
        return f

    if name == "q_kernel":
        center = _point(params.get("center", 2.0))
        excl = max(0.05 * max(1.0, qnorm(center)), 1e-3)

        def fn(pts):
            w = np.asarray(pts, dtype=float)[..., 4:] - center
            return qconj(w) / (qnormsq(w) ** 2)[..., None]

        dom = ProductDomain(WholeSpace(), ExcludedBallDomain(center, excl))
        f = BlackBoxFunction(fn, nvars=2, domain=dom, name="q_kernel")
        f.regular = True
        f.center = center.copy()

        def ref(var, coord, x):
            if var == 0:
                x = np.asarray(x, dtype=float)
                return np.zeros(x.shape[:-1] + (4,))
            w = np.asarray(x, dtype=float)[..., 4:] - center
            rho = qnormsq(w)
            ebar = qconj(_UNIT_ARRAYS[coord])
            return (ebar * rho[..., None] - 4.0 * w[..., coord:coord + 1] * qconj(w)) \
                / (rho ** 3)[..., None]

        f.reference_partial = ref
        return f

    raise UnknownName(f"unknown reference function {name!r}")


ZOO_ONE_VARIABLE = ("constant", "identity", "fueter_variable", "kernel")
ZOO_TWO_VARIABLE = ("product_regular", "bounded_strip_regular",
                    "slice_exponential", "q_kernel")
