"""Quadrature on 3-spheres and the Cauchy-Fueter reproducing integral.

The integral implemented here is

    f(p0) = (1/2 pi^2) * integral over the sphere of
            kernel(p, p0) * D(p) * f(p),

with kernel(p, p0) = conj(p - p0)/|p - p0|^4 and the quaternion-valued
3-form D(p).  Pulled back to a sphere, D(p) is the outward unit normal
(read as a quaternion) times the area element; this is the divergence-
theorem pairing of the form's coefficients with the normal.  The factor
order kernel * D * f is load-bearing: the algebra is non-commutative and
reordering breaks reproduction for non-real integrands.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .algebra import midx_factorial, midx_order, multi_indices_upto, qconj, qmul, qnorm, qnormsq
from .errors import BadResolution, OrderTooHigh, PointOnOrOutsideSphere
from .funcrep import as_point

TWO_PI_SQ = 2.0 * math.pi ** 2

DEFAULT_DERIVATIVE_CAP = 12


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereGrid:
    """Quadrature nodes/weights on a 3-sphere, with the normal-form density.

    ``normal_form[n] = weights[n] * (nodes[n] - center)/radius`` realizes the
    pullback of D(p); summing a quaternion-valued integrand against it
    approximates the surface integral against D.
    """

    center: np.ndarray
    radius: float
    nodes: np.ndarray      # (Q, 4)
    weights: np.ndarray    # (Q,)
    normals: np.ndarray    # (Q, 4), outward unit
    resolution: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def normal_form(self):
        key = "normal_form"
        if key not in self._cache:
            self._cache[key] = self.normals * self.weights[:, None]
        return self._cache[key]

    @property
    def n_nodes(self):
        return self.nodes.shape[0]

    def to_csv(self, path):
        """Debug export: node coordinates, weight, outward unit normal."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["node_x0", "node_x1", "node_x2", "node_x3", "weight",
                 "normal_x0", "normal_x1", "normal_x2", "normal_x3"]
            )
            for node, w, nrm in zip(self.nodes, self.weights, self.normals):
                writer.writerow([repr(float(v)) for v in node]
                                + [repr(float(w))]
                                + [repr(float(v)) for v in nrm])


def sphere_grid(center=0.0, radius=1.0, resolution=16):
    """Product quadrature grid on the sphere |p - center| = radius.

    Hyperspherical angles (t1, t2, phi) with area density
    radius^3 sin^2(t1) sin(t2): Gauss-Legendre nodes in t1 and t2
    (``resolution`` points each) and a uniform periodic trapezoid rule in
    phi (``2 * resolution`` points).  Total weight is the sphere area
    2 pi^2 radius^3.
    """
    if resolution < 8:
        raise BadResolution(f"resolution must be >= 8, got {resolution}")
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    center = as_point(center)

    x1, w1 = leggauss(resolution)           # on [-1, 1]
    t1 = 0.5 * math.pi * (x1 + 1.0)
    w1 = 0.5 * math.pi * w1
    t2, w2 = t1.copy(), w1.copy()
    n_phi = 2 * resolution
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    w_phi = np.full(n_phi, 2.0 * math.pi / n_phi)

    T1, T2, PHI = np.meshgrid(t1, t2, phi, indexing="ij")
    W = (w1[:, None, None] * np.sin(T1) ** 2
         * w2[None, :, None] * np.sin(T2)
         * w_phi[None, None, :]) * radius ** 3

    sin1, cos1 = np.sin(T1), np.cos(T1)
    sin2, cos2 = np.sin(T2), np.cos(T2)
    normals = np.stack(
        (cos1, sin1 * cos2, sin1 * sin2 * np.cos(PHI), sin1 * sin2 * np.sin(PHI)),
        axis=-1,
    ).reshape(-1, 4)
    nodes = center + radius * normals
    return SphereGrid(center=center, radius=radius, nodes=nodes,
                      weights=W.reshape(-1), normals=normals,
                      resolution=resolution)


# ---------------------------------------------------------------------------
# reproducing integrals
# ---------------------------------------------------------------------------

def _require_inside(grid, point, label="p0"):
    d = qnorm(np.asarray(point) - grid.center)
    if d >= grid.radius * (1.0 - 1e-12):
        raise PointOnOrOutsideSphere(
            f"{label} at distance {d:g} is not strictly inside the sphere "
            f"of radius {grid.radius:g}"
        )


def cauchy_kernel(p, p0):
    """conj(p - p0)/|p - p0|^4 on (..., 4) arrays."""
    w = np.asarray(p, dtype=float) - np.asarray(p0, dtype=float)
    return qconj(w) / (qnormsq(w) ** 2)[..., None]


def cf_integral(f, grid, p0):
    """Reproduce f(p0) from boundary data of a regular one-variable f.

    Returns the quadrature value of the reproducing integral as a (4,)
    array-backed Quaternion-compatible vector.  For left regular f this
    converges to f(p0) as the grid is refined; for non-regular f the
    discrepancy is a regularity defect, not an error.
    """
    p0 = as_point(p0)
    _require_inside(grid, p0)
    K = cauchy_kernel(grid.nodes, p0)
    F = f.evaluate(grid.nodes)
    vals = qmul(qmul(K, grid.normal_form), F)
    return vals.sum(axis=0) / TWO_PI_SQ


def moment_form(f, grid):
    """Precompute normal_form * f at the nodes (reusable across p0)."""
    return qmul(grid.normal_form, f.evaluate(grid.nodes))


def cf_integral_from_moments(moments, grid, p0):
    p0 = as_point(p0)
    _require_inside(grid, p0)
    K = cauchy_kernel(grid.nodes, p0)
    return qmul(K, moments).sum(axis=0) / TWO_PI_SQ


def cf_integral2(f, grid_p, grid_q, p0, q0, chunk=64):
    """Iterated two-variable reproducing integral (Fubini factorization).

    The integrand order is kernel_p * D(p) * kernel_q * D(q) * f(p, q);
    the sum is computed as the exact nesting of the one-variable rule, so
    it agrees with composing :func:`cf_integral` slice by slice up to
    floating-point roundoff.
    """
    p0 = as_point(p0)
    q0 = as_point(q0)
    _require_inside(grid_p, p0, "p0")
    _require_inside(grid_q, q0, "q0")

    B_q = qmul(cauchy_kernel(grid_q.nodes, q0), grid_q.normal_form)  # (Qq,4)
    n_p = grid_p.n_nodes
    n_q = grid_q.n_nodes
    inner = np.empty((n_p, 4))
    for start in range(0, n_p, chunk):
        stop = min(start + chunk, n_p)
        block = grid_p.nodes[start:stop]                 # (c,4)
        pair = np.empty((stop - start, n_q, 8))
        pair[:, :, :4] = block[:, None, :]
        pair[:, :, 4:] = grid_q.nodes[None, :, :]
        F = f.evaluate(pair)                             # (c,Qq,4)
        inner[start:stop] = qmul(B_q[None, :, :], F).sum(axis=1) / TWO_PI_SQ
    A_p = qmul(cauchy_kernel(grid_p.nodes, p0), grid_p.normal_form)
    return qmul(A_p, inner).sum(axis=0) / TWO_PI_SQ


# ---------------------------------------------------------------------------
# kernel derivatives and Taylor coefficients under the integral sign
# ---------------------------------------------------------------------------
#
# The reproducing kernel is rational:  component c of conj(w)/|w|^4 is
# N_c(w)/rho(w)^2 with rho = |w|^2 and N = (w0, -w1, -w2, -w3).  Derivatives
# in p0 at p0 = center are derivatives in -w, generated by the quotient rule
#     d/dw_l (P/rho^m) = (dP/dw_l * rho - 2 m w_l P) / rho^{m+1},
# which keeps every component in polynomial-over-rho-power form.  The table
# below builds these numerators once per multi-index and caches them; an
# independent finite-difference cross-check lives in the test suite.

def _poly_diff(poly, l):
    out = {}
    for exp, c in poly.items():
        if exp[l]:
            e = list(exp)
            e[l] -= 1
            out[tuple(e)] = out.get(tuple(e), 0.0) + c * exp[l]
    return out


def _poly_times_rho(poly):
    out = {}
    for exp, c in poly.items():
        for l in range(4):
            e = list(exp)
            e[l] += 2
            out[tuple(e)] = out.get(tuple(e), 0.0) + c
    return out


def _poly_times_coord(poly, l, scale):
    out = {}
    for exp, c in poly.items():
        e = list(exp)
        e[l] += 1
        out[tuple(e)] = out.get(tuple(e), 0.0) + c * scale
    return out


def _poly_add(a, b):
    out = dict(a)
    for exp, c in b.items():
        out[exp] = out.get(exp, 0.0) + c
    return out


class _KernelDerivatives:
    """Numerators of d^alpha [conj(w)/|w|^4], cached per multi-index."""

    def __init__(self):
        base = [
            {(1, 0, 0, 0): 1.0},
            {(0, 1, 0, 0): -1.0},
            {(0, 0, 1, 0): -1.0},
            {(0, 0, 0, 1): -1.0},
        ]
        self._table = {(0, 0, 0, 0): (base, 2)}

    def get(self, alpha):
        alpha = tuple(int(a) for a in alpha)
        if alpha in self._table:
            return self._table[alpha]
        l = max(i for i in range(4) if alpha[i] > 0)
        prev_alpha = tuple(a - (1 if i == l else 0) for i, a in enumerate(alpha))
        prev, m = self.get(prev_alpha)
        comps = []
        for P in prev:
            dP = _poly_times_rho(_poly_diff(P, l))
            shift = _poly_times_coord(P, l, -2.0 * m)
            comps.append(_poly_add(dP, shift))
        self._table[alpha] = (comps, m + 1)
        return self._table[alpha]


_KD = _KernelDerivatives()


def _grid_offset_cache(grid):
    cache = grid._cache.setdefault("kernel_derivs", {})
    if "powers" not in cache:
        w = grid.nodes - grid.center
        rho = qnormsq(w)
        cache["w"] = w
        cache["rho"] = rho
        cache["rho_pow"] = {}
        cache["powers"] = [{0: np.ones(grid.n_nodes)} for _ in range(4)]
        cache["weights"] = {}
    return cache


def _coord_power(cache, l, e):
    tab = cache["powers"][l]
    if e not in tab:
        # build upward from the largest cached exponent
        k = max(tab)
        while k < e:
            tab[k + 1] = tab[k] * cache["w"][:, l]
            k += 1
    return tab[e]


def _rho_power(cache, m):
    tab = cache["rho_pow"]
    if m not in tab:
        tab[m] = cache["rho"] ** m
    return tab[m]


def taylor_integral_weights(grid, alpha):
    """Folded quadrature weights for the alpha-th Taylor coefficient.

    Returns a (Q, 4) quaternion array W such that
    coeff_alpha = (1/2 pi^2) * sum_n  W[n] * f(node_n),
    where coeff_alpha = d^alpha f(center) / alpha!.  Differentiation in p0
    flips the sign of each derivative order, hence the (-1)^|alpha|.
    """
    alpha = tuple(int(a) for a in alpha)
    cache = _grid_offset_cache(grid)
    if alpha not in cache["weights"]:
        comps, m = _KD.get(alpha)
        rho_m = _rho_power(cache, m)
        vals = np.empty((grid.n_nodes, 4))
        for c, P in enumerate(comps):
            acc = np.zeros(grid.n_nodes)
            for exp, coeff in P.items():
                mono = np.ones(grid.n_nodes)
                for l in range(4):
                    if exp[l]:
                        mono = mono * _coord_power(cache, l, exp[l])
                acc += coeff * mono
            vals[:, c] = acc / rho_m
        sign = -1.0 if midx_order(alpha) % 2 else 1.0
        scale = sign / midx_factorial(alpha)
        cache["weights"][alpha] = qmul(vals * scale, grid.normal_form)
    return cache["weights"][alpha]


def taylor_from_integral(f, grid, alpha, cap=DEFAULT_DERIVATIVE_CAP):
    """Taylor coefficient d^alpha f(center)/alpha! by differentiating the
    reproducing kernel under the integral sign.

    Requires f regular on the closed ball bounded by the grid sphere.  With
    alpha = 0 this reduces to :func:`cf_integral` at the center.
    """
    alpha = tuple(int(a) for a in alpha)
    if midx_order(alpha) > cap:
        raise OrderTooHigh(f"|alpha| = {midx_order(alpha)} exceeds cap {cap}")
    W = taylor_integral_weights(grid, alpha)
    F = f.evaluate(grid.nodes)
    return qmul(W, F).sum(axis=0) / TWO_PI_SQ


def taylor_table_from_integral(f, grid, order, cap=DEFAULT_DERIVATIVE_CAP,
                               alphas=None, f_values=None):
    """All Taylor coefficients through ``order`` (or a chosen alpha subset).

    Shares a single evaluation of f on the grid across every coefficient.
    Returns a dict {alpha: (4,) array}.
    """
    if alphas is None:
        if order > cap:
            raise OrderTooHigh(f"order {order} exceeds cap {cap}")
        alphas = multi_indices_upto(order, dim=4)
    F = f.evaluate(grid.nodes) if f_values is None else f_values
    out = {}
    for alpha in alphas:
        W = taylor_integral_weights(grid, alpha)
        out[tuple(alpha)] = qmul(W, F).sum(axis=0) / TWO_PI_SQ
    return out
