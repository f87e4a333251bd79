"""Shared numerical kernels: adaptive quadrature, root finding, special functions.

Quadrature
----------
``integrate`` runs a globally adaptive Gauss-Kronrod scheme.  Each panel is
evaluated with the 15-point Kronrod rule; the embedded 7-point Gauss rule
gives a free error estimate per panel, and the panel with the largest
estimate is bisected until the summed estimate meets the tolerance.  The
15/7 node-weight table is not hard-coded: it is derived once at import time
by solving the orthogonality system for the degree-8 Stieltjes polynomial
(the even monic polynomial orthogonal to P7 * x^k for k = 0..7) and then
solving for weights that integrate the Legendre basis exactly.  The test
suite asserts degree-22 exactness of the resulting rule.

Infinite intervals are folded onto (-1, 1) with the algebraic map
x = c + t / (1 - t^2), whose Jacobian (1 + t^2) / (1 - t^2)^2 is smooth on
the open interval; Kronrod nodes are interior, so the endpoints (and any
declared singularities, which become panel edges) are never evaluated.

Roots
-----
``find_roots`` brackets sign changes of a continuous function on a uniform
grid and polishes each bracket with Brent's method (the hybrid
bisection/secant/inverse-quadratic family).

Special functions
-----------------
Thin wrappers over scipy.special, exposed under stable names so the rest of
the package never imports scipy directly for these.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from heapq import heappush, heappop
from typing import Callable, Sequence

import numpy as np
from scipy import special as _sp
from scipy.optimize import brentq

from .errors import BadParam, DomainError, NonConvergence, NonFinite

__all__ = [
    "Interval",
    "QuadSpec",
    "integrate",
    "cumulative_integral",
    "find_roots",
    "special",
    "normal_cdf",
    "normal_ppf",
    "normal_pdf",
    "erf",
    "lower_incomplete_gamma",
    "gamma_fn",
    "ensure_vectorized",
]

_ENV_TOL = "SKEWLAB_QUAD_TOL"


# ---------------------------------------------------------------------------
# intervals and tolerances


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); either end may be infinite."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise BadParam(f"interval requires lo < hi, got ({self.lo}, {self.hi})")
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise BadParam("interval endpoints must not be NaN")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi


REAL_LINE = Interval(-math.inf, math.inf)


def _default_abs_tol() -> float:
    raw = os.environ.get(_ENV_TOL)
    if raw is None:
        return 1e-10
    try:
        val = float(raw)
    except ValueError as exc:
        raise BadParam(f"{_ENV_TOL} must be a float, got {raw!r}") from exc
    if val <= 0:
        raise BadParam(f"{_ENV_TOL} must be positive, got {val}")
    return val


def _default_rel_tol() -> float:
    # keeps the default 1e-10 / 1e-8 ratio when the env var rescales abs_tol
    return 100.0 * _default_abs_tol()


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and budget for adaptive quadrature.

    The stopping rule is: summed panel error <= max(abs_tol, rel_tol * |I|).
    ``SKEWLAB_QUAD_TOL`` overrides the default absolute tolerance (relative
    tolerance scales with it); explicit constructor arguments win over the
    environment.
    """

    abs_tol: float = field(default_factory=_default_abs_tol)
    rel_tol: float = field(default_factory=_default_rel_tol)
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise BadParam("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise BadParam("max_subdivisions must be >= 1")


# ---------------------------------------------------------------------------
# Gauss-Kronrod 15/7 table


def _build_gk15() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    gauss_nodes, gauss_weights = np.polynomial.legendre.leggauss(7)
    legendre_basis = np.polynomial.legendre.Legendre.basis
    p7 = legendre_basis(7)
    # reference rule exact for polynomial degree <= 47; all integrands below
    # have degree <= 22
    qx, qw = np.polynomial.legendre.leggauss(24)
    p7_vals = p7(qx)
    # E8(x) = x^8 + c6 x^6 + c4 x^4 + c2 x^2 + c0, orthogonal to P7 * x^k.
    # Even k vanish by parity; odd k give a 4x4 system for (c0, c2, c4, c6).
    odd_k = (1, 3, 5, 7)
    system = np.empty((4, 4))
    rhs = np.empty(4)
    for row, k in enumerate(odd_k):
        moment = p7_vals * qx**k
        for col, p in enumerate((0, 2, 4, 6)):
            system[row, col] = qw @ (moment * qx**p)
        rhs[row] = -(qw @ (moment * qx**8))
    c0, c2, c4, c6 = np.linalg.solve(system, rhs)
    z = np.roots([1.0, c6, c4, c2, c0])  # roots in z = x^2
    if np.any(np.abs(z.imag) > 1e-10) or np.any(z.real <= 0):
        raise AssertionError("Stieltjes polynomial roots are not positive reals")
    half = np.sqrt(np.sort(z.real))
    nodes = np.sort(np.concatenate([-half, half, gauss_nodes]))
    vander = np.stack([legendre_basis(j)(nodes) for j in range(15)])
    moments = np.zeros(15)
    moments[0] = 2.0
    kronrod_weights = np.linalg.solve(vander, moments)
    embedded = np.zeros(15)
    for x, w in zip(gauss_nodes, gauss_weights):
        embedded[int(np.argmin(np.abs(nodes - x)))] = w
    return nodes, kronrod_weights, embedded


_GK_NODES, _GK_WEIGHTS, _GK_EMBEDDED = _build_gk15()


# ---------------------------------------------------------------------------
# integration core


def ensure_vectorized(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """Return a callable mapping float arrays to float arrays.

    Library callables are numpy-polymorphic already; user callables that only
    accept scalars are wrapped in a python-level loop.
    """

    probe = np.array([0.125, 0.25])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return lambda x: np.asarray(f(x), dtype=float)
    except Exception:
        pass

    def looped(x: np.ndarray) -> np.ndarray:
        flat = np.asarray(x, dtype=float).ravel()
        return np.array([float(f(v)) for v in flat]).reshape(np.shape(x))

    return looped


def _panel_eval(fvec, a: float, b: float) -> tuple[float, float, float]:
    """Kronrod value, Gauss value and error estimate of one panel."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = fvec(mid + half * _GK_NODES)
    if not np.all(np.isfinite(vals)):
        bad = mid + half * _GK_NODES[~np.isfinite(np.asarray(vals))][0]
        raise NonFinite(f"integrand returned a non-finite value near x = {bad!r}")
    kron = half * float(_GK_WEIGHTS @ vals)
    gauss = half * float(_GK_EMBEDDED @ vals)
    return kron, gauss, abs(kron - gauss)


def _map_to_unit(x: float, center: float) -> float:
    """Inverse of t -> center + t/(1-t^2) on |t| < 1."""
    shifted = x - center
    if shifted == 0.0:
        return 0.0
    return (math.sqrt(1.0 + 4.0 * shifted * shifted) - 1.0) / (2.0 * shifted)


def _transform(fvec, iv: Interval, singularities: Sequence[float]):
    """Fold an infinite interval onto a finite one; map singularities along."""
    interior = [s for s in singularities if iv.contains(s)]
    if iv.finite:
        return fvec, iv.lo, iv.hi, sorted(interior)

    lo_inf = math.isinf(iv.lo)
    hi_inf = math.isinf(iv.hi)
    if lo_inf and hi_inf:
        center, t_lo, t_hi = 0.0, -1.0, 1.0
    elif hi_inf:
        center, t_lo, t_hi = iv.lo, 0.0, 1.0
    else:
        center, t_lo, t_hi = iv.hi, -1.0, 0.0

    def folded(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        denom = 1.0 - t * t
        x = center + t / denom
        jac = (1.0 + t * t) / (denom * denom)
        return fvec(x) * jac

    mapped = sorted(_map_to_unit(s, center) for s in interior)
    return folded, t_lo, t_hi, mapped


def integrate(
    f: Callable,
    iv: Interval,
    spec: QuadSpec | None = None,
    singularities: Sequence[float] = (),
    vectorized: bool = True,
) -> float:
    """Adaptively integrate ``f`` over ``iv``.

    Declared singularities become panel boundaries, which the interior
    Kronrod nodes never touch.  Raises NonConvergence when the subdivision
    budget is exhausted and NonFinite when the integrand returns NaN or inf
    at an evaluated node.
    """
    spec = spec or QuadSpec()
    fvec = (lambda x: np.asarray(f(x), dtype=float)) if vectorized else ensure_vectorized(f)
    g, lo, hi, cuts = _transform(fvec, iv, singularities)

    edges = [lo, *cuts, hi]
    heap: list[tuple[float, int, float, float, float, float]] = []
    counter = 0
    total = 0.0
    total_err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if not b > a:
            continue
        kron, _, err = _panel_eval(g, a, b)
        heappush(heap, (-err, counter, a, b, kron, err))
        counter += 1
        total += kron
        total_err += err

    splits = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if splits >= spec.max_subdivisions:
            raise NonConvergence(
                f"quadrature error {total_err:.3e} above tolerance after "
                f"{spec.max_subdivisions} subdivisions"
            )
        neg_err, _, a, b, kron, err = heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            # panel narrowed to machine width and still disagrees
            raise NonConvergence(f"panel at [{a}, {b}] cannot be refined further")
        k1, _, e1 = _panel_eval(g, a, mid)
        k2, _, e2 = _panel_eval(g, mid, b)
        total += (k1 + k2) - kron
        total_err += (e1 + e2) - err
        heappush(heap, (-e1, counter, a, mid, k1, e1))
        counter += 1
        heappush(heap, (-e2, counter, mid, b, k2, e2))
        counter += 1
        splits += 1
    return total


def cumulative_integral(
    f: Callable,
    points: np.ndarray,
    iv: Interval,
    spec: QuadSpec | None = None,
    vectorized: bool = True,
) -> np.ndarray:
    """Integral of ``f`` from ``iv.lo`` up to each of the sorted ``points``.

    The head integral (iv.lo, points[0]) runs adaptively; consecutive
    segments are evaluated with one Kronrod panel each, all segments
    batched into a single vectorized call, and any segment whose embedded
    error estimate is large is redone adaptively.
    """
    spec = spec or QuadSpec()
    points = np.asarray(points, dtype=float)
    if points.ndim != 1 or points.size == 0:
        raise BadParam("points must be a non-empty 1-d array")
    if np.any(np.diff(points) < 0):
        raise BadParam("points must be sorted ascending")
    fvec = (lambda x: np.asarray(f(x), dtype=float)) if vectorized else ensure_vectorized(f)

    head = 0.0
    if points[0] > iv.lo:
        head = integrate(fvec, Interval(iv.lo, points[0]), spec)

    los = points[:-1]
    his = points[1:]
    mids = 0.5 * (los + his)
    halves = 0.5 * (his - los)
    nodes = mids[:, None] + halves[:, None] * _GK_NODES[None, :]
    vals = fvec(nodes)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("integrand returned a non-finite value on the grid")
    kron = halves * (vals @ _GK_WEIGHTS)
    gauss = halves * (vals @ _GK_EMBEDDED)
    err = np.abs(kron - gauss)
    # refine the rare wide segments where one panel is not enough
    redo = np.nonzero(err > max(spec.abs_tol, 1e-14))[0]
    for i in redo:
        if halves[i] > 0:
            kron[i] = integrate(fvec, Interval(los[i], his[i]), spec)
    return head + np.concatenate([[0.0], np.cumsum(kron)])


# ---------------------------------------------------------------------------
# roots


def find_roots(
    f: Callable,
    iv: Interval,
    grid_n: int = 400,
    vectorized: bool = True,
) -> np.ndarray:
    """All sign-change roots of a continuous ``f`` on a finite interval.

    A uniform grid of ``grid_n`` cells brackets the sign changes; each
    bracket is polished with Brent's method.  Roots closer than one part in
    1e-12 of the interval width are merged.
    """
    if not iv.finite:
        raise BadParam("find_roots requires a finite interval")
    if grid_n < 2:
        raise BadParam("grid_n must be >= 2")
    xs = np.linspace(iv.lo, iv.hi, grid_n + 1)
    fvec = (lambda x: np.asarray(f(x), dtype=float)) if vectorized else ensure_vectorized(f)
    fs = fvec(xs)
    if not np.all(np.isfinite(fs)):
        raise NonFinite("function returned a non-finite value on the root grid")

    def f_scalar(x: float) -> float:
        return float(fvec(np.array([x]))[0])

    roots: list[float] = [float(x) for x in xs[fs == 0.0]]
    signs = np.sign(fs)
    flip = np.nonzero((signs[:-1] * signs[1:]) < 0)[0]
    for i in flip:
        roots.append(float(brentq(f_scalar, xs[i], xs[i + 1], xtol=1e-14, rtol=8.9e-16)))

    roots.sort()
    merged: list[float] = []
    tol = (iv.hi - iv.lo) * 1e-12
    for r in roots:
        if not merged or r - merged[-1] > tol:
            merged.append(r)
    return np.array(merged)


# ---------------------------------------------------------------------------
# special functions


def normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def normal_cdf(x):
    return _sp.ndtr(np.asarray(x, dtype=float))


def normal_ppf(p):
    return _sp.ndtri(np.asarray(p, dtype=float))


def erf(x):
    return _sp.erf(np.asarray(x, dtype=float))


def lower_incomplete_gamma(a, x):
    """Unregularized lower incomplete gamma: integral of t^(a-1) e^-t on (0, x)."""
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("lower incomplete gamma requires a > 0")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("lower incomplete gamma requires x >= 0")
    return _sp.gammainc(a, x) * _sp.gamma(a)


def gamma_fn(a):
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0) and np.any(a == np.floor(a)):
        raise DomainError("gamma function pole at non-positive integers")
    return _sp.gamma(a)


_SPECIAL = {
    "Phi": normal_cdf,
    "erf": erf,
    "gamma_inc_lower": lower_incomplete_gamma,
    "Gamma": gamma_fn,
}


def special(name: str, *args):
    """Dispatch by name: 'Phi', 'erf', 'gamma_inc_lower', 'Gamma'."""
    try:
        fn = _SPECIAL[name]
    except KeyError as exc:
        raise BadParam(f"unknown special function {name!r}; choices: {sorted(_SPECIAL)}") from exc
    return fn(*args)
