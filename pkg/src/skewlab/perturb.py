"""Perturbation functions G and the symmetric/skew decomposition.

A perturbation is any G >= 0 with G(x) + G(-x) = 1; multiplying a symmetric
base density by 2G yields a normalized skew density.  Two constructions are
supported:

* ``compose(G0, w)``: a symmetric cdf G0 evaluated at an odd function w.
  Oddness of w is validated on a seeded random grid at construction.
* ``validate_raw(G)``: an arbitrary callable checked directly against the
  complement identity and nonnegativity.  The identity is an almost-
  everywhere condition, so the single centre point x = 0 is exempt (the
  half-density indicator violates it exactly there and nowhere else).

``minimal_representation`` rewrites any perturbation as U(-1/2, 1/2) cdf
composed with w*(x) = G(x) - 1/2, and ``decompose`` inverts the whole
construction: given a density f it recovers the unique symmetric base
f0(x) = (f(x) + f(-x)) / 2 and the ratio G = f / (2 f0), with the arbitrary
branch outside the symmetrized support fixed to 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bases import SymmetricBase, make_base
from .errors import (
    BadParam,
    NonDifferentiable,
    NonFinite,
    NotADensity,
    NotAPerturbation,
    OddnessViolation,
)
from .numerics import Interval, QuadSpec, ensure_vectorized, integrate

__all__ = [
    "OddFn",
    "odd_linear",
    "odd_cubic",
    "odd_poly",
    "skewt_weight",
    "odd_from_callable",
    "PerturbationFn",
    "ComposedPerturbation",
    "DirectPerturbation",
    "compose",
    "validate_raw",
    "half_indicator",
    "constant_half",
    "minimal_representation",
    "Decomposition",
    "decompose",
]

_ODD_GRID_SEED = 20260815
_ODD_GRID_N = 100
_ODD_TOL = 1e-10


def _odd_check_grid() -> np.ndarray:
    rng = np.random.default_rng(_ODD_GRID_SEED)
    return rng.uniform(-10.0, 10.0, _ODD_GRID_N)


@dataclass(frozen=True)
class OddFn:
    """An odd function w with optional closed-form derivative and shape tags.

    ``nondecreasing`` / ``concave_on_positive`` are tri-state: True, False,
    or None when unknown.  Construction validates w(-x) = -w(x) within 1e-10
    on a seeded 100-point grid.
    """

    fn: Callable
    name: str = "odd"
    params: dict = field(default_factory=dict)
    derivative: Callable | None = None
    nondecreasing: bool | None = None
    concave_on_positive: bool | None = None

    def __post_init__(self) -> None:
        xs = _odd_check_grid()
        w_pos = np.asarray(self.fn(xs), dtype=float)
        w_neg = np.asarray(self.fn(-xs), dtype=float)
        if not (np.all(np.isfinite(w_pos)) and np.all(np.isfinite(w_neg))):
            raise NonFinite(f"odd function {self.name!r} returned non-finite values")
        defect = np.max(np.abs(w_pos + w_neg))
        if defect > _ODD_TOL:
            raise OddnessViolation(
                f"{self.name!r} fails w(-x) = -w(x): max defect {defect:.3e} > {_ODD_TOL}"
            )

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        if self.derivative is not None:
            return self.derivative(x)
        h = 1e-6 * np.maximum(1.0, np.abs(x))
        out = (np.asarray(self.fn(x + h), float) - np.asarray(self.fn(x - h), float)) / (2 * h)
        if not np.all(np.isfinite(out)):
            raise NonDifferentiable(f"finite difference of {self.name!r} failed")
        return out


def odd_linear(alpha: float) -> OddFn:
    a = float(alpha)
    return OddFn(
        fn=lambda x: a * x,
        name="linear",
        params={"alpha": a},
        derivative=lambda x: np.full_like(np.asarray(x, float), a),
        nondecreasing=a >= 0,
        concave_on_positive=True,  # affine
    )


def odd_cubic(alpha: float, beta: float) -> OddFn:
    a, b = float(alpha), float(beta)
    return OddFn(
        fn=lambda x: x * (a + b * x * x),
        name="cubic",
        params={"alpha": a, "beta": b},
        derivative=lambda x: a + 3.0 * b * np.square(np.asarray(x, float)),
        nondecreasing=(a >= 0 and b >= 0),
        concave_on_positive=(b <= 0),
    )


def odd_poly(coeffs: dict[int, float]) -> OddFn:
    """Polynomial with odd-degree terms only, given as {degree: coefficient}."""
    if not coeffs:
        raise BadParam("odd_poly needs at least one term")
    clean: dict[int, float] = {}
    for deg, c in coeffs.items():
        if not (isinstance(deg, int) and deg >= 1 and deg % 2 == 1):
            raise BadParam(f"odd_poly degrees must be odd positive integers, got {deg}")
        clean[deg] = float(c)
    degs = sorted(clean)
    cs = [clean[d] for d in degs]

    def fn(x):
        x = np.asarray(x, float)
        out = np.zeros_like(x)
        for d, c in zip(degs, cs):
            out += c * np.power(x, d)
        return out

    def deriv(x):
        x = np.asarray(x, float)
        out = np.zeros_like(x)
        for d, c in zip(degs, cs):
            out += c * d * np.power(x, d - 1)
        return out

    if set(degs) <= {1, 3}:
        a = clean.get(1, 0.0)
        b = clean.get(3, 0.0)
        nondec = a >= 0 and b >= 0
        ccv_pos = b <= 0
    else:
        nondec = all(c >= 0 for c in cs) or None
        ccv_pos = None
    return OddFn(
        fn=fn,
        name="poly",
        params={"coeffs": dict(sorted(clean.items()))},
        derivative=deriv,
        nondecreasing=nondec,
        concave_on_positive=ccv_pos,
    )


def skewt_weight(alpha: float, nu: float) -> OddFn:
    """The skew-t weight alpha * x * sqrt((nu+1) / (nu + x^2))."""
    a, v = float(alpha), float(nu)
    if v <= 0:
        raise BadParam(f"skewt_weight requires nu > 0, got {nu}")
    root = math.sqrt(v + 1.0)

    def fn(x):
        x = np.asarray(x, float)
        return a * x * root / np.sqrt(v + x * x)

    def deriv(x):
        x = np.asarray(x, float)
        return a * root * v * np.power(v + x * x, -1.5)

    return OddFn(
        fn=fn,
        name="skewt_weight",
        params={"alpha": a, "nu": v},
        derivative=deriv,
        nondecreasing=a >= 0,
        concave_on_positive=(a >= 0),
    )


def odd_from_callable(fn: Callable, name: str = "custom", derivative: Callable | None = None) -> OddFn:
    return OddFn(fn=ensure_vectorized(fn), name=name, derivative=derivative)


# ---------------------------------------------------------------------------
# perturbations


class PerturbationFn:
    """Base interface: G(x) plus a density g = G' (finite difference fallback)."""

    name: str = "perturbation"
    representation: str = "direct"

    def __call__(self, x):
        raise NotImplementedError

    def density(self, x):
        x = np.asarray(x, dtype=float)
        h = 1e-6 * np.maximum(1.0, np.abs(x))
        out = (np.asarray(self(x + h), float) - np.asarray(self(x - h), float)) / (2 * h)
        if not np.all(np.isfinite(out)):
            raise NonDifferentiable(f"finite difference of {self.name!r} failed")
        return out

    def complement_defect(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.abs(np.asarray(self(x), float) + np.asarray(self(-x), float) - 1.0)


class ComposedPerturbation(PerturbationFn):
    """G = G0 o w for a symmetric cdf G0 and odd w."""

    representation = "composed"

    def __init__(self, g0_base: SymmetricBase, w: OddFn):
        self.g0_base = g0_base
        self.w = w
        self.name = f"{g0_base.name}∘{w.name}"

    def __call__(self, x):
        return self.g0_base.cdf(self.w(x))

    def density(self, x):
        if self.g0_base.pdf is None:
            return super().density(x)
        x = np.asarray(x, dtype=float)
        return self.g0_base.pdf(self.w(x)) * self.w.deriv(x)


class DirectPerturbation(PerturbationFn):
    """A raw validated G; the density comes from finite differences."""

    representation = "direct"

    def __init__(self, fn: Callable, name: str = "raw", density_fn: Callable | None = None):
        self._fn = fn
        self._density = density_fn
        self.name = name

    def __call__(self, x):
        return np.asarray(self._fn(np.asarray(x, dtype=float)), dtype=float)

    def density(self, x):
        if self._density is not None:
            return np.asarray(self._density(np.asarray(x, dtype=float)), dtype=float)
        return super().density(x)


def compose(g0, w) -> ComposedPerturbation:
    """Compose a symmetric cdf with an odd function.

    ``g0`` may be a SymmetricBase or a plain cdf callable (then symmetry is
    verified on a seeded grid and the density falls back to differences);
    ``w`` may be an OddFn or a plain callable (then wrapped, which validates
    oddness).
    """
    if not isinstance(w, OddFn):
        w = odd_from_callable(w)
    if isinstance(g0, SymmetricBase):
        base = g0
    else:
        cdf = ensure_vectorized(g0)
        ts = np.abs(_odd_check_grid())
        defect = np.max(np.abs(cdf(ts) + cdf(-ts) - 1.0))
        if defect > 1e-9:
            raise NotAPerturbation(
                f"G0 is not a symmetric cdf: max |G0(t)+G0(-t)-1| = {defect:.3e}"
            )
        base = SymmetricBase(name="raw_cdf", pdf=None, cdf=cdf)
    return ComposedPerturbation(base, w)


_RAW_GRID = np.linspace(-20.0, 20.0, 401)


def validate_raw(
    g: Callable,
    grid: np.ndarray | None = None,
    tol: float = 1e-9,
    name: str = "raw",
) -> DirectPerturbation:
    """Validate an arbitrary G against nonnegativity and the complement identity.

    The identity G(x) + G(-x) = 1 is checked at every grid point except
    x = 0 exactly, where only 0 <= G(0) <= 1 is required: the identity is
    almost-everywhere and the admissible half-density indicator breaks it
    only at the centre.
    """
    xs = _RAW_GRID if grid is None else np.asarray(grid, dtype=float)
    fn = ensure_vectorized(g)
    vals = fn(xs)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("raw perturbation returned non-finite values on the grid")
    if np.any(vals < -tol):
        worst = float(xs[np.argmin(vals)])
        raise NotAPerturbation(f"G < 0 at x = {worst} (G = {np.min(vals):.3e})")
    mask = xs != 0.0
    defect = np.abs(vals + fn(-xs) - 1.0)[mask]
    if defect.size and np.max(defect) > tol:
        worst = float(xs[mask][np.argmax(defect)])
        raise NotAPerturbation(
            f"complement identity fails at x = {worst}: |G(x)+G(-x)-1| = {np.max(defect):.3e}"
        )
    center = fn(np.array([0.0]))[0]
    if not (-tol <= center <= 1.0 + tol):
        raise NotAPerturbation(f"G(0) = {center} outside [0, 1]")
    return DirectPerturbation(fn, name=name)


def half_indicator() -> DirectPerturbation:
    """The half-density perturbation I[x >= 0]."""
    return validate_raw(
        lambda x: (np.asarray(x, float) >= 0.0).astype(float), name="half_indicator"
    )


def constant_half() -> DirectPerturbation:
    """G = 1/2: the null perturbation leaving the base symmetric."""
    return DirectPerturbation(
        lambda x: np.full_like(np.asarray(x, float), 0.5),
        name="constant_half",
        density_fn=lambda x: np.zeros_like(np.asarray(x, float)),
    )


def minimal_representation(p: PerturbationFn) -> tuple[SymmetricBase, OddFn]:
    """Rewrite G as U(-1/2, 1/2) cdf composed with w* = G - 1/2.

    w* is evaluated as (G(x) - G(-x)) / 2, which is odd to the last bit even
    when G carries an O(tol) complement defect.
    """
    g0 = make_base("uniform", half_width=0.5)

    def w_star(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * (np.asarray(p(x), float) - np.asarray(p(-x), float))

    def w_star_deriv(x):
        return p.density(np.asarray(x, dtype=float))

    w = OddFn(fn=w_star, name=f"{p.name}-1/2", derivative=w_star_deriv)
    return g0, w


# ---------------------------------------------------------------------------
# decomposition


def _as_box(support) -> tuple[Interval, ...]:
    if isinstance(support, Interval):
        return (support,)
    box = tuple(support)
    if not box or not all(isinstance(b, Interval) for b in box):
        raise BadParam("support must be an Interval or a sequence of Intervals")
    if len(box) > 3:
        raise BadParam("decompose supports dimension d <= 3")
    return box


def _box_integral(f: Callable, box: tuple[Interval, ...], spec: QuadSpec) -> float:
    """Nested adaptive quadrature of f over a (<=3)-dimensional box."""
    if len(box) == 1:
        return integrate(f, box[0], spec)
    inner_spec = QuadSpec(
        abs_tol=max(spec.abs_tol, 1e-9), rel_tol=max(spec.rel_tol, 1e-7),
        max_subdivisions=spec.max_subdivisions,
    )

    def sliced(xs):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty(xs.shape)
        for i, xi in enumerate(xs):
            def section(rest):
                rest = np.atleast_2d(np.asarray(rest, dtype=float).reshape(-1, len(box) - 1))
                pts = np.column_stack([np.full(len(rest), xi), rest])
                return np.asarray(f(pts), dtype=float)

            if len(box) == 2:
                out[i] = integrate(
                    lambda y: section(y.reshape(-1, 1)), box[1], inner_spec
                )
            else:
                out[i] = _box_integral(section, box[1:], inner_spec)
        return out

    return integrate(sliced, box[0], spec)


@dataclass(frozen=True)
class Decomposition:
    """Result of splitting f into its symmetric base and perturbation."""

    f0: Callable
    G: DirectPerturbation
    dim: int
    sym_support: Callable  # membership predicate for S0 = S u (-S)
    zero_base_points: tuple
    norm_defect: float


def decompose(
    f: Callable,
    support,
    spec: QuadSpec | None = None,
    check_normalization: bool = True,
) -> Decomposition:
    """Unique decomposition f = 2 f0 G.

    ``f`` must evaluate to its density value everywhere (0 off its support).
    For d = 1 pass an Interval; for d in {2, 3} a sequence of Intervals
    bounding the support box.  The recovered pieces satisfy
    f0(x) = (f(x) + f(-x)) / 2 on the symmetrized support S0 and G = 1/2
    outside S0 (and wherever f0 vanishes inside, which is flagged).
    """
    spec = spec or QuadSpec()
    box = _as_box(support)
    dim = len(box)
    fvec = f if dim > 1 else ensure_vectorized(f)

    norm_defect = float("nan")
    if check_normalization:
        mass = _box_integral(fvec, box, spec)
        if abs(mass - 1.0) > 1e-6:
            raise NotADensity(f"density integrates to {mass!r}, not 1")
        norm_defect = abs(mass - 1.0)

    def in_box(pts: np.ndarray) -> np.ndarray:
        if dim == 1:
            return (pts > box[0].lo) & (pts < box[0].hi)
        inside = np.ones(pts.shape[0], dtype=bool)
        for j, b in enumerate(box):
            inside &= (pts[:, j] > b.lo) & (pts[:, j] < b.hi)
        return inside

    def in_sym(pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return in_box(pts) | in_box(-pts)

    def f0(x):
        x = np.asarray(x, dtype=float)
        vals = 0.5 * (np.asarray(fvec(x), float) + np.asarray(fvec(-x), float))
        return np.where(in_sym(x), vals, 0.0)

    tiny = 1e-300

    def g_fn(x):
        x = np.asarray(x, dtype=float)
        num = np.asarray(fvec(x), dtype=float)
        den = 2.0 * f0(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(den > tiny, num / np.where(den > tiny, den, 1.0), 0.5)
        return ratio

    # flag grid points inside S0 where the base vanishes (branch forced to 1/2)
    if dim == 1:
        lo = max(box[0].lo, -20.0)
        hi = min(box[0].hi, 20.0)
        probe = np.linspace(lo, hi, 201)
        sym_mask = in_sym(probe)
        f0_vals = f0(probe)
        flagged = tuple(float(v) for v in probe[sym_mask & (f0_vals <= tiny)][:5])
    else:
        flagged = ()

    g = DirectPerturbation(g_fn, name="decomposed")
    return Decomposition(
        f0=f0, G=g, dim=dim, sym_support=in_sym,
        zero_base_points=flagged, norm_defect=norm_defect,
    )
