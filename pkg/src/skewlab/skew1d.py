"""Univariate skew densities f = 2 f0 G and their distributional operations.

The cdf follows the survival identity: for x <= 0 it integrates the short
left tail; for x > 0 it is rewritten as F(x) = 2 F0(x) - 1 + F(-x), which
again only needs a left-tail integral.  Quantiles exploit the two-sided
envelope 2 F0(x) - 1 <= F(x) <= 2 F0(x), which brackets the p-quantile
between the base quantiles at p/2 and (1+p)/2 for every admissible G.
Sampling uses the sign-flip construction: draw X0 from the base by inverse
cdf, keep it with probability G(X0), otherwise emit -X0.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .bases import SymmetricBase
from .errors import BadParam, DomainError, MomentUndefined, NotADensity
from .numerics import Interval, QuadSpec, cumulative_integral, integrate
from .perturb import PerturbationFn, validate_raw

__all__ = ["SkewDensity1D"]


class SkewDensity1D:
    """A skew-symmetric density built from a symmetric base and a perturbation."""

    def __init__(
        self,
        base: SymmetricBase,
        perturbation: PerturbationFn | Callable,
        spec: QuadSpec | None = None,
        validate: bool = True,
    ):
        if not isinstance(perturbation, PerturbationFn):
            perturbation = validate_raw(perturbation)
        self.base = base
        self.G = perturbation
        self.spec = spec or QuadSpec()
        self.norm_check = float("nan")
        if validate:
            mass = integrate(self.pdf, base.support, self.spec)
            self.norm_check = float(mass)
            if abs(mass - 1.0) > 1e-6:
                raise NotADensity(
                    f"2*f0*G integrates to {mass!r}; the perturbation is not admissible"
                )

    # -- basic structure ---------------------------------------------------

    @property
    def support(self) -> Interval:
        return self.base.support

    def __repr__(self) -> str:
        return f"SkewDensity1D({self.base!r}, G={self.G.name})"

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return 2.0 * self.base.pdf(x) * np.asarray(self.G(x), dtype=float)

    # -- cdf ----------------------------------------------------------------

    def _left_tail(self, x: float) -> float:
        lo = self.support.lo
        if x <= lo:
            return 0.0
        return integrate(self.pdf, Interval(lo, x), self.spec)

    def _cdf_scalar(self, x: float) -> float:
        if x >= self.support.hi:
            return 1.0
        if x <= 0.0:
            val = self._left_tail(x)
        else:
            f0_cdf = float(self.base.cdf(x))
            val = 2.0 * f0_cdf - 1.0 + self._left_tail(-x)
        return min(1.0, max(0.0, val))

    def cdf(self, x):
        if np.ndim(x) == 0:
            return self._cdf_scalar(float(x))
        xs = np.asarray(x, dtype=float)
        return np.array([self._cdf_scalar(float(v)) for v in xs.ravel()]).reshape(xs.shape)

    def cdf_grid(self, points) -> np.ndarray:
        """CDF along a sorted grid via one cumulative quadrature pass.

        This is the direct-integration route (no survival identity), used
        for figure columns and as the independent check of ``cdf``.
        """
        pts = np.asarray(points, dtype=float)
        vals = cumulative_integral(self.pdf, pts, self.support, self.spec)
        return np.clip(vals, 0.0, 1.0)

    # -- quantile -----------------------------------------------------------

    def quantile(self, p: float) -> float:
        if not 0.0 < p < 1.0:
            raise DomainError(f"quantile requires p in (0, 1), got {p}")
        lo = float(self.base.ppf(0.5 * p))
        hi = float(self.base.ppf(0.5 * (1.0 + p)))
        lo = max(lo, self.support.lo)
        hi = min(hi, self.support.hi)
        f_lo = self._cdf_scalar(lo) - p
        f_hi = self._cdf_scalar(hi) - p
        if f_lo > 0 or f_hi < 0:  # envelope says this cannot happen
            raise NotADensity("cdf violates its admissible envelope; G is invalid")
        if f_lo == 0.0:
            return lo
        if f_hi == 0.0:
            return hi
        root = brentq(lambda t: self._cdf_scalar(t) - p, lo, hi, xtol=1e-12, rtol=8.9e-16)
        if abs(self._cdf_scalar(root) - p) > 1e-8:
            raise NotADensity(f"quantile refinement stalled at x = {root}")
        return float(root)

    # -- sampling -----------------------------------------------------------

    def sample(self, n: int, seed: int) -> np.ndarray:
        """n draws via the sign-flip sampler, deterministic per seed."""
        if n < 1:
            raise BadParam("sample size must be >= 1")
        rng = np.random.default_rng(seed)
        u = np.clip(rng.random(n), 1e-300, 1.0 - 1e-16)
        x0 = np.asarray(self.base.ppf(u), dtype=float)
        flip = rng.random(n) > np.asarray(self.G(x0), dtype=float)
        return np.where(flip, -x0, x0)

    # -- moments ------------------------------------------------------------

    def moment(self, k: int) -> float:
        if not (isinstance(k, (int, np.integer)) and k >= 1):
            raise BadParam(f"moment order must be a positive integer, got {k}")
        if k >= self.base.moment_sup:
            raise MomentUndefined(
                f"E X^{k} does not exist for base {self.base.name!r} "
                f"(finite moments require k < {self.base.moment_sup})"
            )
        return integrate(lambda x: np.power(x, k) * self.pdf(x), self.support, self.spec)

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        m1 = self.moment(1)
        return self.moment(2) - m1 * m1
