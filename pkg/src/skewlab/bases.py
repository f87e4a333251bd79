"""Catalog of symmetric base densities on the real line.

Each base packages the pieces the rest of the library needs: pdf, cdf,
inverse cdf, the decreasing-hazard ratio h0 = -f0'/f0 and its derivative,
support, and bookkeeping for non-differentiable points.  All callables are
numpy-polymorphic (scalars in, scalars out; arrays in, arrays out).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special as _sp
from scipy import stats as _st

from .errors import BadParam
from .numerics import Interval, QuadSpec, REAL_LINE, integrate

__all__ = ["SymmetricBase", "make_base", "base_cdf", "BASE_NAMES"]


@dataclass(frozen=True)
class SymmetricBase:
    """A symmetric (about 0) probability density with closed-form helpers.

    ``h0`` is -f0'/f0, the quantity the mode analysis balances against g/G.
    ``moment_sup`` is the supremum of k with E|X|^k finite (inf when all
    moments exist).  ``nondiff_points`` flags where pdf or h0 derivatives
    fail to exist; downstream finite differences avoid these points.
    """

    name: str
    params: dict = field(default_factory=dict)
    pdf: Callable = None
    cdf: Callable = None
    ppf: Callable = None
    h0: Callable = None
    h0_prime: Callable = None
    support: Interval = REAL_LINE
    norm_const: float = float("nan")
    moment_sup: float = float("inf")
    nondiff_points: tuple = ()

    def central_interval(self, mass: float = 0.9999) -> Interval:
        """Interval carrying the given central probability mass."""
        if not 0 < mass < 1:
            raise BadParam("mass must lie in (0, 1)")
        tail = 0.5 * (1.0 - mass)
        lo = float(self.ppf(tail))
        hi = float(self.ppf(1.0 - tail))
        lo = max(lo, self.support.lo)
        hi = min(hi, self.support.hi)
        return Interval(lo, hi)

    def __repr__(self) -> str:  # params in stable order for reports
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"SymmetricBase({self.name}{'(' + args + ')' if args else ''})"


def _normal() -> SymmetricBase:
    inv_root2pi = 1.0 / math.sqrt(2.0 * math.pi)
    return SymmetricBase(
        name="normal",
        pdf=lambda x: np.exp(-0.5 * np.square(np.asarray(x, float))) * inv_root2pi,
        cdf=lambda x: _sp.ndtr(np.asarray(x, float)),
        ppf=lambda p: _sp.ndtri(np.asarray(p, float)),
        h0=lambda x: np.asarray(x, float) + 0.0,
        h0_prime=lambda x: np.ones_like(np.asarray(x, float)),
        norm_const=inv_root2pi,
    )


def _logistic() -> SymmetricBase:
    def pdf(x):
        a = np.abs(np.asarray(x, float))
        e = np.exp(-a)
        return e / np.square(1.0 + e)

    return SymmetricBase(
        name="logistic",
        pdf=pdf,
        cdf=lambda x: _sp.expit(np.asarray(x, float)),
        ppf=lambda p: _sp.logit(np.asarray(p, float)),
        h0=lambda x: np.tanh(0.5 * np.asarray(x, float)),
        h0_prime=lambda x: 0.5 / np.square(np.cosh(0.5 * np.asarray(x, float))),
        norm_const=0.25,  # pdf(0)
    )


def _cauchy() -> SymmetricBase:
    return SymmetricBase(
        name="cauchy",
        pdf=lambda x: 1.0 / (math.pi * (1.0 + np.square(np.asarray(x, float)))),
        cdf=lambda x: 0.5 + np.arctan(np.asarray(x, float)) / math.pi,
        ppf=lambda p: np.tan(math.pi * (np.asarray(p, float) - 0.5)),
        h0=lambda x: 2.0 * np.asarray(x, float) / (1.0 + np.square(np.asarray(x, float))),
        h0_prime=lambda x: 2.0
        * (1.0 - np.square(np.asarray(x, float)))
        / np.square(1.0 + np.square(np.asarray(x, float))),
        norm_const=1.0 / math.pi,
        moment_sup=1.0,
    )


def _student_t(nu: float) -> SymmetricBase:
    if nu <= 0:
        raise BadParam(f"student_t requires nu > 0, got {nu}")
    dist = _st.t(df=nu)
    c = math.exp(_sp.gammaln((nu + 1) / 2) - _sp.gammaln(nu / 2)) / math.sqrt(nu * math.pi)

    def pdf(x):
        x = np.asarray(x, float)
        return c * np.power(1.0 + x * x / nu, -(nu + 1) / 2)

    def h0(x):
        x = np.asarray(x, float)
        return (nu + 1.0) * x / (nu + x * x)

    def h0_prime(x):
        x = np.asarray(x, float)
        return (nu + 1.0) * (nu - x * x) / np.square(nu + x * x)

    return SymmetricBase(
        name="student_t",
        params={"nu": nu},
        pdf=pdf,
        cdf=lambda x: dist.cdf(np.asarray(x, float)),
        ppf=lambda p: dist.ppf(np.asarray(p, float)),
        h0=h0,
        h0_prime=h0_prime,
        norm_const=c,
        moment_sup=nu,
    )


def _subbotin(nu: float, name: str = "subbotin") -> SymmetricBase:
    if nu <= 0:
        raise BadParam(f"subbotin requires nu > 0, got {nu}")
    # c_nu = nu^(1 - 1/nu) / (2 Gamma(1/nu)), from the Gamma integral
    c = math.pow(nu, 1.0 - 1.0 / nu) / (2.0 * _sp.gamma(1.0 / nu))
    inv_nu = 1.0 / nu

    def pdf(x):
        x = np.asarray(x, float)
        return c * np.exp(-np.power(np.abs(x), nu) / nu)

    def cdf(x):
        x = np.asarray(x, float)
        reg = _sp.gammainc(inv_nu, np.power(np.abs(x), nu) / nu)
        return 0.5 * (1.0 + np.sign(x) * reg)

    def ppf(p):
        p = np.asarray(p, float)
        reg = np.abs(2.0 * p - 1.0)
        mag = np.power(nu * _sp.gammaincinv(inv_nu, reg), inv_nu)
        return np.sign(p - 0.5) * mag

    def h0(x):
        x = np.asarray(x, float)
        return np.sign(x) * np.power(np.abs(x), nu - 1.0)

    def h0_prime(x):
        # derivative of sgn(x)|x|^(nu-1); no sign factor
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return (nu - 1.0) * np.power(np.abs(x), nu - 2.0)

    return SymmetricBase(
        name=name,
        params={"nu": nu},
        pdf=pdf,
        cdf=cdf,
        ppf=ppf,
        h0=h0,
        h0_prime=h0_prime,
        norm_const=c,
        nondiff_points=(0.0,) if nu < 2 else (),
    )


def _uniform(half_width: float) -> SymmetricBase:
    if half_width <= 0:
        raise BadParam(f"uniform requires half_width > 0, got {half_width}")
    h = float(half_width)

    def pdf(x):
        x = np.asarray(x, float)
        return np.where(np.abs(x) <= h, 0.5 / h, 0.0)

    def cdf(x):
        x = np.asarray(x, float)
        return np.clip((x + h) / (2.0 * h), 0.0, 1.0)

    return SymmetricBase(
        name="uniform",
        params={"half_width": h},
        pdf=pdf,
        cdf=cdf,
        ppf=lambda p: (2.0 * np.asarray(p, float) - 1.0) * h,
        h0=lambda x: np.zeros_like(np.asarray(x, float)),
        h0_prime=lambda x: np.zeros_like(np.asarray(x, float)),
        support=Interval(-h, h),
        norm_const=0.5 / h,
        nondiff_points=(-h, h),
    )


_FACTORIES = {
    "normal": lambda: _normal(),
    "logistic": lambda: _logistic(),
    "cauchy": lambda: _cauchy(),
    "student_t": lambda *, nu: _student_t(float(nu)),
    "subbotin": lambda *, nu: _subbotin(float(nu)),
    "laplace": lambda: _subbotin(1.0, name="laplace"),
    "uniform": lambda *, half_width=0.5: _uniform(float(half_width)),
}

BASE_NAMES = tuple(sorted(_FACTORIES))


def make_base(name: str, **params) -> SymmetricBase:
    """Construct a catalog base by name.

    ``laplace`` is an alias for ``subbotin`` with nu = 1; ``uniform``
    defaults to half_width = 1/2 (the minimal-representation G0).
    """
    try:
        factory = _FACTORIES[name]
    except KeyError as exc:
        raise BadParam(f"unknown base {name!r}; choices: {list(BASE_NAMES)}") from exc
    try:
        return factory(**params)
    except TypeError as exc:
        raise BadParam(f"bad parameters for base {name!r}: {params}") from exc


def base_cdf(base: SymmetricBase, x, spec: QuadSpec | None = None):
    """CDF of a base; falls back to quadrature when no closed form is set."""
    if base.cdf is not None:
        return base.cdf(x)
    x_arr = np.atleast_1d(np.asarray(x, float))
    out = np.empty_like(x_arr)
    for i, xi in enumerate(x_arr):
        if xi <= base.support.lo:
            out[i] = 0.0
        elif xi >= base.support.hi:
            out[i] = 1.0
        else:
            out[i] = integrate(base.pdf, Interval(base.support.lo, float(xi)), spec)
    return out if np.ndim(x) else float(out[0])
