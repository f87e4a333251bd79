"""Pointwise ordering of perturbations and its distributional consequences.

G2 dominates G1 (written G2 >=gr G1) when G2(x) >= G1(x) for all x > 0 with
strict inequality somewhere.  On a shared symmetric base this forces the
G2-skewed variable to be stochastically larger: its cdf sits below, its
quantiles sit to the right, and expectations of nondecreasing functionals
order accordingly.  The comparisons here are grid-based: domination is
declared from a sign pattern with a 1e-9 strictness gap, and the
consequence checks report the worst violation found.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import SymmetricBase
from .errors import BadParam, MomentUndefined, NonConvergence, PremiseNotMet
from .numerics import Interval, QuadSpec, integrate
from .perturb import PerturbationFn
from .skew1d import SkewDensity1D

__all__ = [
    "OrderVerdict",
    "compare_gr",
    "StochasticOrderReport",
    "verify_stochastic_order",
    "quantile_order",
    "functional_order",
]

_GAP = 1e-9  # "strict somewhere" threshold


@dataclass(frozen=True)
class OrderVerdict:
    relation: str  # G2_gr_G1 | G1_gr_G2 | equal | incomparable
    max_gap: float
    witness_x: float
    crossing_x: float | None = None

    @property
    def comparable(self) -> bool:
        return self.relation != "incomparable"


def compare_gr(
    G1: PerturbationFn,
    G2: PerturbationFn,
    interval: Interval = Interval(-20.0, 20.0),
    n: int = 401,
) -> OrderVerdict:
    """Classify the >=gr relation between two perturbations on a grid.

    Gaps within +-1e-9 count as ties; a gap beyond it in both directions
    means the perturbations cross and are incomparable.
    """
    if n < 3:
        raise BadParam("comparison grid needs n >= 3")
    hi = min(interval.hi, -interval.lo)
    xs = np.linspace(0.0, hi, n)[1:]  # positive half; x = 0 carries no order
    diff = np.asarray(G2(xs), dtype=float) - np.asarray(G1(xs), dtype=float)
    i_max = int(np.argmax(diff))
    i_min = int(np.argmin(diff))
    pos = diff[i_max] > _GAP
    neg = diff[i_min] < -_GAP
    if pos and neg:
        return OrderVerdict(
            "incomparable",
            max_gap=float(diff[i_max]),
            witness_x=float(xs[i_max]),
            crossing_x=float(xs[i_min]),
        )
    if pos:
        return OrderVerdict("G2_gr_G1", float(diff[i_max]), float(xs[i_max]))
    if neg:
        return OrderVerdict("G1_gr_G2", float(-diff[i_min]), float(xs[i_min]))
    worst = i_max if abs(diff[i_max]) >= abs(diff[i_min]) else i_min
    return OrderVerdict("equal", float(abs(diff[worst])), float(xs[worst]))


@dataclass(frozen=True)
class StochasticOrderReport:
    ok: bool
    max_violation: float
    strict_gap: float
    witness_x: float


def _require_domination(G1, G2, interval: Interval) -> None:
    verdict = compare_gr(G1, G2, interval)
    if verdict.relation != "G2_gr_G1":
        raise PremiseNotMet(
            f"G2 >=gr G1 does not hold (grid verdict: {verdict.relation})"
        )


def verify_stochastic_order(
    base: SymmetricBase,
    G1: PerturbationFn,
    G2: PerturbationFn,
    n: int = 201,
    tol: float = 1e-9,
    spec: QuadSpec | None = None,
) -> StochasticOrderReport:
    """Check F1(x) >= F2(x) on a grid, given G2 >=gr G1 on the shared base.

    The cdfs are computed by direct cumulative quadrature, so this is an
    independent consequence check rather than a restatement of the premise.
    """
    grid_iv = base.central_interval(0.9999)
    _require_domination(G1, G2, grid_iv)
    xs = np.linspace(grid_iv.lo, grid_iv.hi, n)
    d1 = SkewDensity1D(base, G1, spec)
    d2 = SkewDensity1D(base, G2, spec)
    f1 = d1.cdf_grid(xs)
    f2 = d2.cdf_grid(xs)
    gap = f1 - f2
    worst = int(np.argmin(gap))
    return StochasticOrderReport(
        ok=bool(gap[worst] >= -tol),
        max_violation=float(max(0.0, -gap[worst])),
        strict_gap=float(np.max(gap)),
        witness_x=float(xs[worst]),
    )


def quantile_order(
    base: SymmetricBase,
    G1: PerturbationFn,
    G2: PerturbationFn,
    ps,
    tol: float = 1e-8,
    spec: QuadSpec | None = None,
) -> dict:
    """Check Q1(p) <= Q2(p) for each requested p, given G2 >=gr G1."""
    ps = np.asarray(ps, dtype=float)
    if np.any(ps <= 0.0) or np.any(ps >= 1.0):
        raise BadParam("quantile levels must lie in (0, 1)")
    _require_domination(G1, G2, base.central_interval(0.9999))
    d1 = SkewDensity1D(base, G1, spec)
    d2 = SkewDensity1D(base, G2, spec)
    q1 = np.array([d1.quantile(float(p)) for p in ps])
    q2 = np.array([d2.quantile(float(p)) for p in ps])
    return {
        "ok": bool(np.all(q1 <= q2 + tol)),
        "p": ps,
        "q1": q1,
        "q2": q2,
        "max_violation": float(max(0.0, np.max(q1 - q2))),
    }


def functional_order(
    base: SymmetricBase,
    G1: PerturbationFn,
    G2: PerturbationFn,
    t,
    poly_degree: int | None = None,
    spec: QuadSpec | None = None,
) -> dict:
    """Check E t(X1) <= E t(X2) for a nondecreasing t, given G2 >=gr G1.

    ``poly_degree`` short-circuits the tail check for polynomial t whose
    degree reaches the base's finite-moment supremum.
    """
    iv = base.central_interval(0.9999)
    _require_domination(G1, G2, iv)
    probe = np.linspace(iv.lo, iv.hi, 201)
    tv = np.asarray(t(probe), dtype=float)
    if np.any(np.diff(tv) < -1e-8 * max(1.0, float(np.max(np.abs(tv))))):
        raise PremiseNotMet("t is not nondecreasing on the probe grid")
    if poly_degree is not None and poly_degree >= base.moment_sup:
        raise MomentUndefined(
            f"E t(X) with degree-{poly_degree} t does not exist for base {base.name!r}"
        )
    d1 = SkewDensity1D(base, G1, spec)
    d2 = SkewDensity1D(base, G2, spec)
    try:
        e1 = integrate(lambda x: np.asarray(t(x), float) * d1.pdf(x), base.support, spec)
        e2 = integrate(lambda x: np.asarray(t(x), float) * d2.pdf(x), base.support, spec)
    except NonConvergence as exc:
        raise MomentUndefined(f"E t(X) quadrature did not converge: {exc}") from exc
    return {"ok": bool(e1 <= e2 + 1e-8), "e1": float(e1), "e2": float(e2)}
