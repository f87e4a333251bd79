"""Sampled s-concavity checks, super-level-set convexity, composition rules.

A nonnegative f is s-concave on a convex domain when for all x, y and
theta in (0, 1)

    f(theta x + (1-theta) y) >= ( theta f(x)^s + (1-theta) f(y)^s )^(1/s),

with the right side read as the geometric mean at s = 0 and as
min(f(x), f(y)) at s = -inf.  Larger s is stronger: s-concave implies
r-concave for every r < s; s = 0 is log-concavity and s = -inf is
quasi-concavity.  When either endpoint density vanishes the comparison is
trivially satisfied and the pair is skipped.

Checks are randomized but seeded: pairs are drawn uniformly from a box,
each tested at a fixed ladder of theta values with slack 1e-9 (violations
must beat the slack; this keeps quadrature-backed densities from flagging
noise).  ``check_superlevel_convex`` cross-checks quasi-concavity through
the set route, and ``compose_rule`` predicts the shape of H(h(x)) from the
classical monotone-composition table, with strictness propagated.

Marginalization: integrating an s-concave density on R^(d+m) over m
coordinates yields an s_m-concave marginal with s_m = s / (1 + m s),
degenerating to quasi-concavity at s = -1/m and undefined below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadParam, EmptyLevelSet, HypothesisViolated, RuleNotCovered
from .numerics import Interval

__all__ = [
    "ConcavityReport",
    "check_sconcave",
    "check_shape",
    "SuperlevelReport",
    "check_superlevel_convex",
    "PredictedShape",
    "compose_rule",
    "MarginalReport",
    "marginal_s",
    "check_marginal_sconcavity",
]

_DEFAULT_THETAS = tuple(np.round(np.linspace(0.1, 0.9, 9), 10))
_SLACK = 1e-9
_STRICT_MARGIN = 1e-6


def _as_box(domain) -> tuple[Interval, ...]:
    if isinstance(domain, Interval):
        return (domain,)
    box = tuple(domain)
    if not box or not all(isinstance(b, Interval) for b in box):
        raise BadParam("domain must be an Interval or a sequence of Intervals")
    if not all(b.finite for b in box):
        raise BadParam("concavity checks need a finite domain box")
    return box


def _sample_box(rng: np.random.Generator, box: tuple[Interval, ...], n: int) -> np.ndarray:
    lo = np.array([b.lo for b in box])
    hi = np.array([b.hi for b in box])
    pts = rng.uniform(lo, hi, size=(n, len(box)))
    return pts[:, 0] if len(box) == 1 else pts


def _eval(f: Callable, pts: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(pts), dtype=float)
    n = pts.shape[0] if pts.ndim > 1 else pts.shape[0]
    if vals.shape != (n,):
        raise BadParam(
            f"function must map an (n, d) batch to (n,) values, got shape {vals.shape}"
        )
    return vals


def _power_mean(fx: np.ndarray, fy: np.ndarray, theta: float, s: float) -> np.ndarray:
    """Generalized theta-weighted s-mean on strictly positive inputs."""
    if math.isinf(s) and s < 0:
        return np.minimum(fx, fy)
    if s == 0.0:
        return np.exp(theta * np.log(fx) + (1.0 - theta) * np.log(fy))
    with np.errstate(over="ignore"):
        inner = theta * np.power(fx, s) + (1.0 - theta) * np.power(fy, s)
        return np.power(inner, 1.0 / s)


@dataclass(frozen=True)
class ConcavityReport:
    s: float
    verdict: bool
    n_pairs: int
    n_comparisons: int
    n_violations: int
    min_margin: float
    strict_observed: bool
    witness: dict | None
    seed: int


def check_sconcave(
    f: Callable,
    s: float,
    domain,
    n_pairs: int = 1000,
    seed: int = 0,
    thetas: Sequence[float] = _DEFAULT_THETAS,
    slack: float = _SLACK,
) -> ConcavityReport:
    """Randomized pair test of s-concavity on a box domain."""
    if n_pairs < 1:
        raise BadParam("n_pairs must be >= 1")
    box = _as_box(domain)
    rng = np.random.default_rng(seed)
    x = _sample_box(rng, box, n_pairs)
    y = _sample_box(rng, box, n_pairs)
    fx = _eval(f, x)
    fy = _eval(f, y)
    if np.any(fx < 0) or np.any(fy < 0):
        raise BadParam("s-concavity applies to nonnegative functions")
    live = (fx > 0) & (fy > 0)  # zero endpoints satisfy the inequality trivially

    n_violations = 0
    n_comparisons = 0
    min_margin = math.inf
    witness: dict | None = None
    strict = True
    for theta in thetas:
        mid = theta * x + (1.0 - theta) * y
        fm = _eval(f, mid)
        target = np.full_like(fm, -math.inf)
        target[live] = _power_mean(fx[live], fy[live], float(theta), float(s))
        margin = fm - target
        comp = live & np.isfinite(target)
        n_comparisons += int(np.count_nonzero(comp))
        bad = comp & (margin < -slack)
        n_violations += int(np.count_nonzero(bad))
        if np.any(comp):
            m = float(np.min(margin[comp]))
            min_margin = min(min_margin, m)
            strict = strict and m > _STRICT_MARGIN
        if witness is None and np.any(bad):
            i = int(np.nonzero(bad)[0][0])
            witness = {
                "x": np.atleast_1d(x)[i].tolist() if np.ndim(x) > 1 else float(x[i]),
                "y": np.atleast_1d(y)[i].tolist() if np.ndim(y) > 1 else float(y[i]),
                "theta": float(theta),
                "f_x": float(fx[i]),
                "f_y": float(fy[i]),
                "f_mid": float(fm[i]),
                "required": float(target[i]),
            }
    return ConcavityReport(
        s=float(s),
        verdict=n_violations == 0,
        n_pairs=n_pairs,
        n_comparisons=n_comparisons,
        n_violations=n_violations,
        min_margin=float(min_margin) if math.isfinite(min_margin) else 0.0,
        strict_observed=bool(strict and n_comparisons > 0),
        witness=witness,
        seed=seed,
    )


def check_shape(
    fn: Callable,
    kind: str,
    domain,
    n_pairs: int = 1000,
    seed: int = 0,
    slack: float = _SLACK,
) -> ConcavityReport:
    """Pair test of plain convexity/concavity/log-concavity of any function.

    Used to validate compose_rule predictions numerically; ``fn`` need not
    be a density (convex test negates the concavity margin).
    """
    if kind == "log_concave":
        return check_sconcave(fn, 0.0, domain, n_pairs, seed, slack=slack)
    if kind not in ("convex", "concave"):
        raise BadParam(f"kind must be convex|concave|log_concave, got {kind!r}")
    box = _as_box(domain)
    rng = np.random.default_rng(seed)
    x = _sample_box(rng, box, n_pairs)
    y = _sample_box(rng, box, n_pairs)
    fx = _eval(fn, x)
    fy = _eval(fn, y)
    sign = 1.0 if kind == "concave" else -1.0
    n_violations = 0
    n_comparisons = 0
    min_margin = math.inf
    witness = None
    strict = True
    for theta in _DEFAULT_THETAS:
        mid = theta * x + (1.0 - theta) * y
        fm = _eval(fn, mid)
        margin = sign * (fm - (theta * fx + (1.0 - theta) * fy))
        n_comparisons += margin.size
        bad = margin < -slack
        n_violations += int(np.count_nonzero(bad))
        m = float(np.min(margin))
        min_margin = min(min_margin, m)
        strict = strict and m > _STRICT_MARGIN
        if witness is None and np.any(bad):
            i = int(np.nonzero(bad)[0][0])
            witness = {
                "x": float(np.atleast_1d(x)[i]) if np.ndim(x) == 1 else x[i].tolist(),
                "theta": float(theta),
                "margin": float(margin[i]),
            }
    return ConcavityReport(
        s=math.nan,
        verdict=n_violations == 0,
        n_pairs=n_pairs,
        n_comparisons=n_comparisons,
        n_violations=n_violations,
        min_margin=float(min_margin),
        strict_observed=strict,
        witness=witness,
        seed=seed,
    )


@dataclass(frozen=True)
class SuperlevelReport:
    level: float
    convex: bool
    n_members: int
    n_pairs_checked: int
    witness: dict | None


def check_superlevel_convex(
    f: Callable,
    level: float,
    domain,
    grid_n: int = 201,
    max_pairs: int = 10_000,
    seed: int = 0,
) -> SuperlevelReport:
    """Convexity of the super-level set {x : f(x) >= level} on a grid.

    Membership of a midpoint is accepted when f(mid) >= level or when a
    grid node within one cell of the midpoint belongs to the set (the
    grid-resolution tolerance).
    """
    box = _as_box(domain)
    d = len(box)
    if d > 2:
        raise BadParam("super-level check supports d <= 2")
    axes = [np.linspace(b.lo, b.hi, grid_n) for b in box]
    if d == 1:
        pts = axes[0]
        vals = _eval(f, pts)
        member = vals >= level
        cell = (box[0].hi - box[0].lo) / (grid_n - 1)
    else:
        gx, gy = np.meshgrid(axes[0], axes[1], indexing="ij")
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        vals = _eval(f, pts)
        member = vals >= level
        cell = max((b.hi - b.lo) / (grid_n - 1) for b in box)

    members = pts[member] if d > 1 else pts[member]
    k = members.shape[0]
    if k == 0:
        raise EmptyLevelSet(f"no grid point reaches level {level}")
    if k == 1:
        return SuperlevelReport(level, True, 1, 0, None)

    rng = np.random.default_rng(seed)
    n_pairs = min(max_pairs, k * (k - 1) // 2)
    ia = rng.integers(0, k, n_pairs)
    ib = rng.integers(0, k, n_pairs)
    pa = members[ia]
    pb = members[ib]
    mids = 0.5 * (pa + pb)
    fmid = _eval(f, mids)
    ok = fmid >= level
    if not np.all(ok):
        # grid-cell tolerance: accept if a member node sits within one cell
        bad_idx = np.nonzero(~ok)[0]
        member_pts = members if d > 1 else members.reshape(-1, 1)
        mids_bad = mids[bad_idx] if d > 1 else mids[bad_idx].reshape(-1, 1)
        for row, i in enumerate(bad_idx):
            dist = np.max(np.abs(member_pts - mids_bad[row]), axis=1)
            if np.min(dist) <= cell * (1 + 1e-12):
                ok[i] = True
    if np.all(ok):
        return SuperlevelReport(level, True, k, n_pairs, None)
    i = int(np.nonzero(~ok)[0][0])
    witness = {
        "x": pa[i].tolist() if d > 1 else float(pa[i]),
        "y": pb[i].tolist() if d > 1 else float(pb[i]),
        "mid": mids[i].tolist() if d > 1 else float(mids[i]),
        "f_mid": float(fmid[i]),
        "level": float(level),
    }
    return SuperlevelReport(level, False, k, n_pairs, witness)


# ---------------------------------------------------------------------------
# composition rules


@dataclass(frozen=True)
class PredictedShape:
    shape: str
    strict: bool


_RULES = {
    # (inner shape, outer monotonicity, outer shape) -> composite shape
    ("convex", "nondecreasing", "convex"): "convex",
    ("convex", "nonincreasing", "concave"): "concave",
    ("convex", "nonincreasing", "log_concave"): "log_concave",
    ("concave", "nondecreasing", "concave"): "concave",
    ("concave", "nondecreasing", "log_concave"): "log_concave",
    ("concave", "nonincreasing", "convex"): "convex",
}


def compose_rule(
    inner_shape: str,
    outer_monotone: str,
    outer_shape: str,
    inner_strict: bool = False,
    outer_strict: bool = False,
    outer_strictly_monotone: bool = False,
) -> PredictedShape:
    """Shape of H(h(x)) from the monotone-composition table.

    Strictness of the composite holds when the outer shape is strict, or
    when the inner shape is strict and the outer map strictly monotone.
    """
    key = (inner_shape, outer_monotone, outer_shape)
    if key not in _RULES:
        raise RuleNotCovered(f"no composition rule for {key}")
    strict = outer_strict or (inner_strict and outer_strictly_monotone)
    return PredictedShape(shape=_RULES[key], strict=strict)


# ---------------------------------------------------------------------------
# marginalization


def marginal_s(s: float, m: int) -> float:
    """s-index of an m-fold marginal of an s-concave density."""
    if m < 1:
        raise BadParam("m must be >= 1")
    if s < -1.0 / m:
        raise HypothesisViolated(
            f"marginalization is undefined for s = {s} < -1/{m}"
        )
    if s == -1.0 / m:
        return -math.inf
    return s / (1.0 + m * s)


@dataclass(frozen=True)
class MarginalReport:
    s: float
    m: int
    s_marginal: float
    report: ConcavityReport


# nodes/weights for the fixed composite rule used to marginalize
def _composite_panel(iv: Interval, panels: int) -> tuple[np.ndarray, np.ndarray]:
    from .numerics import _GK_NODES, _GK_WEIGHTS  # shared 15-point rule

    edges = np.linspace(iv.lo, iv.hi, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    nodes = (mids[:, None] + halves[:, None] * _GK_NODES[None, :]).ravel()
    weights = (halves[:, None] * _GK_WEIGHTS[None, :]).ravel()
    return nodes, weights


def check_marginal_sconcavity(
    f: Callable,
    s: float,
    domain_full,
    m: int = 1,
    n_pairs: int = 1000,
    seed: int = 0,
    quad_panels: int = 24,
) -> MarginalReport:
    """Marginalize f over its last m coordinates and test s_m-concavity.

    The marginal is evaluated by a fixed composite Kronrod rule over the
    dropped coordinates' box, batched across query points.
    """
    box = _as_box(domain_full)
    if m >= len(box):
        raise BadParam("m must leave at least one kept coordinate")
    keep, drop = box[: len(box) - m], box[len(box) - m :]
    s_m = marginal_s(s, m)

    grids = [_composite_panel(iv, quad_panels) for iv in drop]
    if m == 1:
        d_nodes = grids[0][0].reshape(-1, 1)
        d_weights = grids[0][1]
    else:
        mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
        d_nodes = np.column_stack([m_.ravel() for m_ in mesh])
        w_mesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
        d_weights = np.prod(np.column_stack([w_.ravel() for w_ in w_mesh]), axis=1)
    n_nodes = d_nodes.shape[0]

    def marginal(x):
        x = np.asarray(x, dtype=float)
        pts_keep = x.reshape(-1, len(keep))
        n = pts_keep.shape[0]
        out = np.empty(n)
        chunk = max(1, 2_000_000 // max(n_nodes, 1))
        for start in range(0, n, chunk):
            stop = min(start + chunk, n)
            block = pts_keep[start:stop]
            rep = np.repeat(block, n_nodes, axis=0)
            tiled = np.tile(d_nodes, (stop - start, 1))
            full = np.column_stack([rep, tiled])
            vals = np.asarray(f(full), dtype=float).reshape(stop - start, n_nodes)
            out[start:stop] = vals @ d_weights
        return out

    inner_domain = keep[0] if len(keep) == 1 else keep
    report = check_sconcave(marginal, s_m, inner_domain, n_pairs=n_pairs, seed=seed)
    return MarginalReport(s=float(s), m=m, s_marginal=s_m, report=report)
