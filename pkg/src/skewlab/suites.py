"""Named property-check suites and the figure data builders.

Each suite bundles related checks into a JSON-ready report. Reports are
deterministic: the same suite name and seed always produce the same bytes
(no timestamps, no environment data). A suite passes when all its checks
pass. The counterexample suite inverts the usual sense for two of its
checks: there the expected behavior is a quasi-concavity violation, so
those checks pass exactly when the violation is reproduced with a witness.

The figure builders return (column names, data matrix) pairs; the CLI
writes them as CSV. The ordering suite reuses the same columns it emits,
so the dominance check runs on exactly the published points.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import stats as _st

from .bases import SymmetricBase, make_base
from .characterize import check_common_base
from .concavity import check_sconcave, check_superlevel_convex, marginal_s
from .errors import UnknownSuite
from .modes import analyze_modes, ma_genton_check
from .multivar import (
    ESNDensity,
    SEPDensity,
    TWO_DISC_K,
    gen_pearson2,
    gen_pearson7,
    skew_by_conditioning,
    subbotin_hessian_form,
    two_disc_counterexample,
)
from .numerics import Interval, QuadSpec, find_roots, integrate
from .ordering import compare_gr, quantile_order
from .perturb import _box_integral, compose, odd_cubic, odd_linear, odd_poly, skewt_weight
from .skew1d import SkewDensity1D

__all__ = [
    "SCHEMA_VERSION",
    "SUITE_ORDER",
    "run_suite",
    "report_json",
    "figure1_data",
    "figure2_data",
    "figure3_data",
    "normalization_catalog",
]

SCHEMA_VERSION = 1


def _py(v):
    if isinstance(v, np.ndarray):
        return _py(v.tolist())
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, dict):
        return {k: _py(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_py(x) for x in v]
    return v


def _check(name: str, passed, value=None, threshold=None, **detail) -> dict:
    out: dict = {"name": name, "passed": bool(passed)}
    if value is not None:
        out["value"] = float(value)
    if threshold is not None:
        out["threshold"] = float(threshold)
    if detail:
        out["detail"] = _py(detail)
    return out


def _skew(base: SymmetricBase, g0: SymmetricBase, w) -> SkewDensity1D:
    return SkewDensity1D(base, compose(g0, w), validate=False)


def _sn(alpha: float) -> SkewDensity1D:
    nb = make_base("normal")
    return _skew(nb, nb, odd_linear(alpha))


# ---------------------------------------------------------------------------
# figure data


def _fig1_models():
    cb = make_base("cauchy")
    G1 = compose(cb, odd_poly({1: -1.0, 3: 1.0}))
    G2 = compose(cb, odd_cubic(0.0, 1.0))
    return cb, G1, G2


def figure1_data(n_points: int = 401) -> tuple[list[str], np.ndarray]:
    """Cauchy base skewed by Cauchy-cdf of x^3 - x and of x^3 on [-5, 5]."""
    cb, G1, G2 = _fig1_models()
    xs = np.linspace(-5.0, 5.0, n_points)
    d1 = SkewDensity1D(cb, G1, validate=False)
    d2 = SkewDensity1D(cb, G2, validate=False)
    cols = np.column_stack(
        [xs, G1(xs), G2(xs), d1.cdf_grid(xs), d2.cdf_grid(xs)]
    )
    return ["x", "G1", "G2", "F1", "F2"], cols


def figure2_data(n_points: int = 401) -> tuple[list[str], np.ndarray]:
    """Normal base skewed by Phi of x^3 on [-3, 3]: mode-equation columns."""
    nb = make_base("normal")
    G = compose(nb, odd_cubic(0.0, 1.0))
    d = SkewDensity1D(nb, G, validate=False)
    xs = np.linspace(-3.0, 3.0, n_points)
    g = np.asarray(G.density(xs), dtype=float)
    hg = g / np.asarray(G(xs), dtype=float)
    cols = np.column_stack([xs, np.asarray(nb.h0(xs), float), g, hg, d.pdf(xs)])
    return ["x", "h0", "g", "h_g", "f"], cols


def figure3_data(n_points: int = 401) -> tuple[list[str], np.ndarray]:
    """Two-disc conditioned density on [-4, 4] (closed form)."""
    ex = two_disc_counterexample()
    ys = np.linspace(-4.0, 4.0, n_points)
    return ["y", "f_Z"], np.column_stack([ys, ex.pdf(ys)])


# ---------------------------------------------------------------------------
# catalogs


def normalization_catalog() -> list[tuple[str, SkewDensity1D]]:
    nb = make_base("normal")
    cb = make_base("cauchy")
    lb = make_base("logistic")
    t5 = make_base("student_t", nu=5.0)
    t6 = make_base("student_t", nu=6.0)
    s15 = make_base("subbotin", nu=1.5)
    lap = make_base("laplace")
    ub = make_base("uniform", half_width=1.0)
    return [
        ("skew_normal_a1", _skew(nb, nb, odd_linear(1.0))),
        ("skew_normal_am3", _skew(nb, nb, odd_linear(-3.0))),
        ("skew_normal_a5", _skew(nb, nb, odd_linear(5.0))),
        ("normal_w_cubic", _skew(nb, nb, odd_cubic(0.0, 1.0))),
        ("normal_w_cubic_2_1", _skew(nb, nb, odd_cubic(2.0, 1.0))),
        ("cauchy_w_x3_minus_x", _skew(cb, cb, odd_poly({1: -1.0, 3: 1.0}))),
        ("cauchy_w_x3", _skew(cb, cb, odd_cubic(0.0, 1.0))),
        ("logistic_linear2", _skew(lb, lb, odd_linear(2.0))),
        ("skew_t_nu5", _skew(t5, t6, skewt_weight(2.0, 5.0))),
        ("subbotin15_linear", _skew(s15, s15, odd_linear(1.0))),
        ("laplace_phi_neg", _skew(lap, nb, odd_linear(-1.0))),
        ("uniform_phi_3x", _skew(ub, nb, odd_linear(3.0))),
    ]


def _survival_catalog() -> list[tuple[str, SkewDensity1D]]:
    nb = make_base("normal")
    lb = make_base("logistic")
    t5 = make_base("student_t", nu=5.0)
    t6 = make_base("student_t", nu=6.0)
    lap = make_base("laplace")
    return [
        ("skew_normal_a1", _skew(nb, nb, odd_linear(1.0))),
        ("normal_w_cubic", _skew(nb, nb, odd_cubic(0.0, 1.0))),
        ("logistic_linear2", _skew(lb, lb, odd_linear(2.0))),
        ("skew_t_nu5", _skew(t5, t6, skewt_weight(2.0, 5.0))),
        ("laplace_phi_neg", _skew(lap, nb, odd_linear(-1.0))),
    ]


def _char_catalog() -> list[tuple[str, SkewDensity1D, SkewDensity1D, bool]]:
    """20 pairs: ten sharing a base density, ten with distinct bases.

    Bases with undefined or barely-finite fourth moments are kept out; the
    moment z-test needs a finite variance for the squared sample.
    """
    nb = make_base("normal")
    lb = make_base("logistic")
    t5 = make_base("student_t", nu=5.0)
    t6 = make_base("student_t", nu=6.0)
    t7 = make_base("student_t", nu=7.0)
    t8 = make_base("student_t", nu=8.0)
    s15 = make_base("subbotin", nu=1.5)
    s3 = make_base("subbotin", nu=3.0)
    lap = make_base("laplace")
    pairs = [
        ("normal_scale", _skew(nb, nb, odd_linear(1.0)), _skew(nb, nb, odd_linear(3.0)), True),
        ("normal_cubic_vs_logistic_g0", _skew(nb, nb, odd_cubic(0.0, 1.0)), _skew(nb, lb, odd_linear(1.0)), True),
        ("normal_poly_vs_linear", _skew(nb, nb, odd_poly({1: -1.0, 3: 1.0})), _skew(nb, nb, odd_linear(2.0)), True),
        ("logistic_own_vs_phi", _skew(lb, lb, odd_linear(1.0)), _skew(lb, nb, odd_linear(2.0)), True),
        ("logistic_cubic_vs_negative", _skew(lb, lb, odd_cubic(0.0, 1.0)), _skew(lb, lb, odd_linear(-2.0)), True),
        ("student7_skewt_vs_phi", _skew(t7, t8, skewt_weight(1.0, 7.0)), _skew(t7, nb, odd_linear(1.0)), True),
        ("subbotin15_own_vs_phi_neg", _skew(s15, s15, odd_linear(1.0)), _skew(s15, nb, odd_linear(-1.0)), True),
        ("subbotin3_own_vs_logistic", _skew(s3, s3, odd_linear(2.0)), _skew(s3, lb, odd_linear(1.0)), True),
        ("laplace_phi1_vs_phi5", _skew(lap, nb, odd_linear(1.0)), _skew(lap, nb, odd_linear(5.0)), True),
        ("normal_mirror", _skew(nb, nb, odd_linear(5.0)), _skew(nb, nb, odd_linear(-5.0)), True),
        ("normal_vs_logistic", _skew(nb, nb, odd_linear(1.0)), _skew(lb, lb, odd_linear(1.0)), False),
        ("normal_vs_student5", _skew(nb, nb, odd_linear(1.0)), _skew(t5, t6, skewt_weight(1.0, 5.0)), False),
        ("normal_vs_laplace", _skew(nb, nb, odd_linear(1.0)), _skew(lap, nb, odd_linear(1.0)), False),
        ("logistic_vs_student5", _skew(lb, lb, odd_linear(1.0)), _skew(t5, t6, skewt_weight(1.0, 5.0)), False),
        ("logistic_vs_laplace", _skew(lb, lb, odd_linear(2.0)), _skew(lap, nb, odd_linear(2.0)), False),
        ("student5_vs_subbotin15", _skew(t5, t6, skewt_weight(1.0, 5.0)), _skew(s15, s15, odd_linear(1.0)), False),
        ("subbotin15_vs_subbotin3", _skew(s15, s15, odd_linear(1.0)), _skew(s3, s3, odd_linear(1.0)), False),
        ("laplace_vs_subbotin3", _skew(lap, nb, odd_linear(1.0)), _skew(s3, s3, odd_linear(1.0)), False),
        ("normal_vs_subbotin3", _skew(nb, nb, odd_linear(2.0)), _skew(s3, s3, odd_linear(2.0)), False),
        ("logistic_vs_subbotin15", _skew(lb, lb, odd_linear(1.0)), _skew(s15, s15, odd_linear(1.0)), False),
    ]
    return pairs


# ---------------------------------------------------------------------------
# suites


def _suite_normalization(seed: int) -> list[dict]:
    checks = []
    for label, d in normalization_catalog():
        mass = integrate(d.pdf, d.support, d.spec)
        err = abs(mass - 1.0)
        checks.append(_check(f"normalizes:{label}", err <= 1e-7, err, 1e-7, integral=mass))
    return checks


def _suite_survival(seed: int) -> list[dict]:
    checks = []
    for label, d in _survival_catalog():
        hi = d.base.central_interval(0.9999).hi
        xs = np.linspace(-hi, hi, 101)
        F = d.cdf_grid(xs)
        F0 = np.asarray(d.base.cdf(xs), dtype=float)
        viol = float(np.max(np.abs((1.0 - F[::-1]) - (2.0 * F0 - F))))
        checks.append(_check(f"survival_identity:{label}", viol <= 1e-7, viol, 1e-7, half_width=hi))
    return checks


def _suite_invariance(seed: int) -> list[dict]:
    checks = []
    targets = {2: 1.0, 4: 3.0}
    n = 100_000
    for j, alpha in enumerate((-3.0, 1.0, 5.0)):
        d = _sn(alpha)
        for k, target in targets.items():
            mk = d.moment(k)
            err = abs(mk - target)
            checks.append(
                _check(f"even_moment_k{k}_alpha{alpha:g}", err <= 1e-5, err, 1e-5, moment=mk)
            )
        xs = np.abs(d.sample(n, seed + 17 * j))
        x0 = np.abs(np.random.default_rng(seed + 17 * j + 1).standard_normal(n))
        p = float(_st.ks_2samp(xs, x0).pvalue)
        checks.append(_check(f"ks_abs_alpha{alpha:g}", p >= 0.01, p, 0.01, n=n))
    return checks


def _suite_characterization(seed: int) -> list[dict]:
    checks = []
    for i, (label, f, h, same) in enumerate(_char_catalog()):
        rep = check_common_base(f, h, seed=seed + 101 * i)
        verdicts = {c.condition: bool(c.passed) for c in rep.conditions}
        ok = rep.unanimous and rep.same_base == same
        checks.append(
            _check(
                f"pair:{label}",
                ok,
                same_base=rep.same_base,
                expected_same_base=same,
                unanimous=rep.unanimous,
                conditions=verdicts,
            )
        )
    return checks


def _suite_ordering(seed: int) -> list[dict]:
    cb, G1, G2 = _fig1_models()
    verdict = compare_gr(G1, G2, cb.central_interval(0.9999))
    checks = [
        _check(
            "gr_premise",
            verdict.relation == "G2_gr_G1",
            verdict.max_gap,
            relation=verdict.relation,
            witness_x=verdict.witness_x,
        )
    ]
    _, cols = figure1_data()
    worst = float(np.min(cols[:, 3] - cols[:, 4]))
    checks.append(_check("cdf_dominance_grid", worst >= -1e-9, worst, -1e-9, n_points=cols.shape[0]))
    qo = quantile_order(cb, G1, G2, np.linspace(0.1, 0.9, 9))
    checks.append(
        _check("quantile_order", qo["ok"], qo["max_violation"], 1e-8, q1=qo["q1"], q2=qo["q2"])
    )
    return checks


def _suite_cdf_spot(seed: int) -> list[dict]:
    nb = make_base("normal")
    d = _sn(1.0)
    val = d.cdf(0.0)
    checks = [_check("cdf_at_zero", abs(val - 0.25) <= 1e-6, abs(val - 0.25), 1e-6, cdf=val)]

    def weighted(x):
        inner = integrate(nb.pdf, Interval(-math.inf, float(x)), d.spec)
        return 2.0 * float(nb.pdf(x)) * inner

    dq = integrate(weighted, Interval(-math.inf, 0.0), d.spec, vectorized=False)
    checks.append(
        _check("double_quadrature_oracle", abs(dq - 0.25) <= 1e-8, abs(dq - 0.25), 1e-8,
               estimate=dq)
    )
    n = 1_000_000
    rng = np.random.default_rng(seed + 11)
    z0 = rng.standard_normal(n)
    z1 = rng.standard_normal(n)
    pmc = float(np.mean((np.abs(z0) + z1) / math.sqrt(2.0) <= 0.0))
    checks.append(
        _check("monte_carlo_oracle", abs(pmc - 0.25) <= 1.5e-3, abs(pmc - 0.25), 1.5e-3,
               estimate=pmc, n=n)
    )
    return checks


def _suite_modes(seed: int) -> list[dict]:
    nb = make_base("normal")
    d = _skew(nb, nb, odd_cubic(0.0, 1.0))
    rep = analyze_modes(d)
    modes = sorted(cp.x for cp in rep.critical_points if cp.kind == "mode")
    antis = sorted(cp.x for cp in rep.critical_points if cp.kind == "antimode")
    checks = [
        _check(
            "cubic_w_two_modes",
            rep.n_modes == 2 and rep.n_antimodes == 1,
            float(rep.n_modes),
            modes=modes,
            antimodes=antis,
            verdict=rep.unimodal_verdict,
        )
    ]
    loc_ok = (
        len(modes) == 2
        and abs(modes[0]) <= 1e-6
        and abs(modes[1] - 0.93995) <= 1e-4
        and len(antis) == 1
        and abs(antis[0] - 0.44996) <= 1e-4
    )
    checks.append(_check("cubic_w_critical_locations", loc_ok, modes=modes, antimodes=antis,
                         expected_modes=[0.0, 0.93995], expected_antimode=0.44996))
    mg1 = ma_genton_check(2.0, 1.0)
    checks.append(
        _check(
            "cubic_guarantee_alpha2_beta1",
            mg1.classification == "guaranteed_unimodal" and mg1.n_modes_observed == 1,
            float(mg1.n_modes_observed),
            classification=mg1.classification,
        )
    )
    mg2 = ma_genton_check(0.0, 1.0)
    checks.append(
        _check(
            "cubic_alpha0_beta1_bimodal",
            mg2.classification == "at_most_two_modes" and mg2.n_modes_observed == 2,
            float(mg2.n_modes_observed),
            classification=mg2.classification,
        )
    )
    return checks


_SEG_EPS = 1e-6


def _closed_form_maxima(ex) -> list[float]:
    """Local maxima of the two-disc density on (0, 4), by segment."""
    s32 = math.sqrt(3.0) / 2.0
    s34 = 2.0 * math.sqrt(3.0)
    segments = [(0.0, s32), (s32, 1.0), (1.0, s34), (s34, 4.0)]
    h = 1e-6

    def deriv(x):
        x = np.asarray(x, dtype=float)
        return (ex.pdf(x + h) - ex.pdf(x - h)) / (2.0 * h)

    out = []
    for lo, hi in segments:
        iv = Interval(lo + 2.0 * _SEG_EPS, hi - 2.0 * _SEG_EPS)
        for r in find_roots(deriv, iv, grid_n=300):
            delta = 1e-3
            if ex.pdf(r) > ex.pdf(r - delta) and ex.pdf(r) > ex.pdf(r + delta):
                out.append(float(r))
    return sorted(out)


def _suite_counterexample(seed: int) -> list[dict]:
    ex = two_disc_counterexample()
    ys = np.linspace(-4.0, 4.0, 101)
    gap = float(np.max(np.abs(ex.pdf(ys) - ex.conditioned.pdf(ys))))
    checks = [_check("closed_vs_conditioning", gap <= 1e-6, gap, 1e-6, n_points=101)]

    ref_pts = (-2.5, -0.7, 0.3, 0.699, 2.0, 3.7)
    ref_gap = max(
        abs(float(ex.pdf(y)) - ex.conditioned.pdf_reference([y])) for y in ref_pts
    )
    checks.append(_check("closed_vs_adaptive_reference", ref_gap <= 1e-9, ref_gap, 1e-9,
                         points=list(ref_pts)))

    maxima = _closed_form_maxima(ex)
    loc_ok = (
        len(maxima) == 2
        and abs(maxima[0] - 0.699) <= 0.005
        and abs(maxima[1] - 2.0) <= 1e-6
    )
    checks.append(_check("two_local_maxima", loc_ok, maxima=maxima,
                         values=[float(ex.pdf(m)) for m in maxima]))

    k_err = abs(TWO_DISC_K - 0.0216)
    checks.append(_check("k_three_decimals", k_err <= 5e-5, k_err, 5e-5, k=TWO_DISC_K))

    # level strictly between the valley at y=1 and the smaller peak at y=2:
    # the super-level set splits into two intervals there
    level = 0.5 * (float(ex.pdf(1.0)) + float(ex.pdf(2.0)))
    sup = check_superlevel_convex(ex.pdf_1d, level, Interval(-4.0, 4.0),
                                  grid_n=801, seed=seed)
    checks.append(
        _check(
            "superlevel_set_splits",
            (not sup.convex) and sup.witness is not None,
            level,
            witness=sup.witness,
            n_members=sup.n_members,
        )
    )
    pairs = check_sconcave(ex.pdf_1d, -math.inf, Interval(-4.0, 4.0),
                           n_pairs=10_000, seed=seed + 1)
    checks.append(
        _check(
            "quasi_concavity_violated",
            not pairs.verdict,
            float(pairs.n_violations),
            witness=pairs.witness,
        )
    )
    return checks


def _suite_sconcavity_skewnormal(seed: int) -> list[dict]:
    d1 = ESNDensity(np.array([[1.0]]), [2.0], 0.0)
    r1 = check_sconcave(d1.pdf, 0.0, Interval(-6.0, 6.0), n_pairs=10_000, seed=seed)
    d2 = ESNDensity(np.array([[1.0, 0.5], [0.5, 1.0]]), [2.0, -1.0], 0.0)
    box = (Interval(-6.0, 6.0), Interval(-6.0, 6.0))
    r2 = check_sconcave(d2.pdf, 0.0, box, n_pairs=10_000, seed=seed + 1)
    return [
        _check("log_concave_d1", r1.verdict, float(r1.n_violations), 0.0,
               min_margin=r1.min_margin, n_pairs=r1.n_pairs),
        _check("log_concave_d2", r2.verdict, float(r2.n_violations), 0.0,
               min_margin=r2.min_margin, n_pairs=r2.n_pairs),
    ]


def _suite_sconcavity_pearson2(seed: int) -> list[dict]:
    gen = gen_pearson2(2.0)
    sk = skew_by_conditioning(gen, np.array([[1.0, 0.6], [0.6, 1.0]]))
    s1 = marginal_s(gen.s_index, 1)
    checks = [
        _check("s1_index", abs(s1 - 1.0 / 3.0) <= 1e-12, s1, nu=2.0, s_generator=gen.s_index)
    ]
    dom = Interval(-1.0, 1.0)
    rs = check_sconcave(sk.pdf, s1, dom, n_pairs=10_000, seed=seed)
    checks.append(_check("s_one_third_concave", rs.verdict, float(rs.n_violations), 0.0,
                         min_margin=rs.min_margin, n_pairs=rs.n_pairs))
    r0 = check_sconcave(sk.pdf, 0.0, dom, n_pairs=10_000, seed=seed + 1)
    checks.append(_check("log_concave_implied", r0.verdict, float(r0.n_violations), 0.0,
                         min_margin=r0.min_margin, n_pairs=r0.n_pairs))
    return checks


def _suite_sconcavity_student(seed: int) -> list[dict]:
    gen = gen_pearson7(3.0, 3.0)  # trivariate Student, 3 dof
    omega = np.array([[1.0, 0.5, 0.3], [0.5, 1.0, 0.2], [0.3, 0.2, 1.0]])
    sk = skew_by_conditioning(gen, omega)
    s1 = marginal_s(gen.s_index, 1)
    checks = [
        _check("s1_index", abs(s1 + 0.5) <= 1e-12, s1, d=2.0, nu=3.0,
               s_generator=gen.s_index)
    ]
    box = (Interval(-10.0, 10.0), Interval(-10.0, 10.0))
    r0 = check_sconcave(sk.pdf, 0.0, box, n_pairs=10_000, seed=seed)
    checks.append(
        _check("log_concavity_fails", (not r0.verdict) and r0.witness is not None,
               float(r0.n_violations), witness=r0.witness)
    )
    rh = check_sconcave(sk.pdf, s1, box, n_pairs=10_000, seed=seed + 1)
    checks.append(_check("s_minus_half_concave", rh.verdict, float(rh.n_violations), 0.0,
                         min_margin=rh.min_margin, n_pairs=rh.n_pairs))
    rq = check_sconcave(sk.pdf, -math.inf, box, n_pairs=10_000, seed=seed + 2)
    checks.append(_check("quasi_concave", rq.verdict, float(rq.n_violations), 0.0,
                         n_pairs=rq.n_pairs))
    return checks


def _suite_subbotin(seed: int) -> list[dict]:
    C = np.array([[1.0, 0.3], [0.3, 1.0]])
    box = (Interval(-6.0, 6.0), Interval(-6.0, 6.0))
    checks = []
    for i, nu in enumerate((1.0, 1.5)):
        sep = SEPDensity(C, nu, [1.0, -0.5])
        r = check_sconcave(sep.pdf, 0.0, box, n_pairs=5_000, seed=seed + i)
        checks.append(_check(f"sep_log_concave_nu{nu:g}", r.verdict, float(r.n_violations),
                             0.0, min_margin=r.min_margin, n_pairs=r.n_pairs))
    rng = np.random.default_rng(seed + 7)
    worst = math.inf
    for d in (2, 3):
        for _ in range(1000):
            a = rng.standard_normal((d, d))
            cm = a @ a.T + 0.5 * np.eye(d)
            x = rng.standard_normal(d)
            u = rng.standard_normal(d)
            worst = min(worst, subbotin_hessian_form(cm, x, u))
    checks.append(_check("hessian_form_nonnegative", worst >= -1e-12, worst, -1e-12,
                         n_triples=2000))
    return checks


def _suite_esn(seed: int) -> list[dict]:
    checks = []
    e1 = ESNDensity(np.array([[1.0]]), [2.0], 0.0)
    xs = np.linspace(-4.0, 4.0, 81)
    direct1 = 2.0 * _st.norm.pdf(xs) * _st.norm.cdf(2.0 * xs)
    gap1 = float(np.max(np.abs(e1.pdf(xs) - direct1)))
    checks.append(_check("tau0_reduces_d1", gap1 <= 1e-10, gap1, 1e-10))

    om2 = np.array([[1.0, 0.5], [0.5, 1.0]])
    alpha2 = np.array([2.0, 1.0])
    e2 = ESNDensity(om2, alpha2, 0.0)
    ax = np.linspace(-4.0, 4.0, 21)
    gx, gy = np.meshgrid(ax, ax, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    mvn = _st.multivariate_normal(mean=[0.0, 0.0], cov=om2)
    direct2 = 2.0 * mvn.pdf(pts) * _st.norm.cdf(pts @ alpha2)
    gap2 = float(np.max(np.abs(e2.pdf(pts) - direct2)))
    checks.append(_check("tau0_reduces_d2", gap2 <= 1e-10, gap2, 1e-10))

    et1 = ESNDensity(np.array([[1.0]]), [2.0], 1.0)
    mass1 = integrate(lambda x: et1.pdf(np.asarray(x, float)), Interval(-math.inf, math.inf))
    checks.append(_check("normalizes_d1_tau1", abs(mass1 - 1.0) <= 1e-8,
                         abs(mass1 - 1.0), 1e-8, integral=mass1))

    et2 = ESNDensity(om2, alpha2, 1.0)
    box = (Interval(-9.0, 9.0), Interval(-9.0, 9.0))
    mass2 = _box_integral(et2.pdf, box, QuadSpec())
    checks.append(_check("normalizes_d2_tau1", abs(mass2 - 1.0) <= 1e-6,
                         abs(mass2 - 1.0), 1e-6, integral=mass2))

    rl = check_sconcave(et1.pdf, 0.0, Interval(-6.0, 6.0), n_pairs=5_000, seed=seed)
    checks.append(_check("log_concave_d1_tau1", rl.verdict, float(rl.n_violations), 0.0,
                         min_margin=rl.min_margin, n_pairs=rl.n_pairs))
    return checks


SUITE_ORDER = [
    "normalization",
    "survival-identity",
    "invariance",
    "characterization",
    "ordering",
    "cdf-spot",
    "modes",
    "counterexample",
    "sconcavity-skewnormal",
    "sconcavity-pearson2",
    "sconcavity-student",
    "subbotin",
    "esn",
]

_SUITES: dict[str, Callable[[int], list[dict]]] = {
    "normalization": _suite_normalization,
    "survival-identity": _suite_survival,
    "invariance": _suite_invariance,
    "characterization": _suite_characterization,
    "ordering": _suite_ordering,
    "cdf-spot": _suite_cdf_spot,
    "modes": _suite_modes,
    "counterexample": _suite_counterexample,
    "sconcavity-skewnormal": _suite_sconcavity_skewnormal,
    "sconcavity-pearson2": _suite_sconcavity_pearson2,
    "sconcavity-student": _suite_sconcavity_student,
    "subbotin": _suite_subbotin,
    "esn": _suite_esn,
}


def _single(name: str, seed: int) -> dict:
    checks = _SUITES[name](seed)
    return {
        "suite": name,
        "seed": seed,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def run_suite(name: str, seed: int = 0) -> dict:
    """Run one named suite (or 'all') and return the JSON-ready report."""
    if name == "all":
        subs = [_single(n, seed) for n in SUITE_ORDER]
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": "all",
            "seed": seed,
            "passed": all(s["passed"] for s in subs),
            "suites": subs,
        }
    if name not in _SUITES:
        known = ", ".join(SUITE_ORDER + ["all"])
        raise UnknownSuite(f"unknown suite {name!r}; known suites: {known}")
    return {"schema_version": SCHEMA_VERSION, **_single(name, seed)}


def report_json(report: dict) -> str:
    import json

    return json.dumps(report, indent=2) + "\n"
