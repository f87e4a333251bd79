"""Sampled s-concavity, super-level-set geometry, composition and marginals."""

import math

import numpy as np
import pytest

from skewlab.bases import make_base
from skewlab.concavity import (
    check_marginal_sconcavity,
    check_sconcave,
    check_shape,
    check_superlevel_convex,
    compose_rule,
    marginal_s,
)
from skewlab.errors import BadParam, EmptyLevelSet, HypothesisViolated, RuleNotCovered
from skewlab.numerics import Interval, normal_pdf

BOX = Interval(-6.0, 6.0)


class TestCheckSconcave:
    def test_normal_is_log_concave(self):
        rep = check_sconcave(normal_pdf, 0.0, BOX, n_pairs=4000, seed=1)
        assert rep.verdict
        assert rep.n_violations == 0
        assert rep.witness is None
        assert rep.n_comparisons > 0

    def test_cauchy_fails_log_concavity(self):
        cauchy = make_base("cauchy")
        rep = check_sconcave(cauchy.pdf, 0.0, Interval(-30.0, 30.0),
                             n_pairs=4000, seed=1)
        assert not rep.verdict
        assert rep.witness is not None
        assert rep.witness["f_mid"] < rep.witness["required"]

    def test_cauchy_is_minus_one_concave(self):
        # 1/f = pi (1 + x^2) is convex, so f is (-1)-concave
        cauchy = make_base("cauchy")
        rep = check_sconcave(cauchy.pdf, -1.0, Interval(-30.0, 30.0),
                             n_pairs=4000, seed=1)
        assert rep.verdict

    def test_hierarchy_downward(self):
        """s-concavity at s implies it at every smaller s."""
        for s in (0.0, -0.5, -2.0, -math.inf):
            rep = check_sconcave(normal_pdf, s, BOX, n_pairs=1500, seed=4)
            assert rep.verdict, s

    def test_uniform_indicator_is_quasi_only_at_plus_levels(self):
        u = make_base("uniform", half_width=1.0)
        rep = check_sconcave(u.pdf, -math.inf, Interval(-2.0, 2.0),
                             n_pairs=3000, seed=2)
        assert rep.verdict  # superlevel sets are intervals

    def test_two_bump_density_fails_quasi(self):
        f = lambda x: 0.5 * (normal_pdf(np.asarray(x, float) - 3.0)
                             + normal_pdf(np.asarray(x, float) + 3.0))
        rep = check_sconcave(f, -math.inf, BOX, n_pairs=3000, seed=2)
        assert not rep.verdict
        w = rep.witness
        assert min(w["f_x"], w["f_y"]) > w["f_mid"]

    def test_seeded_reproducibility(self):
        a = check_sconcave(normal_pdf, 0.0, BOX, n_pairs=500, seed=9)
        b = check_sconcave(normal_pdf, 0.0, BOX, n_pairs=500, seed=9)
        assert a == b

    def test_rejects_negative_function(self):
        with pytest.raises(BadParam):
            check_sconcave(np.sin, 0.0, Interval(0.0, 7.0), n_pairs=100, seed=0)

    def test_rejects_empty_budget(self):
        with pytest.raises(BadParam):
            check_sconcave(normal_pdf, 0.0, BOX, n_pairs=0)


class TestCheckShape:
    def test_square_is_convex(self):
        rep = check_shape(lambda x: np.square(x), "convex", BOX, seed=1)
        assert rep.verdict

    def test_square_is_not_concave(self):
        rep = check_shape(lambda x: np.square(x), "concave", BOX, seed=1)
        assert not rep.verdict
        assert rep.witness is not None

    def test_unknown_kind(self):
        with pytest.raises(BadParam):
            check_shape(np.square, "monotone", BOX)


class TestSuperlevel:
    def test_normal_levels_are_intervals(self):
        for level in (0.01, 0.1, 0.2, 0.3, 0.38):
            rep = check_superlevel_convex(normal_pdf, level, BOX)
            assert rep.convex, level
            assert rep.n_members > 0

    def test_two_bump_level_splits(self):
        f = lambda x: 0.5 * (normal_pdf(np.asarray(x, float) - 3.0)
                             + normal_pdf(np.asarray(x, float) + 3.0))
        rep = check_superlevel_convex(f, 0.1, BOX)
        assert not rep.convex
        assert rep.witness is not None

    def test_empty_level(self):
        with pytest.raises(EmptyLevelSet):
            check_superlevel_convex(normal_pdf, 0.9, BOX)

    def test_agrees_with_quasi_concavity(self):
        """Set route and pair route must agree across shapes and levels."""
        two_bump = lambda x: 0.5 * (normal_pdf(np.asarray(x, float) - 3.0)
                                    + normal_pdf(np.asarray(x, float) + 3.0))
        cases = [
            (normal_pdf, True),
            (make_base("logistic").pdf, True),
            (make_base("cauchy").pdf, True),
            (make_base("laplace").pdf, True),
            (two_bump, False),
        ]
        for f, expect in cases:
            pair = check_sconcave(f, -math.inf, BOX, n_pairs=4000, seed=3)
            vals = np.asarray(f(np.linspace(BOX.lo, BOX.hi, 101)), float)
            level = 0.5 * float(np.max(vals))
            sets = check_superlevel_convex(f, level, BOX)
            assert pair.verdict == expect
            assert sets.convex == expect


class TestComposeRule:
    def test_table(self):
        assert compose_rule("convex", "nondecreasing", "convex").shape == "convex"
        assert compose_rule("concave", "nondecreasing", "concave").shape == "concave"
        assert compose_rule("convex", "nonincreasing", "concave").shape == "concave"
        assert compose_rule("concave", "nonincreasing", "convex").shape == "convex"
        assert compose_rule("concave", "nondecreasing", "log_concave").shape == "log_concave"
        assert compose_rule("convex", "nonincreasing", "log_concave").shape == "log_concave"

    def test_uncovered(self):
        with pytest.raises(RuleNotCovered):
            compose_rule("convex", "nondecreasing", "concave")

    def test_strictness_propagation(self):
        weak = compose_rule("convex", "nondecreasing", "convex")
        assert not weak.strict
        via_outer = compose_rule("convex", "nondecreasing", "convex", outer_strict=True)
        assert via_outer.strict
        via_inner = compose_rule("convex", "nondecreasing", "convex",
                                 inner_strict=True, outer_strictly_monotone=True)
        assert via_inner.strict
        inner_only = compose_rule("convex", "nondecreasing", "convex", inner_strict=True)
        assert not inner_only.strict

    def test_predictions_hold_numerically(self):
        """Each table row, instantiated with concrete functions."""
        dom = Interval(0.1, 3.0)
        cases = [
            ("convex", "nondecreasing", "convex", np.square, lambda t: np.exp(t)),
            ("convex", "nonincreasing", "concave", np.square, lambda t: -np.asarray(t, float)),
            ("convex", "nonincreasing", "log_concave", np.square,
             lambda t: np.exp(-np.asarray(t, float))),
            ("concave", "nondecreasing", "concave", np.sqrt,
             lambda t: np.log1p(np.asarray(t, float))),
            ("concave", "nondecreasing", "log_concave", np.sqrt,
             lambda t: 1.0 - np.exp(-np.asarray(t, float))),
            ("concave", "nonincreasing", "convex", np.sqrt,
             lambda t: 1.0 / np.asarray(t, float)),
        ]
        for inner_shape, mono, outer_shape, h, H in cases:
            predicted = compose_rule(inner_shape, mono, outer_shape)
            rep = check_shape(lambda x: H(h(np.asarray(x, float))), predicted.shape,
                              dom, n_pairs=800, seed=5)
            assert rep.verdict, (inner_shape, mono, outer_shape)


class TestMarginal:
    def test_index_algebra(self):
        assert marginal_s(0.0, 1) == 0.0
        assert marginal_s(0.5, 1) == pytest.approx(1.0 / 3.0)
        assert marginal_s(-1.0 / 3.0, 2) == pytest.approx(-1.0)
        assert marginal_s(-0.5, 2) == -math.inf
        with pytest.raises(HypothesisViolated):
            marginal_s(-0.6, 2)
        with pytest.raises(BadParam):
            marginal_s(0.0, 0)

    def test_gaussian_marginal_stays_log_concave(self):
        def f2(pts):
            pts = np.asarray(pts, float).reshape(-1, 2)
            q = pts[:, 0] ** 2 + 1.2 * pts[:, 0] * pts[:, 1] + pts[:, 1] ** 2
            return np.exp(-q)

        rep = check_marginal_sconcavity(f2, 0.0, (Interval(-5.0, 5.0), Interval(-5.0, 5.0)),
                                        m=1, n_pairs=1500, seed=6)
        assert rep.s_marginal == 0.0
        assert rep.report.verdict

    def test_boundary_index_gives_quasi(self):
        """At s = -1/m the marginal is exactly quasi-concave."""
        def f2(pts):
            pts = np.asarray(pts, float).reshape(-1, 2)
            q = 1.0 + pts[:, 0] ** 2 + pts[:, 1] ** 2
            return np.power(q, -2.0)  # f^(-1) = (1+q)^2 is convex

        rep = check_marginal_sconcavity(f2, -1.0, (Interval(-4.0, 4.0), Interval(-4.0, 4.0)),
                                        m=1, n_pairs=1000, seed=6)
        assert rep.s_marginal == -math.inf
        assert rep.report.verdict

    def test_m_bound(self):
        with pytest.raises(BadParam):
            check_marginal_sconcavity(normal_pdf, 0.0, (BOX,), m=1)
