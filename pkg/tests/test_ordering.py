"""Pointwise perturbation dominance and its distributional consequences."""

import numpy as np
import pytest

from skewlab.bases import make_base
from skewlab.errors import BadParam, MomentUndefined, PremiseNotMet
from skewlab.numerics import Interval
from skewlab.ordering import (
    compare_gr,
    functional_order,
    quantile_order,
    verify_stochastic_order,
)
from skewlab.perturb import compose, odd_linear, odd_poly
from skewlab.skew1d import SkewDensity1D


@pytest.fixture(scope="module")
def g_slow():
    normal = make_base("normal")
    return compose(normal, odd_linear(1.0))


@pytest.fixture(scope="module")
def g_fast():
    normal = make_base("normal")
    return compose(normal, odd_linear(2.0))


class TestCompareGr:
    def test_dominance(self, g_slow, g_fast):
        v = compare_gr(g_slow, g_fast)
        assert v.relation == "G2_gr_G1"
        assert v.comparable
        assert v.max_gap > 0

    def test_reversed(self, g_slow, g_fast):
        v = compare_gr(g_fast, g_slow)
        assert v.relation == "G1_gr_G2"

    def test_equal(self, g_slow):
        v = compare_gr(g_slow, g_slow)
        assert v.relation == "equal"
        assert v.max_gap == 0.0

    def test_crossing_detected(self):
        normal = make_base("normal")
        g1 = compose(normal, odd_poly({1: -1.0, 3: 1.0}))  # x^3 - x
        g2 = compose(normal, odd_linear(1.0))              # crosses at sqrt 2
        v = compare_gr(g1, g2)
        assert v.relation == "incomparable"
        assert not v.comparable
        assert v.crossing_x is not None

    def test_grid_validation(self, g_slow, g_fast):
        with pytest.raises(BadParam):
            compare_gr(g_slow, g_fast, n=2)


class TestStochasticOrder:
    def test_cdf_dominance(self, g_slow, g_fast):
        rep = verify_stochastic_order(make_base("normal"), g_slow, g_fast)
        assert rep.ok
        assert rep.max_violation == 0.0
        assert rep.strict_gap > 0.01  # the order is strict somewhere

    def test_premise_enforced(self, g_slow, g_fast):
        with pytest.raises(PremiseNotMet):
            verify_stochastic_order(make_base("normal"), g_fast, g_slow)

    def test_heavy_tail_base(self):
        cauchy = make_base("cauchy")
        g1 = compose(cauchy, odd_poly({1: -1.0, 3: 1.0}))
        g2 = compose(cauchy, odd_poly({3: 1.0}))
        rep = verify_stochastic_order(cauchy, g1, g2)
        assert rep.ok


class TestQuantileOrder:
    def test_quantiles_shift_right(self, g_slow, g_fast):
        out = quantile_order(make_base("normal"), g_slow, g_fast,
                             ps=np.linspace(0.1, 0.9, 9))
        assert out["ok"]
        assert np.all(out["q1"] <= out["q2"] + 1e-8)
        # strictly apart in the middle of the distribution
        assert out["q2"][4] - out["q1"][4] > 0.05

    def test_levels_validated(self, g_slow, g_fast):
        with pytest.raises(BadParam):
            quantile_order(make_base("normal"), g_slow, g_fast, ps=[0.0, 0.5])


class TestFunctionalOrder:
    def test_odd_powers(self, g_slow, g_fast):
        base = make_base("normal")
        for t, deg in ((lambda x: np.asarray(x, float), 1),
                       (lambda x: np.asarray(x, float) ** 3, 3)):
            out = functional_order(base, g_slow, g_fast, t, poly_degree=deg)
            assert out["ok"]
            assert out["e1"] <= out["e2"]

    def test_bounded_increasing(self, g_slow, g_fast):
        out = functional_order(make_base("normal"), g_slow, g_fast, np.tanh)
        assert out["ok"]

    def test_decreasing_rejected(self, g_slow, g_fast):
        with pytest.raises(PremiseNotMet):
            functional_order(make_base("normal"), g_slow, g_fast,
                             lambda x: -np.asarray(x, float))

    def test_undefined_expectation(self):
        cauchy = make_base("cauchy")
        g1 = compose(cauchy, odd_linear(1.0))
        g2 = compose(cauchy, odd_linear(2.0))
        with pytest.raises(MomentUndefined):
            functional_order(cauchy, g1, g2, lambda x: np.asarray(x, float),
                             poly_degree=1)


def test_variance_shrinks_as_slant_grows(g_slow, g_fast):
    """More slant moves mass to one side: Var X2 <= Var X1 <= Var X0 = 1."""
    normal = make_base("normal")
    d1 = SkewDensity1D(normal, g_slow, validate=False)
    d2 = SkewDensity1D(normal, g_fast, validate=False)
    v1, v2 = d1.variance(), d2.variance()
    assert v2 < v1 < 1.0
