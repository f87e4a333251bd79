"""Shared-base detection: the five-condition battery and the symmetric-set check."""

import numpy as np
import pytest

from skewlab.bases import make_base
from skewlab.characterize import check_common_base, check_symmetric_set
from skewlab.errors import BadParam
from skewlab.perturb import compose, odd_cubic, odd_linear
from skewlab.skew1d import SkewDensity1D

CONDITION_NAMES = (
    "a_same_base",
    "b_even_moments",
    "c_abs_distribution",
    "d_cdf_identity",
    "e_density_identity",
)


def _skew(base, w):
    return SkewDensity1D(base, compose(base, w), validate=False)


def test_same_base_different_slants(normal):
    f = _skew(normal, odd_linear(5.0))
    h = _skew(normal, odd_linear(-2.0))
    rep = check_common_base(f, h, seed=3)
    assert rep.same_base
    assert rep.unanimous
    assert tuple(c.condition for c in rep.conditions) == CONDITION_NAMES


def test_mirror_pair(normal):
    f = _skew(normal, odd_cubic(1.0, 0.5))
    h = _skew(normal, odd_cubic(-1.0, -0.5))
    rep = check_common_base(f, h, seed=11)
    assert rep.same_base and rep.unanimous


def test_cross_perturbation_families(normal):
    """Composed vs raw perturbations over one base still read as shared."""
    from skewlab.perturb import half_indicator

    f = _skew(normal, odd_linear(1.0))
    h = SkewDensity1D(normal, half_indicator(), validate=False)
    rep = check_common_base(f, h, seed=5)
    assert rep.same_base and rep.unanimous


def test_different_bases_all_conditions_fail(normal):
    logistic = make_base("logistic")
    f = _skew(normal, odd_linear(1.0))
    h = _skew(logistic, odd_linear(1.0))
    rep = check_common_base(f, h, seed=3)
    assert not rep.same_base
    assert rep.unanimous  # every condition rejects, none split
    for c in rep.conditions:
        assert not c.passed


def test_nearby_scales_still_distinguished(normal):
    """Student-t with large nu is close to normal but not equal."""
    t7 = make_base("student_t", nu=7.0)
    f = _skew(normal, odd_linear(2.0))
    h = _skew(t7, odd_linear(2.0))
    rep = check_common_base(f, h, seed=9)
    assert not rep.same_base
    # the sharp analytic conditions must reject even when sampling is noisy
    assert not rep["a_same_base"].passed
    assert not rep["e_density_identity"].passed


def test_report_indexing(normal):
    f = _skew(normal, odd_linear(1.0))
    rep = check_common_base(f, f, seed=0)
    assert rep["a_same_base"].passed
    with pytest.raises(KeyError):
        rep["f_nonexistent"]


def test_witness_points_recorded(normal):
    logistic = make_base("logistic")
    rep = check_common_base(_skew(normal, odd_linear(1.0)),
                            _skew(logistic, odd_linear(1.0)), seed=3)
    assert rep["a_same_base"].witness is not None
    assert rep["e_density_identity"].statistic > rep["e_density_identity"].threshold


def test_symmetric_set_probability(sn1):
    out = check_symmetric_set(sn1, 1.0, n=50_000, seed=2)
    assert out["agree_3sigma"]
    # P(|X| <= a) equals the base's symmetric mass: 2 Phi(1) - 1
    assert abs(out["p_cdf"] - (2.0 * 0.8413447460685429 - 1.0)) < 1e-8


def test_symmetric_set_validation(sn1):
    with pytest.raises(BadParam):
        check_symmetric_set(sn1, 0.0)
