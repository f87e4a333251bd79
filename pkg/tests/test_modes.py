"""Critical-point analysis and the cubic-slant unimodality classifier.

Frozen critical points of 2 phi(x) Phi(x^3), from a bracketed root solve
of -x Phi(x^3) + 3 x^2 phi(x^3):
  modes     at 0 and 0.9399494502439719
  antimode  at 0.44995953754739604
"""

import numpy as np
import pytest

from skewlab.bases import make_base
from skewlab.modes import analyze_modes, ma_genton_check
from skewlab.perturb import compose, odd_cubic, odd_linear
from skewlab.skew1d import SkewDensity1D

MODE_HIGH = 0.9399494502439719
ANTIMODE = 0.44995953754739604


def test_cubic_slant_critical_points(cubic_skew):
    rep = analyze_modes(cubic_skew)
    assert rep.n_modes == 2
    assert rep.n_antimodes == 1
    modes = sorted(cp.x for cp in rep.critical_points if cp.kind == "mode")
    anti = [cp.x for cp in rep.critical_points if cp.kind == "antimode"]
    assert abs(modes[0] - 0.0) < 1e-8
    assert abs(modes[1] - MODE_HIGH) < 1e-8
    assert abs(anti[0] - ANTIMODE) < 1e-8
    assert rep.unimodal_verdict == "multimodal"


def test_critical_points_alternate(cubic_skew):
    rep = analyze_modes(cubic_skew)
    kinds = [cp.kind for cp in rep.critical_points if cp.kind in ("mode", "antimode")]
    for a, b in zip(kinds, kinds[1:]):
        assert a != b


def test_mode_values_order(cubic_skew):
    """The off-center mode is the global one for this slant."""
    rep = analyze_modes(cubic_skew)
    modes = sorted((cp.x for cp in rep.critical_points if cp.kind == "mode"))
    f_center, f_side = (float(cubic_skew.pdf(m)) for m in modes)
    f_anti = float(cubic_skew.pdf(ANTIMODE))
    assert f_side > f_center > f_anti


def test_linear_slant_unimodal(normal):
    d = SkewDensity1D(normal, compose(normal, odd_linear(2.0)), validate=False)
    rep = analyze_modes(d)
    assert rep.n_modes == 1
    assert rep.n_antimodes == 0
    assert rep.unimodal_verdict in ("guaranteed", "observed_unimodal")
    assert rep.consistent


def test_sufficiency_is_sound(normal):
    """Whenever the checker claims a guarantee, one mode must be observed."""
    for alpha in (-3.0, -0.5, 0.0, 1.0, 4.0):
        d = SkewDensity1D(normal, compose(normal, odd_linear(alpha)), validate=False)
        rep = analyze_modes(d)
        if rep.unimodal_verdict == "guaranteed":
            assert rep.n_modes == 1
        assert rep.consistent


def test_flat_base_boundary_maximum():
    u = make_base("uniform", half_width=1.0)
    d = SkewDensity1D(u, compose(make_base("normal"), odd_linear(3.0)), validate=False)
    rep = analyze_modes(d)
    kinds = {cp.kind for cp in rep.critical_points}
    assert "boundary-max" in kinds


class TestMaGenton:
    def test_guaranteed_region(self):
        rep = ma_genton_check(2.0, 1.0)
        assert rep.classification == "guaranteed_unimodal"
        assert rep.n_modes_observed == 1
        assert rep.consistent

    def test_pure_cubic_bimodal(self):
        rep = ma_genton_check(0.0, 1.0)
        assert rep.classification == "at_most_two_modes"
        assert rep.n_modes_observed == 2
        assert rep.consistent

    def test_linear_reduction(self):
        rep = ma_genton_check(-5.0, 0.0)
        assert rep.classification == "guaranteed_unimodal"
        assert rep.n_modes_observed == 1

    def test_threshold_boundary(self):
        """alpha^3 > 6 beta marks the guarantee; straddle it."""
        beta = 1.0
        crit = (6.0 * beta) ** (1.0 / 3.0)
        above = ma_genton_check(crit * 1.01, beta)
        below = ma_genton_check(crit * 0.99, beta)
        assert above.classification == "guaranteed_unimodal"
        assert below.classification == "at_most_two_modes"
        # the sufficient condition is conservative: both sides stay consistent
        assert above.consistent and below.consistent

    def test_negative_beta_not_guaranteed(self):
        rep = ma_genton_check(2.0, -0.3)
        assert rep.classification == "at_most_two_modes"
        assert rep.consistent
