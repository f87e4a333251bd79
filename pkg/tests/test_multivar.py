"""Elliptical generators, conditioning-induced skew densities, Subbotin laws.

Independent oracles: scipy.stats closed forms for the normal cases,
scipy.integrate.quad/dblquad for masses, and exact geometry for the
two-indicator generator (k = 2 / (17 pi sqrt 3)).
"""

import math

import numpy as np
import pytest
import scipy.integrate as sint
import scipy.stats as st

from skewlab.errors import BadParam, DegenerateBase
from skewlab.multivar import (
    TWO_DISC_K,
    ConditioningSpec,
    EllipticalDensity,
    ESNDensity,
    MVSubbotin,
    ProductSubbotin,
    SEPDensity,
    branco_dey_G,
    gen_normal,
    gen_pearson2,
    gen_pearson7,
    gen_two_disc,
    skew_by_conditioning,
    subbotin_hessian_form,
    two_disc_counterexample,
)

OMEGA_2 = np.array([[1.0, 0.4], [0.4, 1.0]])
OMEGA_PLUS_06 = np.array([[1.0, 0.6], [0.6, 1.0]])


class TestEllipticalDensity:
    def test_normal_matches_scipy(self):
        d = EllipticalDensity(gen_normal(), OMEGA_2)
        ref = st.multivariate_normal(mean=np.zeros(2), cov=OMEGA_2)
        pts = np.array([[0.0, 0.0], [1.0, -0.5], [2.0, 2.0]])
        assert np.max(np.abs(d.pdf(pts) - ref.pdf(pts))) < 1e-14

    def test_normal_constant_closed_form(self):
        for dim, om in ((1, np.array([[2.0]])), (2, OMEGA_2)):
            d = EllipticalDensity(gen_normal(), om)
            expect = (2.0 * math.pi) ** (-dim / 2.0) / math.sqrt(np.linalg.det(om))
            assert abs(d.k - expect) < 1e-12

    def test_pearson2_mass(self):
        d = EllipticalDensity(gen_pearson2(2.0), np.eye(2))
        mass, err = sint.dblquad(
            lambda y, x: d.pdf(np.array([[x, y]]))[0],
            -1.0, 1.0, lambda x: -1.0, lambda x: 1.0,
        )
        assert abs(mass - 1.0) < 1e-8

    def test_pearson7_mass_1d(self):
        d = EllipticalDensity(gen_pearson7(3.0, 3.0), np.array([[1.0]]))
        mass, err = sint.quad(lambda x: d.pdf(np.array([[x]]))[0], -np.inf, np.inf)
        assert abs(mass - 1.0) < 1e-9

    def test_pearson7_is_student_t(self):
        """M = (nu+1)/2 with matching nu gives the univariate t."""
        nu = 5.0
        d = EllipticalDensity(gen_pearson7((nu + 1.0) / 2.0, nu), np.array([[1.0]]))
        xs = np.linspace(-4.0, 4.0, 33)
        ref = st.t(df=nu).pdf(xs)
        assert np.max(np.abs(d.pdf(xs[:, None]) - ref)) < 1e-12

    def test_algebraic_dimension_guard(self):
        with pytest.raises(BadParam):
            EllipticalDensity(gen_pearson7(1.0, 3.0), OMEGA_2)  # needs M > d/2

    def test_scale_matrix_validation(self):
        with pytest.raises(BadParam):
            EllipticalDensity(gen_normal(), np.array([[1.0, 2.0], [2.0, 1.0]]))
        with pytest.raises(BadParam):
            EllipticalDensity(gen_normal(), np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))

    def test_point_shape_validation(self):
        d = EllipticalDensity(gen_normal(), OMEGA_2)
        with pytest.raises(BadParam):
            d.pdf(np.zeros(3))
        with pytest.raises(BadParam):
            d.pdf(0.0)


class TestConditioningSpec:
    def test_properties(self):
        spec = ConditioningSpec(OMEGA_PLUS_06)
        assert spec.dim == 1
        assert spec.delta[0] == 0.6
        assert spec.Omega.shape == (1, 1)

    def test_unit_diagonal_required(self):
        with pytest.raises(BadParam):
            ConditioningSpec(np.array([[2.0, 0.5], [0.5, 1.0]]))

    def test_positive_definite_required(self):
        with pytest.raises(BadParam):
            ConditioningSpec(np.array([[1.0, 1.2], [1.2, 1.0]]))


class TestConditionedNormal:
    """The gaussian generator must reproduce the closed-form slant density."""

    def test_pdf_matches_closed_form(self):
        delta = 0.6
        alpha = delta / math.sqrt(1.0 - delta * delta)
        d = skew_by_conditioning(gen_normal(), OMEGA_PLUS_06)
        ys = np.linspace(-4.0, 4.0, 81)
        expect = 2.0 * st.norm.pdf(ys) * st.norm.cdf(alpha * ys)
        assert np.max(np.abs(d.pdf(ys[:, None]) - expect)) < 1e-11

    def test_induced_perturbation(self):
        delta = 0.6
        alpha = delta / math.sqrt(1.0 - delta * delta)
        for y in (-2.0, -0.5, 0.0, 1.0, 3.0):
            g = branco_dey_G(gen_normal(), OMEGA_PLUS_06, np.array([y]))
            assert abs(g - float(st.norm.cdf(alpha * y))) < 1e-11

    def test_marginal_is_standard_normal(self):
        d = skew_by_conditioning(gen_normal(), OMEGA_PLUS_06)
        ys = np.linspace(-4.0, 4.0, 41)
        assert np.max(np.abs(d.marginal_pdf(ys[:, None]) - st.norm.pdf(ys))) < 1e-11

    def test_g_complement_identity(self):
        d = skew_by_conditioning(gen_normal(), OMEGA_PLUS_06)
        ys = np.linspace(0.1, 4.0, 20)[:, None]
        assert np.max(np.abs(d.G(ys) + d.G(-ys) - 1.0)) < 1e-12

    def test_bivariate_output(self):
        omega_plus = np.array([
            [1.0, 0.5, 0.3],
            [0.5, 1.0, 0.2],
            [0.3, 0.2, 1.0],
        ])
        d = skew_by_conditioning(gen_normal(), omega_plus)
        assert d.dim == 2
        mass, err = sint.dblquad(
            lambda y, x: d.pdf(np.array([[x, y]]))[0],
            -8.0, 8.0, lambda x: -8.0, lambda x: 8.0,
        )
        assert abs(mass - 1.0) < 1e-7


class TestBatchVsReference:
    """The fixed-node batch and the adaptive scalar route must agree."""

    PTS = (-3.0, -1.1, -0.2, 0.0, 0.4, 1.7, 2.9)

    def _compare(self, gen, tol):
        d = skew_by_conditioning(gen, OMEGA_PLUS_06)
        for y in self.PTS:
            batch = d.pdf(np.array([y]))[0]
            ref = d.pdf_reference(np.array([y]))
            assert abs(batch - ref) <= tol * max(1.0, abs(ref)), (gen.name, y)

    def test_gaussian(self):
        self._compare(gen_normal(), 1e-11)

    def test_algebraic(self):
        self._compare(gen_pearson7(3.0, 3.0), 1e-11)

    def test_bounded(self):
        self._compare(gen_pearson2(2.0), 1e-11)

    def test_indicator(self):
        self._compare(gen_two_disc(), 1e-11)

    def test_reference_is_single_point(self):
        d = skew_by_conditioning(gen_normal(), OMEGA_PLUS_06)
        with pytest.raises(BadParam):
            d.pdf_reference(np.array([[0.0], [1.0]]))


class TestTwoDisc:
    def test_constant_exact(self):
        te = two_disc_counterexample()
        assert te.k == TWO_DISC_K
        # the quadrature route recovers the same constant: k1 * 2 = ... the
        # normalization enters through the conditioned pdf, checked below
        assert abs(TWO_DISC_K - 2.0 / (17.0 * math.sqrt(3.0) * math.pi)) == 0.0

    def test_component_geometry(self):
        te = two_disc_counterexample()
        # inner disc: zero beyond |y| > 1; chord form between sqrt(3)/2 and 1
        assert float(te.component(1.5, 1.0)) == 0.0
        assert abs(float(te.component(0.9, 1.0)) - 2.0 * math.sqrt(3.0 * (1.0 - 0.81))) < 1e-14
        # outer disc at the stationary point y = 2: 2 + sqrt(3 * 12) = 8
        assert abs(float(te.component(2.0, 4.0)) - 8.0) < 1e-14

    def test_spot_values(self):
        te = two_disc_counterexample()
        assert abs(te.pdf(2.0) - 8.0 * TWO_DISC_K) < 1e-15
        assert abs(te.pdf(1.0) - (1.0 + math.sqrt(45.0)) * TWO_DISC_K) < 1e-15
        assert abs(te.pdf(0.0) - 5.0 * math.sqrt(3.0) * TWO_DISC_K) < 1e-15
        assert te.pdf(4.1) == 0.0

    def test_closed_form_matches_conditioning(self):
        te = two_disc_counterexample()
        ys = np.linspace(-4.0, 4.0, 81)
        closed = te.pdf_1d(ys)
        quad = te.conditioned.pdf(ys[:, None])
        assert np.max(np.abs(closed - quad)) < 1e-12

    def test_total_mass(self):
        te = two_disc_counterexample()
        mass, err = sint.quad(lambda y: te.pdf(y), -4.0, 4.0,
                              points=[-4, -2, -1, 0, 1, 2, 4], limit=200)
        assert abs(mass - 1.0) < 1e-10

    def test_degenerate_marginal_raises(self):
        with pytest.raises(DegenerateBase):
            branco_dey_G(gen_two_disc(), np.array([[1.0, 0.5], [0.5, 1.0]]),
                         np.array([5.0]))


class TestSubbotin:
    def test_nu_two_is_spherical_normal(self):
        d = MVSubbotin(np.eye(2), 2.0)
        ref = st.multivariate_normal(mean=np.zeros(2), cov=np.eye(2))
        pts = np.array([[0.0, 0.0], [1.0, 1.0], [-2.0, 0.5]])
        assert np.max(np.abs(d.pdf(pts) - ref.pdf(pts))) < 1e-12

    def test_univariate_constant(self):
        """d = 1 falls back to the Gamma closed form nu^(1-1/nu)/(2 Gamma(1/nu))."""
        for nu in (1.0, 1.5, 3.0):
            d = MVSubbotin(np.eye(1), nu)
            expect = nu ** (1.0 - 1.0 / nu) / (2.0 * math.gamma(1.0 / nu))
            assert abs(d.norm - expect) < 1e-10, nu

    def test_mass_d2_nu15(self):
        d = MVSubbotin(np.array([[1.0, 0.3], [0.3, 1.0]]), 1.5)
        mass, err = sint.dblquad(
            lambda y, x: d.pdf(np.array([[x, y]]))[0],
            -12.0, 12.0, lambda x: -12.0, lambda x: 12.0,
        )
        assert abs(mass - 1.0) < 1e-6

    def test_hessian_form_identity(self):
        rng = np.random.default_rng(3)
        A = rng.normal(size=(3, 3))
        C = A @ A.T + 0.5 * np.eye(3)
        for _ in range(50):
            x = rng.normal(size=3)
            u = rng.normal(size=3)
            direct = (x @ C @ x) * (u @ C @ u) - (u @ C @ x) ** 2
            assert abs(subbotin_hessian_form(C, x, u) - direct) < 1e-10

    def test_hessian_form_nonnegative(self):
        rng = np.random.default_rng(11)
        A = rng.normal(size=(2, 2))
        C = A @ A.T + 0.5 * np.eye(2)
        d = MVSubbotin(C, 1.5)
        worst = min(
            d.hessian_form(rng.normal(size=2), rng.normal(size=2))
            for _ in range(500)
        )
        assert worst >= -1e-12

    def test_sep_mass(self):
        d = SEPDensity(np.array([[1.0, 0.3], [0.3, 1.0]]), 1.5, np.array([1.0, -0.5]))
        mass, err = sint.dblquad(
            lambda y, x: d.pdf(np.array([[x, y]]))[0],
            -12.0, 12.0, lambda x: -12.0, lambda x: 12.0,
        )
        assert abs(mass - 1.0) < 1e-6

    def test_sep_nu2_is_skew_normal(self):
        alpha = np.array([2.0, -1.0])
        d = SEPDensity(np.eye(2), 2.0, alpha)
        ref = st.multivariate_normal(mean=np.zeros(2), cov=np.eye(2))
        pts = np.array([[0.3, -0.2], [1.0, 1.0], [-1.5, 0.4]])
        expect = 2.0 * ref.pdf(pts) * st.norm.cdf(pts @ alpha)
        assert np.max(np.abs(d.pdf(pts) - expect)) < 1e-12

    def test_product_form(self):
        p = ProductSubbotin(1.5, 2, alpha=np.array([1.0, 0.0]))
        from skewlab.bases import make_base

        base = make_base("subbotin", nu=1.5)
        pts = np.array([[0.5, -1.0], [2.0, 0.1]])
        expect = (2.0 * base.pdf(pts[:, 0]) * base.pdf(pts[:, 1])
                  * base.cdf(pts @ np.array([1.0, 0.0])))
        assert np.max(np.abs(p.pdf(pts) - expect)) < 1e-14

    def test_parameter_validation(self):
        with pytest.raises(BadParam):
            MVSubbotin(np.eye(2), 0.0)
        with pytest.raises(BadParam):
            SEPDensity(np.eye(2), 1.5, np.array([1.0]))
        with pytest.raises(BadParam):
            ProductSubbotin(1.5, 0)


class TestESN:
    def test_tau_zero_is_skew_normal(self):
        alpha = np.array([2.0])
        esn = ESNDensity(np.eye(1), alpha, 0.0)
        xs = np.linspace(-4.0, 4.0, 41)
        expect = 2.0 * st.norm.pdf(xs) * st.norm.cdf(2.0 * xs)
        assert np.max(np.abs(esn.pdf(xs[:, None]) - expect)) < 1e-14

    def test_alpha_zero_is_elliptical(self):
        esn = ESNDensity(OMEGA_2, np.zeros(2), 1.3)
        ref = st.multivariate_normal(mean=np.zeros(2), cov=OMEGA_2)
        pts = np.array([[0.0, 0.0], [1.0, -1.0]])
        # Phi(alpha0 + 0) / Phi(tau) = 1 when alpha = 0
        assert np.max(np.abs(esn.pdf(pts) - ref.pdf(pts))) < 1e-14

    def test_mass_with_hidden_truncation(self):
        esn = ESNDensity(np.eye(1), np.array([1.5]), 1.0)
        mass, err = sint.quad(lambda x: float(esn.pdf(np.array([x]))[0]), -np.inf, np.inf)
        assert abs(mass - 1.0) < 1e-9

    def test_offset_value(self):
        omega = OMEGA_2
        alpha = np.array([2.0, -1.0])
        tau = 0.7
        esn = ESNDensity(omega, alpha, tau)
        assert abs(esn.alpha0 - tau * math.sqrt(1.0 + alpha @ omega @ alpha)) < 1e-15

    def test_dimension_validation(self):
        with pytest.raises(BadParam):
            ESNDensity(OMEGA_2, np.array([1.0]), 0.0)
