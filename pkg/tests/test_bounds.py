import numpy as np
import pytest

from rdblowup.bounds import (
    MODE_A2A3,
    MODE_A2PRIME,
    beta_admissibility_residual,
    compute_K,
    lower_bound_blowup,
    lower_bound_pipeline,
    select_betas,
    upper_bound_blowup,
)
from rdblowup.errors import (
    DimensionNot3,
    HypothesisFailed,
    NonpositiveE0,
    NonpositiveJ0,
)
from rdblowup.geometry import DomainSpec, GeometryConstants, build_mesh, geometry_constants
from rdblowup.nonlinearity import make_absorption, make_power_product
from rdblowup.oracle import brute_force_integral


def constant_data(mesh, c1, c2):
    return np.full(mesh.n_cells, c1), np.full(mesh.n_cells, c2)


class TestUpperBound:
    def test_neumann_quadratic_product(self, mesh3d):
        # F = u^2 v^2, g1 = g2 = 1 on [-1,1]^3, Neumann, alpha = 1:
        # E0 = 16, J0 = 64, M = 1/4, t_upper = 1/4
        nl = make_power_product(1.0, 2.0, 2.0)
        g1, g2 = constant_data(mesh3d, 1.0, 1.0)
        res = upper_bound_blowup(nl, g1, g2, mesh3d, 0.0, 0.0, 1.0)
        assert res.E0 == pytest.approx(16.0, rel=1e-12)
        assert res.J0 == pytest.approx(64.0, rel=1e-12)
        assert res.M == pytest.approx(0.25, rel=1e-12)
        assert res.t_upper == pytest.approx(0.25, abs=1e-9)

    def test_neumann_u2v3(self, mesh2d):
        # F = u^2 v^3, g1 = g2 = 1 on [-1,1]^2, Neumann, alpha = 3/2:
        # E0 = 8, J0 = 4(5/2)*4 = 40, t_upper = E0/(alpha J0) = 2/15
        nl = make_power_product(1.0, 2.0, 3.0)
        g1, g2 = constant_data(mesh2d, 1.0, 1.0)
        res = upper_bound_blowup(nl, g1, g2, mesh2d, 0.0, 0.0, 1.5)
        assert res.t_upper == pytest.approx(2.0 / 15.0, abs=1e-12)

    def test_h1_failure_raises_with_witness(self, mesh2d):
        # alpha = 1.6 pushes H1 past the a + b = 5 threshold for u^2 v^3
        nl = make_power_product(1.0, 2.0, 3.0)
        g1, g2 = constant_data(mesh2d, 1.0, 1.0)
        with pytest.raises(HypothesisFailed) as exc:
            upper_bound_blowup(nl, g1, g2, mesh2d, 0.0, 0.0, 1.6)
        assert exc.value.which == "H1"
        assert exc.value.margin < 0

    def test_robin_negative_J0_raises(self, mesh2d):
        # gamma = 1 boundary drain makes J0 = -40 < 0 for this data
        nl = make_power_product(1.0, 2.0, 3.0)
        g1, g2 = constant_data(mesh2d, 1.0, 1.0)
        with pytest.raises(NonpositiveJ0):
            upper_bound_blowup(nl, g1, g2, mesh2d, 1.0, 1.0, 1.5)

    def test_zero_data_raises(self, mesh2d):
        nl = make_power_product(1.0, 2.0, 2.0)
        g1, g2 = constant_data(mesh2d, 0.0, 0.0)
        with pytest.raises(NonpositiveE0):
            upper_bound_blowup(nl, g1, g2, mesh2d, 0.0, 0.0, 1.0)

    def test_two_algebraic_forms_agree(self, mesh3d):
        nl = make_power_product(0.5, 2.0, 2.0)
        g1, g2 = constant_data(mesh3d, 1.5, 0.5)
        res = upper_bound_blowup(nl, g1, g2, mesh3d, 0.0, 0.0, 1.0)
        direct = 1.0 / (res.alpha * res.M * res.E0**res.alpha)
        assert res.t_upper == pytest.approx(direct, rel=1e-12)

    def test_scale_invariance_of_M_form(self, mesh3d):
        # doubling F's coefficient doubles J0 and halves t_upper
        g1, g2 = constant_data(mesh3d, 1.0, 1.0)
        r1 = upper_bound_blowup(make_power_product(1.0, 2.0, 2.0),
                                g1, g2, mesh3d, 0.0, 0.0, 1.0)
        r2 = upper_bound_blowup(make_power_product(2.0, 2.0, 2.0),
                                g1, g2, mesh3d, 0.0, 0.0, 1.0)
        assert r2.t_upper == pytest.approx(r1.t_upper / 2.0, rel=1e-12)


class TestBetaSelection:
    def test_unit_ball_frozen_value(self):
        # p = 2, k1 = k2 = 2, rho = d = 1:
        # beta = 2^(3/2)*3 / (3^(1/4)*4*2*2^(3/2)) = 3/(8*3^(1/4))
        geo = geometry_constants(DomainSpec("ball", 3, radius=1.0))
        b1, b2 = select_betas(2.0, 2.0, 2.0, geo)
        expected = 3.0 / (8.0 * 3.0**0.25)
        assert b1 == pytest.approx(expected, rel=1e-14)
        assert b2 == pytest.approx(expected, rel=1e-14)

    def test_p1_k1_frozen_value(self):
        # p = 1, k = 1, rho = d = 1: beta = 2^(3/2)/(3^(1/4)*2^(3/2)) = 3^(-1/4)
        geo = GeometryConstants(rho=1.0, d=1.0)
        b1, _ = select_betas(1.0, 1.0, 1.0, geo)
        assert b1 == pytest.approx(3.0**-0.25, rel=1e-14)

    def test_doubling_k_halves_beta(self):
        geo = GeometryConstants(rho=1.0, d=2.0)
        b1, b2 = select_betas(2.0, 1.0, 2.0, geo)
        assert b2 == pytest.approx(b1 / 2.0, rel=1e-14)

    def test_selected_beta_sits_on_admissibility_boundary(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            p = rng.uniform(1.0, 4.0)
            k = rng.uniform(0.1, 10.0)
            rho = rng.uniform(0.2, 2.0)
            d = rho * rng.uniform(1.0, 3.0)
            geo = GeometryConstants(rho=rho, d=d)
            beta, _ = select_betas(p, k, k, geo)
            res = beta_admissibility_residual(p, k, geo, beta)
            assert abs(res) < 1e-12
            # anything larger is inadmissible
            assert beta_admissibility_residual(p, k, geo, 1.01 * beta) > 0

    def test_rejects_bad_inputs(self):
        geo = GeometryConstants(rho=1.0, d=1.0)
        with pytest.raises(ValueError):
            select_betas(0.5, 1.0, 1.0, geo)
        with pytest.raises(ValueError):
            select_betas(2.0, 0.0, 1.0, geo)


class TestComputeK:
    def test_frozen_K1(self):
        # p = 2, k = 2, rho = 1: K1 = 3^(3/4)*4
        geo = GeometryConstants(rho=1.0, d=1.0)
        K1, _ = compute_K(2.0, 2.0, geo, 0.5)
        assert K1 == pytest.approx(4.0 * 3.0**0.75, rel=1e-14)

    def test_K1_rho_scaling(self):
        geo_a = GeometryConstants(rho=1.0, d=2.0)
        geo_b = GeometryConstants(rho=4.0, d=8.0)
        K1a, _ = compute_K(2.0, 1.0, geo_a, 0.5)
        K1b, _ = compute_K(2.0, 1.0, geo_b, 0.5)
        assert K1b == pytest.approx(K1a / 8.0, rel=1e-14)

    def test_K2_beta_scaling(self):
        geo = GeometryConstants(rho=1.0, d=1.0)
        _, K2a = compute_K(2.0, 1.0, geo, 0.5)
        _, K2b = compute_K(2.0, 1.0, geo, 1.0)
        assert K2a == pytest.approx(8.0 * K2b, rel=1e-14)


class TestLowerBoundIntegral:
    def test_K2_zero_closed_form(self):
        # int_E0^inf dxi/(K1 xi^(3/2)) = 2/(K1 sqrt(E0))
        val, err = lower_bound_blowup(4.0, 3.0, 0.0)
        assert val == pytest.approx(2.0 / (3.0 * 2.0), rel=1e-10)
        assert err < 1e-10

    def test_K1_dominant_limit(self):
        # with tiny K2 the value approaches the K2 = 0 closed form
        # the perturbation from a small K2 scales like K2^(1/3)
        val, _ = lower_bound_blowup(1.0, 2.0, 1e-12)
        assert val == pytest.approx(1.0, rel=1e-3)

    def test_matches_trapezoid_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            E0 = rng.uniform(0.5, 50.0)
            K1 = rng.uniform(0.1, 20.0)
            K2 = rng.uniform(0.1, 200.0)
            val, _ = lower_bound_blowup(E0, K1, K2)
            w_top = 1.0 / np.sqrt(E0)
            ref = brute_force_integral(
                lambda w: 2.0 * w**3 / (K1 * w**3 + K2), 0.0, w_top, 200000)
            assert val == pytest.approx(ref, abs=1e-8)

    def test_monotone_decreasing_in_inputs(self):
        base, _ = lower_bound_blowup(2.0, 1.0, 5.0)
        assert lower_bound_blowup(3.0, 1.0, 5.0)[0] < base
        assert lower_bound_blowup(2.0, 1.5, 5.0)[0] < base
        assert lower_bound_blowup(2.0, 1.0, 7.0)[0] < base

    def test_rejects_nonpositive_scriptE0(self):
        with pytest.raises(NonpositiveE0):
            lower_bound_blowup(0.0, 1.0, 1.0)


class TestLowerBoundPipeline:
    def test_unit_ball_power_product(self):
        # F = u^2 v^2 (k = 2 absorbs the cross terms), p = 2, g = 1:
        # scriptE0 = 2 * 4pi/3, frozen constants checked against formulas
        nl = make_power_product(1.0, 2.0, 2.0)
        ball = DomainSpec("ball", 3, radius=1.0)
        res = lower_bound_pipeline(nl, 1.0, 1.0, ball, p=2.0, k1=2.0, k2=2.0,
                                   mode=MODE_A2PRIME)
        assert res.scriptE0 == pytest.approx(2.0 * 4.0 * np.pi / 3.0, rel=1e-14)
        assert res.K1 == pytest.approx(4.0 * 3.0**0.75, rel=1e-14)
        assert res.beta == pytest.approx(3.0 / (8.0 * 3.0**0.25), rel=1e-14)
        assert res.integral_abs_error <= 1e-10
        assert 0.0 < res.t_lower < 0.25
        assert res.smooth_boundary_caveat is None

    def test_box_mesh_reports_caveat(self, box3d):
        nl = make_power_product(1.0, 2.0, 2.0)
        mesh = build_mesh(box3d, 8)
        g1 = np.full(mesh.n_cells, 1.0)
        res = lower_bound_pipeline(nl, g1, g1, mesh, p=2.0, k1=2.0, k2=2.0)
        assert res.smooth_boundary_caveat is not None
        assert res.scriptE0 == pytest.approx(16.0, rel=1e-12)
        assert res.t_lower > 0.0

    def test_2d_domain_rejected(self, box2d):
        nl = make_power_product(1.0, 2.0, 2.0)
        mesh = build_mesh(box2d, 8)
        g1 = np.full(mesh.n_cells, 1.0)
        with pytest.raises(DimensionNot3):
            lower_bound_pipeline(nl, g1, g1, mesh, p=2.0, k1=2.0, k2=2.0)

    def test_hypothesis_failure_propagates(self):
        # u^2 v^3 grows too fast for A2' with k = 2, p = 2
        nl = make_power_product(1.0, 2.0, 3.0)
        ball = DomainSpec("ball", 3, radius=1.0)
        with pytest.raises(HypothesisFailed):
            lower_bound_pipeline(nl, 1.0, 1.0, ball, p=2.0, k1=2.0, k2=2.0)

    def test_absorption_uses_a2a3_or_a2prime(self):
        # f1 = v^3 - u^3, f2 = u^3 - v^3: the source terms are cubic, so
        # u^3 f1 + v^3 f2 <= 2 u^3 v^3 <= u^6 + v^6 and A2' holds at k = 1
        nl = make_absorption(p=3.0, q=3.0, r=3.0, s=3.0, a=1.0, b=1.0)
        ball = DomainSpec("ball", 3, radius=1.0)
        res = lower_bound_pipeline(nl, 2.0, 2.0, ball, p=2.0, k1=1.0, k2=1.0,
                                   mode=MODE_A2PRIME)
        assert res.t_lower > 0.0
        assert all(rep.holds for rep in res.hypothesis_reports)

    def test_larger_initial_data_shrinks_bound(self):
        nl = make_power_product(1.0, 2.0, 2.0)
        ball = DomainSpec("ball", 3, radius=1.0)
        small = lower_bound_pipeline(nl, 1.0, 1.0, ball, p=2.0, k1=2.0, k2=2.0)
        big = lower_bound_pipeline(nl, 2.0, 2.0, ball, p=2.0, k1=2.0, k2=2.0)
        assert big.t_lower < small.t_lower

    def test_unknown_mode_rejected(self):
        nl = make_power_product(1.0, 2.0, 2.0)
        ball = DomainSpec("ball", 3, radius=1.0)
        with pytest.raises(ValueError):
            lower_bound_pipeline(nl, 1.0, 1.0, ball, p=2.0, k1=2.0, k2=2.0,
                                 mode="bogus")
