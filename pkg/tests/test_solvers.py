import numpy as np
import pytest
import scipy.linalg as sla

from lpinterp.errors import ConfigurationError, DegenerateDesignError, SeparabilityError
from lpinterp.solvers import (SolverOptions, effective_p_for_classification,
                              kkt_residual_interpolation, kkt_residual_margin,
                              least_norm_l2, solve_max_lp_margin, solve_min_lp_norm)
from lpinterp.streams import stream

PS = [1.1, 1.3, 1.5, 1.7, 2.0]


class TestOptions:
    def test_defaults(self):
        o = SolverOptions()
        assert o.tol_kkt == 1e-8 and o.tol_feas == 1e-10 and o.max_iters == 50_000

    @pytest.mark.parametrize("kw", [dict(tol_kkt=0.0), dict(barrier_shrink=1.0),
                                    dict(barrier_shrink=0.0), dict(max_iters=0)])
    def test_validation(self, kw):
        with pytest.raises(ConfigurationError):
            SolverOptions(**kw)


class TestMinLpNorm:
    @pytest.mark.parametrize("p", [1.0] + PS)
    def test_square_system(self, p):
        X = np.array([[1.0, 0.0], [0.0, 1.0]])
        sol = solve_min_lp_norm(X, np.array([3.0, 4.0]), p)
        assert np.allclose(sol.w, [3.0, 4.0], atol=1e-8)
        assert sol.converged

    @pytest.mark.parametrize("p", PS)
    def test_symmetric_constraint(self, p):
        sol = solve_min_lp_norm(np.array([[1.0, 1.0]]), np.array([1.0]), p)
        assert np.allclose(sol.w, [0.5, 0.5], atol=1e-9)

    def test_closed_form_kkt_example(self):
        # stationarity sqrt(w1) = 2 sqrt(w2) with 2 w1 + w2 = 1 gives (4/9, 1/9)
        sol = solve_min_lp_norm(np.array([[2.0, 1.0]]), np.array([1.0]), 1.5)
        assert np.allclose(sol.w, [4.0 / 9.0, 1.0 / 9.0], atol=1e-10)
        assert sol.kkt_residual <= 1e-8 and sol.feasibility_residual <= 1e-10

    def test_p2_equals_least_norm(self):
        rng = stream(0, tag="p2")
        X = rng.standard_normal((20, 60))
        y = rng.standard_normal(20)
        sol = solve_min_lp_norm(X, y, 2.0)
        assert np.linalg.norm(sol.w - least_norm_l2(X, y)) <= 1e-12

    def test_rank_deficient_rejected(self):
        X = np.array([[1.0, 2.0, 0.0], [2.0, 4.0, 0.0]])
        with pytest.raises(DegenerateDesignError):
            solve_min_lp_norm(X, np.array([1.0, 2.0]), 1.5)

    def test_n_above_d_rejected(self):
        with pytest.raises(DegenerateDesignError):
            solve_min_lp_norm(np.ones((3, 2)), np.ones(3), 1.5)

    def test_p_out_of_range(self):
        with pytest.raises(ConfigurationError):
            solve_min_lp_norm(np.eye(2), np.ones(2), 2.5)

    def test_p1_exact_recovery(self):
        rng = stream(1, tag="bp")
        X = rng.standard_normal((20, 80))
        y = X[:, 0].copy()
        sol = solve_min_lp_norm(X, y, 1.0)
        w_true = np.zeros(80)
        w_true[0] = 1.0
        assert np.linalg.norm(sol.w - w_true) ** 2 <= 1e-12
        assert sol.converged

    @pytest.mark.parametrize("p", [1.05, 1.2, 1.5])
    def test_residuals_at_scale(self, p):
        rng = stream(2, tag=f"scale{p}")
        X = rng.standard_normal((40, 400))
        y = X[:, 0] + 0.5 * rng.standard_normal(40)
        sol = solve_min_lp_norm(X, y, p)
        assert sol.converged
        assert sol.kkt_residual <= 1e-8
        assert sol.feasibility_residual <= 1e-10

    def test_scale_equivariance(self):
        rng = stream(3, tag="equiv")
        X = rng.standard_normal((10, 30))
        y = rng.standard_normal(10)
        c = 3.7
        a = solve_min_lp_norm(X, y, 1.3).w
        b = solve_min_lp_norm(X, c * y, 1.3).w
        assert np.linalg.norm(b - c * a) / np.linalg.norm(c * a) <= 1e-6

    def test_permutation_equivariance(self):
        rng = stream(4, tag="perm")
        X = rng.standard_normal((8, 20))
        y = rng.standard_normal(8)
        perm = rng.permutation(20)
        a = solve_min_lp_norm(X, y, 1.4).w
        b = solve_min_lp_norm(X[:, perm], y, 1.4).w
        assert np.allclose(b, a[perm], atol=1e-8)

    def test_norm_minimality_over_null_space(self):
        rng = stream(5, tag="mono")
        X = rng.standard_normal((6, 15))
        y = rng.standard_normal(6)
        p = 1.5
        sol = solve_min_lp_norm(X, y, p)
        N = sla.null_space(X)
        obj = np.sum(np.abs(sol.w) ** p)
        for _ in range(50):
            v = sol.w + N @ rng.standard_normal(N.shape[1])
            assert np.sum(np.abs(v) ** p) >= obj - 1e-9

    def test_zero_rhs(self):
        rng = stream(6, tag="zero")
        X = rng.standard_normal((4, 9))
        sol = solve_min_lp_norm(X, np.zeros(4), 1.5)
        assert not sol.w.any() and sol.converged


class TestKktCertificate:
    def test_optimal_point_certified(self):
        sol = solve_min_lp_norm(np.array([[2.0, 1.0]]), np.array([1.0]), 1.5)
        assert kkt_residual_interpolation(np.array([[2.0, 1.0]]), sol.w, 1.5) <= 1e-8

    def test_l2_solution_not_lp_optimal(self):
        # the least-norm l2 point generically fails the p = 1.5 certificate
        rng = stream(7, tag="kkt")
        X = rng.standard_normal((10, 25))
        y = rng.standard_normal(10)
        w2 = least_norm_l2(X, y)
        assert kkt_residual_interpolation(X, w2, 1.5) > 1e-3

    def test_square_system_zero_residual(self):
        X = stream(8, tag="sq").standard_normal((5, 5))
        w = np.linalg.solve(X, np.ones(5))
        assert kkt_residual_interpolation(X, w, 1.5) <= 1e-10


class TestMaxLpMargin:
    @pytest.mark.parametrize("p", PS)
    def test_single_sample_unit(self, p):
        sol = solve_max_lp_margin(np.array([[1.0, 0.0, 0.0]]), np.array([1.0]), p)
        assert np.allclose(sol.w, [1.0, 0.0, 0.0], atol=1e-8)
        assert sol.objective == pytest.approx(1.0, abs=1e-8)

    def test_two_point_symmetric(self):
        X = np.array([[1.0, 1.0], [-1.0, -1.0]])
        sol = solve_max_lp_margin(X, np.array([1.0, -1.0]), 2.0)
        assert np.allclose(sol.w, [0.5, 0.5], atol=1e-9)

    def test_active_single_sample_matches_interpolation(self):
        sol = solve_max_lp_margin(np.array([[2.0, 1.0]]), np.array([1.0]), 1.5)
        assert np.allclose(sol.w, [4.0 / 9.0, 1.0 / 9.0], atol=1e-8)

    def test_min_margin_exactly_one(self):
        rng = stream(9, tag="margin")
        X = rng.standard_normal((15, 40))
        y = np.where(rng.random(15) < 0.5, 1.0, -1.0)
        sol = solve_max_lp_margin(X, y, 1.3)
        margins = y * (X @ sol.w)
        assert margins.min() >= 1.0 - 1e-10
        assert margins.min() == pytest.approx(1.0, abs=1e-8)

    def test_labels_validated(self):
        with pytest.raises(ConfigurationError):
            solve_max_lp_margin(np.eye(2), np.array([1.0, 0.5]), 1.5)

    def test_p_one_rejected_with_pointer(self):
        with pytest.raises(ConfigurationError):
            solve_max_lp_margin(np.eye(2), np.array([1.0, -1.0]), 1.0)

    def test_non_separable_raises(self):
        X = np.array([[1.0, 0.0], [1.0, 0.0]])
        y = np.array([1.0, -1.0])
        with pytest.raises(SeparabilityError):
            solve_max_lp_margin(X, y, 1.5)

    def test_kkt_margin_certificate(self):
        rng = stream(10, tag="mkkt")
        X = rng.standard_normal((12, 30))
        y = np.where(rng.random(12) < 0.5, 1.0, -1.0)
        sol = solve_max_lp_margin(X, y, 1.5)
        assert sol.converged
        assert kkt_residual_margin(X, y, sol.w, 1.5) <= 1e-8


class TestEffectiveP:
    def test_identity_above_one(self):
        assert effective_p_for_classification(1.3, 100) == (1.3, False)

    def test_surrogate_at_one(self):
        p_eff, flag = effective_p_for_classification(1.0, 5000)
        assert flag and p_eff == pytest.approx(1.0 + 3.0 / np.log(5000))

    def test_capped_for_tiny_d(self):
        p_eff, flag = effective_p_for_classification(1.0, 3)
        assert flag and p_eff == 2.0
