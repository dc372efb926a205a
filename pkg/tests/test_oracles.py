import numpy as np
import pytest

from lpinterp.errors import ConfigurationError
from lpinterp.oracles import dual_qp_margin_p2, oracle_max_lp_margin, oracle_min_lp_norm
from lpinterp.solvers import least_norm_l2, solve_max_lp_margin, solve_min_lp_norm
from lpinterp.streams import stream


class TestMinNormOracle:
    def test_budget_minimum_enforced(self):
        with pytest.raises(ConfigurationError):
            oracle_min_lp_norm(np.eye(2), np.ones(2), 1.5, budget=10_000)

    def test_tiny_only(self):
        X = stream(0, tag="big").standard_normal((9, 13))
        with pytest.raises(ConfigurationError):
            oracle_min_lp_norm(X, np.ones(9), 1.5)

    def test_square_system(self):
        sol = oracle_min_lp_norm(np.eye(2), np.array([3.0, 4.0]), 1.5)
        assert np.allclose(sol.w, [3.0, 4.0], atol=1e-8)

    def test_agrees_with_main_solver(self):
        sol = oracle_min_lp_norm(np.array([[2.0, 1.0]]), np.array([1.0]), 1.5)
        main = solve_min_lp_norm(np.array([[2.0, 1.0]]), np.array([1.0]), 1.5)
        assert np.linalg.norm(sol.w - main.w) <= 1e-5

    def test_p2_matches_pseudoinverse(self):
        rng = stream(1, tag="o2")
        X = rng.standard_normal((4, 9))
        y = rng.standard_normal(4)
        sol = oracle_min_lp_norm(X, y, 2.0)
        assert np.linalg.norm(sol.w - least_norm_l2(X, y)) <= 1e-6


class TestMaxMarginOracle:
    def test_symmetric_two_point(self):
        X = np.array([[1.0, 1.0], [-1.0, -1.0]])
        y = np.array([1.0, -1.0])
        sol = oracle_max_lp_margin(X, y, 2.0)
        main = solve_max_lp_margin(X, y, 2.0)
        assert np.linalg.norm(sol.w - main.w) <= 1e-5

    def test_single_sample_objective_one(self):
        sol = oracle_max_lp_margin(np.array([[1.0, 0.0, 0.0]]), np.array([1.0]), 1.4)
        assert sol.objective == pytest.approx(1.0, abs=1e-6)

    def test_matches_dual_qp_at_p2(self):
        rng = stream(2, tag="qp")
        hits = 0
        for _ in range(5):
            X = rng.standard_normal((4, 6))
            y = np.where(rng.random(4) < 0.5, 1.0, -1.0)
            w_oracle = oracle_max_lp_margin(X, y, 2.0).w
            w_qp = dual_qp_margin_p2(X, y)
            assert np.linalg.norm(w_oracle - w_qp) <= 1e-4
            hits += 1
        assert hits == 5


@pytest.mark.parametrize("p", [1.1, 1.5, 2.0])
def test_oracle_equivalence_sample(p):
    # small slice of the acceptance sweep: objectives agree to 1e-5 relative
    rng = stream(3, tag=f"equiv{p}")
    for trial in range(10):
        n = int(rng.integers(1, 6))
        d = int(rng.integers(n + 1, 9))
        X = rng.standard_normal((n, d))
        y = rng.standard_normal(n)
        main = solve_min_lp_norm(X, y, p)
        ref = oracle_min_lp_norm(X, y, p, seed=trial)
        assert abs(main.objective - ref.objective) / ref.objective <= 1e-5
