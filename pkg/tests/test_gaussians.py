import numpy as np
import pytest

from lpinterp.errors import ConfigurationError
from lpinterp.theory.gaussians import lambda_q, mu_tilde, normal_sf, t_s_solve


class TestNormalSf:
    def test_anchors(self):
        assert normal_sf(0.0) == pytest.approx(0.5, abs=1e-15)
        # Phi-bar(1.959964) ~ 0.025 (97.5% quantile)
        assert normal_sf(1.959963984540054) == pytest.approx(0.025, abs=1e-12)

    def test_symmetry(self):
        for t in (0.3, 1.1, 2.7):
            assert normal_sf(t) + normal_sf(-t) == pytest.approx(1.0, abs=1e-14)


class TestTsSolve:
    def test_s_equals_d_is_zero(self):
        assert t_s_solve(7, 7) == 0.0

    def test_five_percent(self):
        # 2 Phi-bar(t) = 0.05 -> the 97.5% normal quantile
        assert t_s_solve(5, 100) == pytest.approx(1.95996, abs=1e-5)

    def test_residual_tolerance(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            d = int(rng.integers(2, 10**6))
            s = int(rng.integers(1, d + 1))
            t = t_s_solve(s, d)
            assert abs(2.0 * normal_sf(t) - s / d) <= 1e-10

    def test_monotone_in_s(self):
        d = 10**4
        ts = [t_s_solve(s, d) for s in (1, 10, 100, 1000, 10**4)]
        assert all(b < a for a, b in zip(ts, ts[1:]))

    def test_expansion_consistency(self):
        # for d/s = e^10, t^2 tracks 2 log(d/s) - log log(d/s) - log pi
        d, s = 22027, 1  # d/s ~ e^10.0003
        t = t_s_solve(s, d)
        ratio = np.log(d / s)
        approx = 2 * ratio - np.log(ratio) - np.log(np.pi)
        assert abs(t**2 - approx) <= 0.15 * approx

    def test_domain(self):
        with pytest.raises(ConfigurationError):
            t_s_solve(5, 4)


class TestLambdaQ:
    def test_d1_half_normal_mean(self):
        est, se = lambda_q(1, 2.0, mc_samples=200_000, seed=1)
        assert abs(est - np.sqrt(2.0 / np.pi)) <= 3 * se

    def test_d2_chi2_mean(self):
        est, se = lambda_q(2, 2.0, mc_samples=200_000, seed=2)
        assert abs(est - np.sqrt(np.pi / 2.0)) <= 3 * se

    def test_scaling_regime(self):
        est, se = lambda_q(10_000, 4.0, mc_samples=400, seed=3)
        ratio = est / (np.sqrt(4.0) * 10_000 ** 0.25)
        assert 0.5 <= ratio <= 2.0

    def test_q_below_two_rejected(self):
        with pytest.raises(ConfigurationError):
            lambda_q(10, 1.5)


class TestMuTilde:
    def test_p2_exactly_one(self):
        est, se = mu_tilde(50, 2.0, 2.0, mc_samples=500, seed=4)
        assert est == pytest.approx(1.0, abs=1e-12) and se <= 1e-12

    def test_d1_is_one(self):
        est, _ = mu_tilde(1, 3.0, 1.5, mc_samples=500, seed=5)
        assert est == pytest.approx(1.0, abs=1e-12)

    def test_conjugacy_enforced(self):
        with pytest.raises(ConfigurationError):
            mu_tilde(10, 3.0, 1.4)

    def test_dual_norm_scaling_window(self):
        d, p, q = 10_000, 1.5, 3.0
        est, _ = mu_tilde(d, q, p, mc_samples=300, seed=6)
        c = 1.0
        expo = 1.0 / q - 1.0 / p
        slack = c * q / np.log(d)
        assert d ** (expo - slack) <= est <= d ** (expo + slack)
