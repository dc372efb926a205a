import numpy as np
import pytest
from scipy.stats import norm

from lpinterp.errors import ConfigurationError
from lpinterp.streams import stream
from lpinterp.theory.gaussians import t_s_solve
from lpinterp.theory.l1path import (build_l1_path, gamma_path, gamma_qp_oracle,
                                    path_concentration_report, sample_l1_path)

H321 = np.array([3.0, 2.0, 1.0])


class TestBreakpoints:
    def test_hand_computed(self):
        path = build_l1_path(H321)
        # alpha_2 = (5 - 2*2)*3 / (13 - 5*2) = 1; alpha_3 = (6 - 3)*3 / (14 - 6) = 9/8
        assert path.alpha_s(2) == pytest.approx(1.0)
        assert path.alpha_s(3) == pytest.approx(9.0 / 8.0)
        assert path.alpha_max == pytest.approx(3 * 3.0 / 6.0)

    def test_alpha2_is_one_generally(self):
        for seed in range(5):
            path = sample_l1_path(50, seed=seed)
            assert path.alpha_s(2) == pytest.approx(1.0, abs=1e-9)

    def test_nondecreasing(self):
        path = sample_l1_path(2000, seed=1)
        assert (np.diff(path.breakpoints) > -1e-12).all()

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            build_l1_path(np.array([1.0, 2.0, 3.0]))  # ascending
        with pytest.raises(ConfigurationError):
            build_l1_path(np.array([2.0, -1.0]))


class TestGammaPath:
    def test_alpha_one_is_e1(self):
        g = gamma_path(H321, 1.0)
        assert np.allclose(g, [1.0, 0.0, 0.0], atol=1e-12)

    def test_invariants_along_path(self):
        path = sample_l1_path(300, seed=2)
        for alpha in np.linspace(1.0, path.alpha_max, 25):
            g = gamma_path(path.h, alpha, path=path)
            assert abs(np.abs(g).sum() - alpha) <= 1e-9
            assert abs(g @ path.h - path.h[0]) <= 1e-9
            assert g.min() >= -1e-10

    def test_out_of_range(self):
        with pytest.raises(ConfigurationError):
            gamma_path(H321, 0.5)
        with pytest.raises(ConfigurationError):
            gamma_path(H321, 2.0)

    def test_matches_exhaustive_qp_oracle(self):
        rng = stream(3, tag="qp6")
        for trial in range(5):
            h = np.sort(np.abs(rng.standard_normal(6)))[::-1]
            path = build_l1_path(h)
            for alpha in np.linspace(1.0, path.alpha_max, 7)[1:-1]:
                fast = gamma_path(h, alpha, path=path)
                brute = gamma_qp_oracle(h, alpha)
                assert np.linalg.norm(fast - brute) <= 1e-8

    def test_uniform_at_alpha_max(self):
        path = sample_l1_path(40, seed=4)
        g = gamma_path(path.h, path.alpha_max, path=path)
        assert np.allclose(g, path.alpha_max / 40, atol=1e-9)

    def test_l2_norm_piecewise_convex_decreasing_ratio(self):
        # ||gamma(alpha)||_2^2 / alpha^2 decreases along the path
        path = sample_l1_path(200, seed=5)
        alphas = np.linspace(1.0, path.alpha_max, 30)
        ratios = [np.sum(gamma_path(path.h, a, path=path) ** 2) / a**2 for a in alphas]
        assert all(b <= a + 1e-12 for a, b in zip(ratios, ratios[1:]))


class TestConcentrationReport:
    def test_s_equals_d_rejected(self):
        with pytest.raises(ConfigurationError):
            path_concentration_report(1000, [1000])

    def test_small_d_rejected(self):
        with pytest.raises(ConfigurationError):
            path_concentration_report(500, [20])

    def test_ratio1_window_and_ratio2_value(self):
        rows = path_concentration_report(100_000, [200], seed=0)
        row = rows[0]
        assert 0.8 <= row["ratio1"] <= 1.2
        # ratio2 carries a 1/t^2-order correction with an O(5) constant; at
        # t ~ 3.09 the exact truncated-moment prediction is ~0.69
        t = row["t_s"]
        m2 = 1.0 + t**2 - t * norm.pdf(t) / norm.sf(t)
        predicted = m2 * t**2 / 2.0
        assert row["ratio2"] == pytest.approx(predicted, abs=0.08)
        assert 0.0 < row["ratio2"] < 1.2

    def test_ratio2_improves_with_separation(self):
        # larger d/s (larger t_s) pulls ratio2 toward 1
        rows = path_concentration_report(200_000, [2000, 200, 20], seed=1)
        r2 = [r["ratio2"] for r in rows]
        assert r2[0] < r2[1] < r2[2]

    def test_t_table_filled(self):
        rows = path_concentration_report(1000, [5, 50], seed=2)
        assert {r["s"] for r in rows} == {5, 50}
        for r in rows:
            assert r["t_s"] == pytest.approx(t_s_solve(r["s"], 1000))
