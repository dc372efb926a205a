import numpy as np
import pytest

from lpinterp.datagen import GroundTruth
from lpinterp.errors import ConfigurationError
from lpinterp.metrics import (bias_variance, directional_error, estimation_error,
                              zero_one_from_directional)

E1 = GroundTruth.one_sparse(3)


class TestEstimationError:
    def test_exact_recovery(self):
        assert estimation_error(E1.w_star, E1) == 0.0

    def test_zero_vector(self):
        assert estimation_error(np.zeros(3), E1) == 1.0

    def test_scaled(self):
        assert estimation_error(2 * E1.w_star, E1) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigurationError):
            estimation_error(np.zeros(4), E1)


class TestDirectionalError:
    def test_positive_scaling_exact_zero(self):
        assert directional_error(5.0 * E1.w_star, E1) == 0.0

    def test_antipodal(self):
        assert directional_error(-E1.w_star, E1) == pytest.approx(4.0)

    def test_orthogonal(self):
        w = np.array([0.0, 1.0, 0.0])
        assert directional_error(w, E1) == pytest.approx(2.0)

    def test_zero_vector_rejected(self):
        with pytest.raises(ConfigurationError):
            directional_error(np.zeros(3), E1)

    def test_scale_invariance_random(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            w = rng.standard_normal(3)
            c = float(rng.uniform(0.01, 100))
            assert directional_error(c * w, E1) == pytest.approx(directional_error(w, E1), abs=1e-12)


class TestZeroOne:
    @pytest.mark.parametrize("r,expected", [(0.0, 0.0), (2.0, 0.5), (4.0, 1.0)])
    def test_anchors(self, r, expected):
        assert zero_one_from_directional(r) == pytest.approx(expected)

    def test_monotone(self):
        grid = np.linspace(0, 4, 200)
        vals = [zero_one_from_directional(r) for r in grid]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_out_of_range(self):
        with pytest.raises(ConfigurationError):
            zero_one_from_directional(4.5)


class TestBiasVariance:
    def test_all_equal_truth(self):
        sols = np.tile(E1.w_star, (5, 1))
        assert bias_variance(sols, E1) == (0.0, 0.0)

    def test_symmetric_pair(self):
        sols = np.stack([np.zeros(3), 2 * E1.w_star])
        bias_sq, var = bias_variance(sols, E1)
        assert bias_sq == pytest.approx(0.0, abs=1e-15)
        assert var == pytest.approx(1.0)

    def test_decomposition_identity(self):
        rng = np.random.default_rng(1)
        sols = rng.standard_normal((20, 3))
        bias_sq, var = bias_variance(sols, E1)
        mean_risk = np.mean([estimation_error(w, E1) for w in sols])
        assert abs(bias_sq + var - mean_risk) <= 1e-12

    def test_needs_two(self):
        with pytest.raises(ConfigurationError):
            bias_variance(E1.w_star[None, :], E1)
