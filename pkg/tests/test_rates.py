import numpy as np
import pytest

from lpinterp.errors import ConfigurationError
from lpinterp.theory.rates import (MINIMAX_EXPONENT, RateQuery, koehler_exponent,
                                   rate_exponent_classification,
                                   rate_exponent_regression, rates_table,
                                   uniform_lower_exponent)


def rq(beta, p, task="regression"):
    return RateQuery(beta=beta, p=p, task=task)


class TestRegressionExponent:
    def test_near_minimax_at_beta2(self):
        assert rate_exponent_regression(rq(2.0, 1.01)) == pytest.approx(-0.97)
        # limit p -> 1+ at beta = 2 reaches the minimax exponent
        assert rate_exponent_regression(rq(2.0, 1.0001)) == pytest.approx(-1.0, abs=1e-3)

    def test_l2_capped_at_zero(self):
        assert rate_exponent_regression(rq(1.5, 2.0)) == 0.0

    def test_n_over_d_branch(self):
        assert rate_exponent_regression(rq(1.5, 1.2)) == pytest.approx(-0.5)

    def test_beta_validation(self):
        with pytest.raises(ConfigurationError):
            rq(1.0, 1.5)


class TestClassificationExponent:
    def test_minimax_regime(self):
        assert rate_exponent_classification(rq(3.0, 1.05, "classification")) == -1.0

    def test_n_over_d_branch(self):
        assert rate_exponent_classification(rq(1.5, 1.1, "classification")) == pytest.approx(-0.5)

    def test_capped(self):
        assert rate_exponent_classification(rq(2.0, 2.0, "classification")) == 0.0


class TestKoehlerExponent:
    def test_quarter_rate(self):
        # q = 8 balances d^{1/q} sqrt(q/n) against 1/d^{1/q} at beta = 2
        assert koehler_exponent(rq(2.0, 8.0 / 7.0)) == pytest.approx(-0.25)

    def test_capped_at_p2(self):
        assert koehler_exponent(rq(2.0, 2.0)) == 0.0

    def test_beta3_q8(self):
        p = 8.0 / 7.0
        branches = [-3.0 / 8.0, -0.5, -2.0, 3.0 / 8.0 - 0.5, 6.0 / 8.0 - 1.0]
        assert koehler_exponent(rq(3.0, p)) == pytest.approx(min(0.0, max(branches)))
        assert koehler_exponent(rq(3.0, p)) >= -0.25


class TestExponentProperties:
    @pytest.mark.parametrize("fn,task", [
        (rate_exponent_regression, "regression"),
        (rate_exponent_classification, "classification"),
        (koehler_exponent, "regression"),
    ])
    def test_nonpositive(self, fn, task):
        for beta in np.linspace(1.1, 4.0, 12):
            for p in np.linspace(1.01, 2.0, 12):
                assert fn(rq(beta, p, task)) <= 0.0

    @pytest.mark.parametrize("fn,task", [
        (rate_exponent_regression, "regression"),
        (rate_exponent_classification, "classification"),
        (koehler_exponent, "regression"),
    ])
    def test_nonincreasing_on_lower_branch(self, fn, task):
        # wherever the n/d branch 1 - beta is active, increasing beta decreases alpha
        for p in (1.02, 1.05, 1.1):
            prev = None
            for beta in np.linspace(1.1, 3.0, 40):
                val = fn(rq(beta, p, task))
                if val == pytest.approx(1.0 - beta, abs=1e-12):
                    if prev is not None:
                        assert val <= prev + 1e-12
                    prev = val

    @pytest.mark.parametrize("fn,task", [
        (rate_exponent_regression, "regression"),
        (rate_exponent_classification, "classification"),
        (koehler_exponent, "regression"),
    ])
    def test_continuity_in_p(self, fn, task):
        ps = np.linspace(1.01, 2.0, 400)
        for beta in (1.5, 2.0, 3.0):
            vals = [fn(rq(beta, p, task)) for p in ps]
            steps = np.abs(np.diff(vals))
            assert steps.max() < 0.05


class TestRatesTable:
    def test_sources_present(self):
        rows = rates_table(["regression", "classification"], [1.5, 2.0], [1.1, 1.5])
        sources = {r["source"] for r in rows}
        assert sources == {"thm1", "thm3", "koehler", "minimax", "uniform_lower"}

    def test_reference_rows(self):
        rows = rates_table(["regression"], [2.0], [1.5])
        minimax = [r for r in rows if r["source"] == "minimax"]
        lower = [r for r in rows if r["source"] == "uniform_lower"]
        assert minimax[0]["alpha"] == MINIMAX_EXPONENT == -1.0
        assert lower[0]["alpha"] == uniform_lower_exponent(2.0) == -1.0
