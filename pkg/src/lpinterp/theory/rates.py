"""Closed-form polynomial rate exponents in the regime d = n^beta, beta > 1.

Each function returns the n-exponent alpha of the corresponding risk upper
bound O~(n^alpha), with all logarithmic factors, universal constants and
sigma/q prefactors dropped and the result capped at 0 (a non-vanishing
bound).  These are exactly the quantities plotted by the rate-curve figures.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError

__all__ = [
    "RateQuery",
    "rate_exponent_regression",
    "rate_exponent_classification",
    "koehler_exponent",
    "rates_table",
    "MINIMAX_EXPONENT",
    "uniform_lower_exponent",
]

MINIMAX_EXPONENT = -1.0


@dataclass(frozen=True)
class RateQuery:
    beta: float
    p: float
    task: str = "regression"

    def __post_init__(self):
        if not self.beta > 1.0:
            raise ConfigurationError("rate queries require beta > 1")
        if not 1.0 < self.p <= 2.0:
            raise ConfigurationError("rate queries require p in (1, 2]")
        if self.task not in ("regression", "classification"):
            raise ConfigurationError("task must be regression or classification")

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)


def rate_exponent_regression(qr: RateQuery) -> float:
    """min(0, max(beta(2p-2) - p, 1 - beta)): signal-alignment vs n/d branch."""
    if qr.task != "regression":
        raise ConfigurationError("regression exponent queried with a classification task")
    b, p = qr.beta, qr.p
    return min(0.0, max(b * (2.0 * p - 2.0) - p, 1.0 - b))


def rate_exponent_classification(qr: RateQuery) -> float:
    """min(0, max(beta(3p-3) - 1.5p, 1 - beta, -1))."""
    if qr.task != "classification":
        raise ConfigurationError("classification exponent queried with a regression task")
    b, p = qr.beta, qr.p
    return min(0.0, max(b * (3.0 * p - 3.0) - 1.5 * p, 1.0 - b, -1.0))


def koehler_exponent(qr: RateQuery) -> float:
    """Exponent of the norm-based uniform-convergence bound (comparison curves).

    The five additive terms of that bound have n-exponents
    {-beta/q, -1/2, 1-beta, beta/q - 1/2, 2 beta/q - 1}; the bound decays at
    the slowest of them, capped at 0.
    """
    if qr.task != "regression":
        raise ConfigurationError("the comparison bound applies to regression")
    b, q = qr.beta, qr.q
    branches = (-b / q, -0.5, 1.0 - b, b / q - 0.5, 2.0 * b / q - 1.0)
    return min(0.0, max(branches))


def uniform_lower_exponent(beta: float) -> float:
    """n-exponent of the n/d lower bound holding for every interpolator."""
    if not beta > 1.0:
        raise ConfigurationError("beta > 1 required")
    return 1.0 - beta


def rates_table(tasks, betas, ps) -> list[dict]:
    """Rows for the `theory rates` CSV: task, beta, p, alpha, source."""
    rows = []
    for task in tasks:
        for beta in betas:
            for p in ps:
                qr = RateQuery(beta=beta, p=p, task=task)
                if task == "regression":
                    rows.append(dict(task=task, beta=beta, p=p,
                                     alpha=rate_exponent_regression(qr), source="thm1"))
                    rows.append(dict(task=task, beta=beta, p=p,
                                     alpha=koehler_exponent(qr), source="koehler"))
                else:
                    rows.append(dict(task=task, beta=beta, p=p,
                                     alpha=rate_exponent_classification(qr), source="thm3"))
            rows.append(dict(task=task, beta=beta, p=None,
                             alpha=MINIMAX_EXPONENT, source="minimax"))
            rows.append(dict(task=task, beta=beta, p=None,
                             alpha=uniform_lower_exponent(beta), source="uniform_lower"))
    return rows
