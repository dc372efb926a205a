"""Error functionals and the bias-variance decomposition over repeated fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datagen import GroundTruth
from .errors import ConfigurationError

__all__ = [
    "TrialMetrics",
    "estimation_error",
    "directional_error",
    "zero_one_from_directional",
    "bias_variance",
]


@dataclass
class TrialMetrics:
    norm_p: float
    kkt_residual: float
    risk_regression: float | None = None
    risk_directional: float | None = None
    zero_one: float | None = None

    def __post_init__(self):
        if self.risk_directional is not None and not 0.0 <= self.risk_directional <= 4.0 + 1e-12:
            raise ConfigurationError("directional risk must lie in [0, 4]")
        if self.zero_one is not None and not 0.0 <= self.zero_one <= 1.0 + 1e-12:
            raise ConfigurationError("0-1 error must lie in [0, 1]")


def _w_star(w_star) -> np.ndarray:
    return w_star.w_star if isinstance(w_star, GroundTruth) else np.asarray(w_star, dtype=float)


def estimation_error(w: np.ndarray, w_star) -> float:
    """Squared l2 estimation error ||w - w*||_2^2."""
    ws = _w_star(w_star)
    w = np.asarray(w, dtype=float)
    if w.shape != ws.shape:
        raise ConfigurationError("dimension mismatch")
    return float(np.sum((w - ws) ** 2))


def directional_error(w: np.ndarray, w_star) -> float:
    """|| w/||w||_2 - w* ||_2^2; invariant under positive rescaling of w."""
    ws = _w_star(w_star)
    w = np.asarray(w, dtype=float)
    if w.shape != ws.shape:
        raise ConfigurationError("dimension mismatch")
    nw = np.linalg.norm(w)
    if nw == 0.0:
        raise ConfigurationError("directional error undefined for the zero vector")
    return float(np.sum((w / nw - ws) ** 2))


def zero_one_from_directional(r: float) -> float:
    """Expected noiseless 0-1 error arccos(1 - r/2) / pi for r in [0, 4].

    Uses the exact arccos relation rather than the small-angle approximation.
    """
    if not 0.0 <= r <= 4.0:
        raise ConfigurationError("directional risk must lie in [0, 4]")
    return float(np.arccos(np.clip(1.0 - r / 2.0, -1.0, 1.0)) / np.pi)


def bias_variance(solutions, w_star) -> tuple[float, float]:
    """(bias^2, variance) of the fitted vectors around w*.

    bias^2 = ||mean_t w_t - w*||^2 and variance = mean_t ||w_t - mean w||^2,
    so bias^2 + variance = mean_t ||w_t - w*||^2 exactly.
    """
    ws = _w_star(w_star)
    W = np.asarray(solutions, dtype=float)
    if W.ndim != 2 or W.shape[0] < 2:
        raise ConfigurationError("need at least two solutions of equal dimension")
    if W.shape[1] != ws.shape[0]:
        raise ConfigurationError("dimension mismatch")
    center = W.mean(axis=0)
    bias_sq = float(np.sum((center - ws) ** 2))
    variance = float(np.mean(np.sum((W - center) ** 2, axis=1)))
    return bias_sq, variance
