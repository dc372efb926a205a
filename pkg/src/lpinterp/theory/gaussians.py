"""Gaussian tail quantiles and Monte-Carlo moments of lq norms.

normal_sf delegates to scipy's erfc, accurate to ~1e-15 relative error over
the range used here; t_s_solve inverts 2 * normal_sf(t) = s/d by bisection.
lambda_q and mu_tilde are plain Monte-Carlo estimators with standard errors,
chunked so d * mc_samples never materializes at once.
"""

from __future__ import annotations

import numpy as np
from scipy.special import erfc

from ..errors import ConfigurationError
from ..streams import stream

__all__ = ["normal_sf", "t_s_solve", "lambda_q", "mu_tilde"]

_CHUNK_BUDGET = 20_000_000  # floats per sampling chunk


def normal_sf(t) -> float:
    """Complementary standard-normal CDF, Phi-bar(t) = erfc(t / sqrt 2) / 2."""
    return 0.5 * erfc(np.asarray(t, dtype=float) / np.sqrt(2.0))


def t_s_solve(s: int, d: int) -> float:
    """The unique t >= 0 with 2 * Phi-bar(t) = s/d, bisected to 1e-12 in t."""
    if not 1 <= s <= d:
        raise ConfigurationError("need 1 <= s <= d")
    if s == d:
        return 0.0
    target = s / d
    lo, hi = 0.0, 50.0
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if 2.0 * normal_sf(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _chunks(mc_samples: int, d: int):
    per = max(1, min(mc_samples, _CHUNK_BUDGET // max(d, 1)))
    done = 0
    while done < mc_samples:
        take = min(per, mc_samples - done)
        done += take
        yield take


def lambda_q(d: int, q: float, mc_samples: int = 2000, seed: int = 0) -> tuple[float, float]:
    """Monte-Carlo estimate of E ||H||_q for H ~ N(0, I_d), with standard error.

    The sqrt(q) d^(1/q) scaling is the informative regime q <= log d; larger
    q is accepted (the estimator stays exact) but approaches the max norm.
    """
    if q < 2:
        raise ConfigurationError("lambda_q requires q >= 2")
    if d < 1 or mc_samples < 2:
        raise ConfigurationError("need d >= 1 and mc_samples >= 2")
    rng = stream(seed, tag="lambda_q")
    total = 0.0
    total_sq = 0.0
    for take in _chunks(mc_samples, d):
        H = rng.standard_normal((take, d))
        vals = np.sum(np.abs(H) ** q, axis=1) ** (1.0 / q)
        total += vals.sum()
        total_sq += (vals ** 2).sum()
    mean = total / mc_samples
    var = max(total_sq / mc_samples - mean ** 2, 0.0) * mc_samples / (mc_samples - 1)
    return float(mean), float(np.sqrt(var / mc_samples))


def mu_tilde(d: int, q: float, p: float, mc_samples: int = 2000,
             seed: int = 0) -> tuple[float, float]:
    """Monte-Carlo estimate of E (||H||_{2q/p} / ||H||_q)^{2q/p} with stderr.

    The sampled quantity is the squared l2 norm of the lq-norm subgradient at
    H (note 2q/p = 2q - 2 for conjugate p, q); it equals 1 identically when
    p = q = 2 or d = 1.
    """
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-9:
        raise ConfigurationError("p and q must be conjugate exponents")
    if d < 1 or mc_samples < 2:
        raise ConfigurationError("need d >= 1 and mc_samples >= 2")
    r = 2.0 * q / p
    rng = stream(seed, tag="mu_tilde")
    total = 0.0
    total_sq = 0.0
    for take in _chunks(mc_samples, d):
        H = np.abs(rng.standard_normal((take, d)))
        num = np.sum(H ** r, axis=1) ** (1.0 / r)
        den = np.sum(H ** q, axis=1) ** (1.0 / q)
        vals = (num / den) ** r
        total += vals.sum()
        total_sq += (vals ** 2).sum()
    mean = total / mc_samples
    var = max(total_sq / mc_samples - mean ** 2, 0.0) * mc_samples / (mc_samples - 1)
    return float(mean), float(np.sqrt(var / mc_samples))
