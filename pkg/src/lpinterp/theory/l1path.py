"""Minimum-l2 path gamma(alpha) over the l1 sphere and its concentration.

gamma(alpha) is the least-l2-norm nonnegative vector with l1 mass alpha whose
inner product with a descending magnitude vector h attains h_max.  On each
segment [alpha_s, alpha_{s+1}] the solution is supported on the top s
coordinates and solves the two-constraint equality QP

    min ||g||_2^2   s.t.   <g, h_top> = h_max,   sum g = alpha,

so the path is piecewise linear with breakpoints

    alpha_s = (||h_s||_1 - s h_(s)) h_max / (||h_s||_2^2 - ||h_s||_1 h_(s)).

For s-th breakpoints with d/s large, ||gamma(alpha_s)||_1 / h_max tracks
1/t_s - 2/t_s^3 and ||gamma(alpha_s)||_2^2 / h_max^2 tracks 2/(s t_s^2) where
2 Phi-bar(t_s) = s/d; the relative error of the latter decays only like
1/t_s^2 with an O(5) constant, so the reported ratio approaches 1 slowly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..errors import ConfigurationError
from ..streams import stream
from .gaussians import t_s_solve

__all__ = [
    "L1Path",
    "build_l1_path",
    "gamma_path",
    "gamma_qp_oracle",
    "path_concentration_report",
]


@dataclass
class L1Path:
    h: np.ndarray                 # |N(0,1)| magnitudes sorted descending
    breakpoints: np.ndarray       # alpha_s for s = 2..d
    alpha_max: float              # d h_max / ||h||_1
    t_table: dict = field(default_factory=dict)

    def alpha_s(self, s: int) -> float:
        if not 2 <= s <= len(self.h):
            raise ConfigurationError("breakpoints run over s = 2..d")
        return float(self.breakpoints[s - 2])


def _validate_h(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or h.size < 2:
        raise ConfigurationError("h must be a vector of length >= 2")
    if not (h > 0).all():
        raise ConfigurationError("h must be strictly positive")
    if not (np.diff(h) < 0).all():
        raise ConfigurationError("h must be sorted strictly descending")
    return h


def build_l1_path(h) -> L1Path:
    h = _validate_h(h)
    d = h.size
    c1 = np.cumsum(h)
    c2 = np.cumsum(h * h)
    s = np.arange(2, d + 1)
    bp = (c1[s - 1] - s * h[s - 1]) * h[0] / (c2[s - 1] - c1[s - 1] * h[s - 1])
    return L1Path(h=h, breakpoints=bp, alpha_max=float(d * h[0] / c1[-1]))


def sample_l1_path(d: int, seed: int = 0) -> L1Path:
    """Path built from sorted |N(0,1)| magnitudes."""
    h = np.sort(np.abs(stream(seed, tag="l1path").standard_normal(d)))[::-1]
    return build_l1_path(h)


def _support_qp(h: np.ndarray, s: int, alpha: float) -> np.ndarray:
    """Closed-form equality QP on the top-s support."""
    c1 = float(h[:s].sum())
    c2 = float((h[:s] ** 2).sum())
    det = c2 * s - c1 * c1
    lam = (s * h[0] - c1 * alpha) / det
    mu = (c2 * alpha - c1 * h[0]) / det
    g = np.zeros(h.size)
    g[:s] = lam * h[:s] + mu
    return g


def gamma_path(h, alpha: float, path: L1Path | None = None) -> np.ndarray:
    """Evaluate gamma(alpha) for alpha in [1, alpha_max]."""
    path = path if path is not None else build_l1_path(h)
    h = path.h
    if not 1.0 <= alpha <= path.alpha_max * (1.0 + 1e-12):
        raise ConfigurationError(f"alpha must lie in [1, {path.alpha_max}]")
    # segment [alpha_s, alpha_{s+1}) has support s; breakpoints[j] = alpha_{j+2}
    j = int(np.searchsorted(path.breakpoints, alpha, side="right"))
    s = min(max(j + 1, 2), h.size)
    return _support_qp(h, s, alpha)


def gamma_qp_oracle(h, alpha: float) -> np.ndarray:
    """Brute-force minimizer over all supports (tiny d only).

    Enumerates every support set, solving the two-constraint QP and the
    sum-only QP on each, and returns the feasible candidate of least l2 norm.
    """
    h = _validate_h(h)
    d = h.size
    if d > 12:
        raise ConfigurationError("oracle accepts d <= 12 only")
    hmax = h[0]
    best = None
    best_val = np.inf
    for k in range(1, d + 1):
        for supp in combinations(range(d), k):
            idx = np.array(supp)
            hs = h[idx]
            # candidate A: both constraints active
            c1, c2 = hs.sum(), (hs ** 2).sum()
            det = c2 * k - c1 * c1
            if abs(det) > 1e-14:
                lam = (k * hmax - c1 * alpha) / det
                mu = (c2 * alpha - c1 * hmax) / det
                g = lam * hs + mu
                if (g >= -1e-11).all():
                    val = float(g @ g)
                    if val < best_val:
                        best_val = val
                        best = (idx, np.maximum(g, 0.0))
            # candidate B: only the sum constraint active
            g = np.full(k, alpha / k)
            if g @ hs >= hmax - 1e-11:
                val = float(g @ g)
                if val < best_val:
                    best_val = val
                    best = (idx, g)
    if best is None:
        raise ConfigurationError("no feasible support found")
    out = np.zeros(d)
    out[best[0]] = best[1]
    return out


def path_concentration_report(d: int, s_list, seed: int = 0) -> list[dict]:
    """Concentration ratios of the path at its breakpoints.

    For each s: ratio1 = (||gamma(alpha_s)||_1 / h_max) * t_s and
    ratio2 = (||gamma(alpha_s)||_2^2 / h_max^2) * (s t_s^2 / 2); both tend to
    1 as d/s grows (ratio2 with a visibly slow 1/t_s^2 correction).
    """
    if d < 1000:
        raise ConfigurationError("concentration report needs d >= 1000")
    path = sample_l1_path(d, seed=seed)
    rows = []
    for s in s_list:
        s = int(s)
        if not 2 <= s < d:
            raise ConfigurationError("concentration needs 2 <= s < d (t_s > 0)")
        ts = t_s_solve(s, d)
        path.t_table[s] = ts
        a_s = path.alpha_s(s)
        g = _support_qp(path.h, s, a_s)
        hmax = path.h[0]
        l1 = float(np.abs(g).sum())
        l2sq = float(g @ g)
        rows.append(dict(
            s=s,
            t_s=ts,
            alpha_s=a_s,
            ratio1=(l1 / hmax) * ts,
            ratio2=(l2sq / hmax ** 2) * (s * ts ** 2 / 2.0),
        ))
    return rows
