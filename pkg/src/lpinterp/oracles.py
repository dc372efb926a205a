"""Slow independent reference solvers for tiny instances.

These deliberately share no machinery with `lpinterp.solvers`: the
interpolation oracle runs multi-restart quasi-Newton descent on the
null-space parametrization w = w0 + N z (always feasible), and the margin
oracle runs an exterior quadratic-penalty method with doubling weight.
Both are restricted to tiny instances and a minimum search budget is
enforced so a weak run cannot masquerade as verification.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla
from scipy.optimize import minimize

from .errors import ConfigurationError
from .solvers import Solution, _lp_objective, kkt_residual_interpolation, kkt_residual_margin
from .streams import stream

__all__ = ["oracle_min_lp_norm", "oracle_max_lp_margin", "dual_qp_margin_p2"]

_MAX_N = 8
_MAX_D = 12
_MIN_BUDGET = 1_000_000
_RESTARTS = 10


def _check_tiny(X, budget):
    n, d = X.shape
    if n > _MAX_N or d > _MAX_D:
        raise ConfigurationError(f"oracle accepts only tiny instances (n <= {_MAX_N}, d <= {_MAX_D})")
    if budget < _MIN_BUDGET:
        raise ConfigurationError(f"oracle budget below the enforced minimum {_MIN_BUDGET}")


def oracle_min_lp_norm(X: np.ndarray, y: np.ndarray, p: float,
                       budget: int = _MIN_BUDGET, seed: int = 0) -> Solution:
    """Reference min-lp-norm interpolator: restarted descent over the null space.

    The parametrization w = w0 + N z (w0 the least-l2 interpolator, N an
    orthonormal null-space basis) keeps every iterate exactly feasible; the
    best objective over 10 restarts is returned.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_tiny(X, budget)
    if not 1.0 < p <= 2.0:
        raise ConfigurationError("oracle covers p in (1, 2]")
    N = sla.null_space(X)
    w0 = X.T @ np.linalg.solve(X @ X.T, y)
    k = N.shape[1]
    rng = stream(seed, tag="oracle-interp")

    def fg(z):
        w = w0 + N @ z
        f = float(np.sum(np.abs(w) ** p))
        g = N.T @ (p * np.sign(w) * np.abs(w) ** (p - 1.0))
        return f, g

    best_f, best_z, used = np.inf, np.zeros(k), 0
    per = max(budget // _RESTARTS, 1)
    for r in range(_RESTARTS):
        z0 = np.zeros(k) if r == 0 else 0.5 * rng.standard_normal(k)
        if k == 0:
            best_f, best_z = fg(z0)[0], z0
            break
        res = minimize(fg, z0, jac=True, method="L-BFGS-B",
                       options=dict(maxfun=per, maxiter=per, ftol=1e-18,
                                    gtol=1e-14, maxls=100))
        used += res.nfev
        if res.fun < best_f:
            best_f, best_z = res.fun, res.x
    w = w0 + N @ best_z
    kkt = kkt_residual_interpolation(X, w, p)
    feas = float(np.linalg.norm(X @ w - y) / max(1.0, np.linalg.norm(y)))
    return Solution(w, _lp_objective(w, p), kkt, feas, used, True)


def oracle_max_lp_margin(X: np.ndarray, y: np.ndarray, p: float,
                         budget: int = _MIN_BUDGET, seed: int = 0) -> Solution:
    """Reference hard-margin solver: exterior penalty with doubling weight.

    Minimizes ||w||_p^p + rho * sum (1 - y_i <x_i, w>)_+^2 for rho = 1, 2, 4,
    ... 2^40, each stage solved tightly; the final iterate is rescaled onto
    the margin boundary (smallest margin exactly 1).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_tiny(X, budget)
    if not 1.0 < p <= 2.0:
        raise ConfigurationError("oracle covers p in (1, 2]")
    A = X * y[:, None]
    n, d = A.shape
    n_stages = 41
    per = max(budget // n_stages, 1)

    def fg(w, rho):
        s = 1.0 - A @ w
        pos = s > 0
        f = float(np.sum(np.abs(w) ** p) + rho * np.sum(s[pos] ** 2))
        g = p * np.sign(w) * np.abs(w) ** (p - 1.0)
        if pos.any():
            g = g - 2.0 * rho * (A[pos].T @ s[pos])
        return f, g

    w = np.full(d, 0.1)
    used = 0
    rho = 1.0
    for _ in range(n_stages):
        res = minimize(fg, w, args=(rho,), jac=True, method="L-BFGS-B",
                       options=dict(maxfun=per, maxiter=per, ftol=1e-18,
                                    gtol=1e-14, maxls=100))
        w = res.x
        used += res.nfev
        rho *= 2.0
    m = (A @ w).min()
    if m <= 0:
        raise ConfigurationError("penalty method found no separating direction")
    w = w / m
    kkt = kkt_residual_margin(X, y, w, p)
    feas = float(max(0.0, 1.0 - (A @ w).min()))
    return Solution(w, _lp_objective(w, p), kkt, feas, used, True)


def dual_qp_margin_p2(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Textbook p = 2 hard-margin solution via the box-constrained dual QP.

    max_{a >= 0} <1, a> - 1/2 ||A^T a||_2^2, primal w = A^T a scaled onto the
    margin boundary.  Used as a third route in oracle-equivalence tests.
    """
    A = np.asarray(X, dtype=float) * np.asarray(y, dtype=float)[:, None]
    G = A @ A.T
    n = A.shape[0]

    def fg(a):
        return float(0.5 * a @ G @ a - a.sum()), G @ a - 1.0

    res = minimize(fg, np.ones(n), jac=True, method="L-BFGS-B",
                   bounds=[(0.0, None)] * n,
                   options=dict(maxfun=100_000, ftol=1e-18, gtol=1e-14))
    w = A.T @ res.x
    return w / (A @ w).min()
