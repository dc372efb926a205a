"""Min-lp-norm interpolation and hard-margin lp-SVM solvers with KKT certificates.

Both solvers work on a smooth n-dimensional dual of the d-dimensional primal
(n <= d throughout), recovering the primal iterate through the conjugate map

    w(v) = sign(v) * (|v| / p)^(q-1),      v = X^T lambda,   1/p + 1/q = 1,

which satisfies the stationarity condition  grad ||w||_p^p = X^T (p lambda)
exactly by construction.  Consequently the reported KKT residuals sit at
rounding level and the expensive part of each iteration is one n x n solve.

* interpolation (p in (1,2]): Newton on
      Psi(lambda) = p^(1-q)/q * ||X^T lambda||_q^q - <lambda, y>,
  whose gradient is X w(lambda) - y, with geometric continuation in q from 2
  (warm starts keep the Newton count low for p near 1).
* interpolation (p = 1): ADMM basis-pursuit split, affine projection plus
  soft-thresholding, stopped at primal/dual residuals <= 1e-8.
* margin (p in (1,2]): log-barrier path following on the dual
      max <1, alpha>  s.t.  ||A^T alpha||_q <= 1,  alpha >= 0,   A = diag(y) X,
  with Newton inner steps; the primal direction is recovered from the
  q-norm-ball subgradient and rescaled so the smallest margin equals 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.optimize import nnls

from .errors import ConfigurationError, DegenerateDesignError, SeparabilityError

__all__ = [
    "SolverOptions",
    "Solution",
    "solve_min_lp_norm",
    "solve_max_lp_margin",
    "kkt_residual_interpolation",
    "kkt_residual_margin",
    "effective_p_for_classification",
    "least_norm_l2",
]


@dataclass(frozen=True)
class SolverOptions:
    tol_kkt: float = 1e-8
    tol_feas: float = 1e-10
    max_iters: int = 50_000
    barrier_mu0: float = 1.0
    barrier_shrink: float = 0.2
    admm_rho: float = 1.0

    def __post_init__(self):
        if min(self.tol_kkt, self.tol_feas, self.barrier_mu0, self.admm_rho) <= 0:
            raise ConfigurationError("solver tolerances and scales must be positive")
        if self.max_iters < 1:
            raise ConfigurationError("max_iters must be positive")
        if not 0.0 < self.barrier_shrink < 1.0:
            raise ConfigurationError("barrier_shrink must lie strictly inside (0, 1)")


@dataclass
class Solution:
    w: np.ndarray
    objective: float          # ||w||_p
    kkt_residual: float
    feasibility_residual: float
    iterations: int
    converged: bool


def _check_full_row_rank(X: np.ndarray) -> None:
    # pivot threshold 1e-10 * max|X_ij| on the pivoted-QR diagonal of X^T
    n, d = X.shape
    if d < n:
        raise DegenerateDesignError("need n <= d for interpolation")
    r = sla.qr(X.T, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    thresh = 1e-10 * max(np.abs(X).max(), 1e-300)
    if diag.size < n or diag.min() <= thresh:
        raise DegenerateDesignError("design matrix is rank deficient")


def least_norm_l2(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Minimum-l2-norm interpolator X^T (X X^T)^{-1} y."""
    ch = sla.cho_factor(X @ X.T)
    return X.T @ sla.cho_solve(ch, y)


def _lp_objective(w: np.ndarray, p: float) -> float:
    return float(np.sum(np.abs(w) ** p) ** (1.0 / p))


def kkt_residual_interpolation(X: np.ndarray, w: np.ndarray, p: float) -> float:
    """|| (I - P_row) grad ||w||_p^p ||_2 / max(1, ||grad||_2), P_row = row-space projector."""
    if p <= 1.0:
        raise ConfigurationError("interpolation KKT certificate requires p > 1")
    g = p * np.sign(w) * np.abs(w) ** (p - 1.0)
    lam, *_ = np.linalg.lstsq(X.T, g, rcond=None)
    resid = g - X.T @ lam
    return float(np.linalg.norm(resid) / max(1.0, np.linalg.norm(g)))


def kkt_residual_margin(X: np.ndarray, y: np.ndarray, w: np.ndarray, p: float,
                        active_tol: float = 1e-6) -> float:
    """Distance of grad ||w||_p^p from the cone of active rows y_i x_i (NNLS fit)."""
    g = p * np.sign(w) * np.abs(w) ** (p - 1.0)
    m = y * (X @ w)
    active = m <= 1.0 + active_tol
    gn = max(1.0, np.linalg.norm(g))
    if not active.any():
        return float(np.linalg.norm(g) / gn)
    B = (X[active] * y[active, None]).T
    _, resid = nnls(B, g, maxiter=max(50 * B.shape[1], 1000))
    return float(resid / gn)


def _kkt_residual_l1(X: np.ndarray, w: np.ndarray) -> float:
    """Subgradient certificate for p = 1: fit X^T lam to sign(w) on the support,
    penalize |X^T lam| > 1 off support."""
    scale = np.abs(w).max()
    if scale == 0.0:
        return 0.0
    supp = np.abs(w) > 1e-8 * scale
    s = np.sign(w[supp])
    lam, *_ = np.linalg.lstsq(X.T[supp], s, rcond=None)
    v = X.T @ lam
    on = v[supp] - s
    off = np.maximum(np.abs(v[~supp]) - 1.0, 0.0)
    return float(np.sqrt(np.sum(on ** 2) + np.sum(off ** 2)) / max(1.0, np.linalg.norm(v)))


def _feas_interp(X, y, w) -> float:
    return float(np.linalg.norm(X @ w - y) / max(1.0, np.linalg.norm(y)))


def _solve_interp_dual_newton(X, y, p, opts: SolverOptions):
    """Newton with q-continuation on the smooth dual; returns (w, iterations)."""
    n = X.shape[0]
    q = p / (p - 1.0)
    ch = sla.cho_factor(X @ X.T)
    lam = sla.cho_solve(ch, y)
    yn = max(1.0, np.linalg.norm(y))
    stages = [2.0]
    while stages[-1] < q:
        stages.append(min(stages[-1] * 2.0, q))
    iters = 0
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        for si, qc in enumerate(stages):
            pc = qc / (qc - 1.0)
            final = si == len(stages) - 1
            stage_tol = opts.tol_feas if final else max(1e-8, opts.tol_feas)
            # rescale lambda so X w(lambda) best matches y; w scales as c^(q-1)
            v = X.T @ lam
            w = np.sign(v) * (np.abs(v) / pc) ** (qc - 1.0)
            Xw = X @ w
            denom = float(Xw @ Xw)
            if denom > 0:
                c = float(Xw @ y) / denom
                if c > 0:
                    lam = lam * c ** (1.0 / (qc - 1.0))

            def psi(l):
                t = np.abs(X.T @ l) / pc
                return float(np.sum(t ** qc) * pc / qc - l @ y)

            while iters < opts.max_iters:
                v = X.T @ lam
                absv = np.abs(v) / pc
                w = np.sign(v) * absv ** (qc - 1.0)
                grad = X @ w - y
                if np.linalg.norm(grad) / yn <= stage_tol:
                    break
                W = (qc - 1.0) / pc * absv ** (qc - 2.0)
                H = (X * W) @ X.T
                H[np.diag_indices_from(H)] += max(np.trace(H), 1e-300) / n * 1e-14
                try:
                    delta = sla.solve(H, -grad, assume_a="pos")
                except sla.LinAlgError:
                    delta = np.linalg.lstsq(H, -grad, rcond=None)[0]
                f0 = psi(lam)
                gd = float(grad @ delta)
                t = 1.0
                for _ in range(80):
                    if psi(lam + t * delta) <= f0 + 1e-4 * t * gd:
                        break
                    t *= 0.5
                else:
                    break  # no further progress at this stage
                lam = lam + t * delta
                iters += 1
    v = X.T @ lam
    w = np.sign(v) * (np.abs(v) / p) ** (q - 1.0)
    return w, iters


def _solve_interp_admm(X, y, opts: SolverOptions):
    """Basis pursuit (p = 1) by ADMM: affine projection + soft thresholding."""
    n, d = X.shape
    rho = opts.admm_rho
    ch = sla.cho_factor(X @ X.T)
    part = X.T @ sla.cho_solve(ch, y)

    def project(v):
        return v - X.T @ sla.cho_solve(ch, X @ v) + part

    z = np.zeros(d)
    u = np.zeros(d)
    w = part
    for it in range(opts.max_iters):
        w = project(z - u)
        z_prev = z
        t = w + u
        z = np.sign(t) * np.maximum(np.abs(t) - 1.0 / rho, 0.0)
        u = u + w - z
        r_primal = np.linalg.norm(w - z)
        r_dual = rho * np.linalg.norm(z - z_prev)
        if r_primal <= 1e-8 and r_dual <= 1e-8:
            return w, it + 1, True
    return w, opts.max_iters, False


def solve_min_lp_norm(X: np.ndarray, y: np.ndarray, p: float,
                      opts: SolverOptions | None = None) -> Solution:
    """argmin ||w||_p subject to X w = y, for p in [1, 2].

    Requires X of full row rank (n <= d).  Non-convergence is reported via
    converged=False, never raised.
    """
    opts = opts or SolverOptions()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ConfigurationError("X must be n x d and y length n")
    if not 1.0 <= p <= 2.0:
        raise ConfigurationError("p must lie in [1, 2]")
    _check_full_row_rank(X)

    if np.linalg.norm(y) == 0.0:
        w = np.zeros(X.shape[1])
        return Solution(w, 0.0, 0.0, 0.0, 0, True)

    if p == 1.0:
        w, iters, admm_ok = _solve_interp_admm(X, y, opts)
        # interior feasibility is exact by construction; certify the subgradient
        kkt = _kkt_residual_l1(X, w)
        feas = _feas_interp(X, y, w)
        converged = admm_ok and feas <= opts.tol_feas
        return Solution(w, _lp_objective(w, 1.0), kkt, feas, iters, converged)

    if p == 2.0:
        w = least_norm_l2(X, y)
        iters = 0
    else:
        w, iters = _solve_interp_dual_newton(X, y, p, opts)
    kkt = kkt_residual_interpolation(X, w, p)
    feas = _feas_interp(X, y, w)
    converged = kkt <= opts.tol_kkt and feas <= opts.tol_feas
    return Solution(w, _lp_objective(w, p), kkt, feas, iters, converged)


def solve_max_lp_margin(X: np.ndarray, y: np.ndarray, p: float,
                        opts: SolverOptions | None = None) -> Solution:
    """argmin ||w||_p subject to y_i <x_i, w> >= 1, for p in (1, 2].

    Raises SeparabilityError when no separating direction exists (the dual
    objective diverges along the barrier path).
    """
    opts = opts or SolverOptions()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ConfigurationError("X must be n x d and y length n")
    if not 1.0 < p <= 2.0:
        raise ConfigurationError(
            "margin solver needs p in (1, 2]; for p = 1 use "
            "effective_p_for_classification to pick the documented surrogate")
    if not np.all(np.abs(y) == 1.0):
        raise ConfigurationError("labels must lie in {-1, +1}")

    n, d = X.shape
    q = p / (p - 1.0)
    A = X * y[:, None]
    col_scale = max(1.0, float(np.abs(A.T @ np.ones(n)).max()))
    alpha = np.full(n, 0.5 / (n * col_scale))
    mu = opts.barrier_mu0
    mu_min = min(opts.tol_kkt, 1e-8) / (100.0 * n)
    iters = 0
    diverged = False

    def phi(a, mu):
        if (a <= 0).any():
            return np.inf
        t = np.abs(A.T @ a)
        S = float(np.sum(t ** q))
        if S >= 1.0:
            return np.inf
        return float(-a.sum() / mu - np.sum(np.log(a)) - np.log1p(-S))

    # the Hessian is legitimately near-singular at the end of the central path
    warnings.filterwarnings("ignore", category=sla.LinAlgWarning)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        last_round = False
        while not last_round:
            last_round = mu <= mu_min
            while iters < opts.max_iters:
                v = A.T @ alpha
                absv = np.abs(v)
                S = float(np.sum(absv ** q))
                r = 1.0 - S
                u = np.sign(v) * absv ** (q - 1.0)
                Au = A @ u
                grad = -1.0 / mu - 1.0 / alpha + q * Au / r
                W = q * (q - 1.0) * absv ** (q - 2.0)
                H = ((A * W) @ A.T) * (q / r) + (q / r) ** 2 * np.outer(Au, Au)
                H[np.diag_indices_from(H)] += 1.0 / alpha ** 2
                try:
                    dalpha = sla.solve(H, -grad, assume_a="pos")
                except sla.LinAlgError:
                    dalpha = np.linalg.lstsq(H, -grad, rcond=None)[0]
                dec2 = float(-grad @ dalpha)
                if dec2 <= (1e-9 if last_round else 1e-2):
                    break
                t = 1.0
                neg = dalpha < 0
                if neg.any():
                    t = min(t, 0.99 * float(np.min(-alpha[neg] / dalpha[neg])))
                f0 = phi(alpha, mu)
                gd = float(grad @ dalpha)
                for _ in range(80):
                    if phi(alpha + t * dalpha, mu) <= f0 + 1e-4 * t * gd:
                        break
                    t *= 0.5
                else:
                    break
                alpha = alpha + t * dalpha
                iters += 1
                if alpha.sum() > 1e10:
                    diverged = True
                    break
            if diverged:
                break
            mu = max(mu * opts.barrier_shrink, mu_min)

    if diverged:
        raise SeparabilityError("dual objective diverged; data not strictly separable")

    v = A.T @ alpha
    u = np.sign(v) * np.abs(v) ** (q - 1.0)
    m = A @ u
    if m.min() <= 0:
        raise SeparabilityError("barrier path did not reach a separating direction")
    w = u / m.min()
    margins = A @ w
    feas = float(max(0.0, 1.0 - margins.min()))
    kkt = kkt_residual_margin(X, y, w, p)
    converged = kkt <= opts.tol_kkt and feas <= opts.tol_feas and iters < opts.max_iters
    return Solution(w, _lp_objective(w, p), kkt, feas, iters, converged)


def effective_p_for_classification(p: float, d: int) -> tuple[float, bool]:
    """Map p = 1 to the documented approximate-l1 surrogate 1 + 3/log d.

    Returns (effective_p, approx_l1_flag).  The exact p = 1 max-margin LP is
    out of scope; the surrogate tracks the small-p regime where the margin
    solver is still smooth.
    """
    if p > 1.0:
        return p, False
    if d < 2:
        raise ConfigurationError("need d >= 2")
    return min(2.0, 1.0 + 3.0 / np.log(d)), True
