"""Population and empirical squared-hinge landscapes of the margin analysis.

The one-dimensional section f(nu, 0) of

    f(nu, eta) = E (1 - xi * nu * |Z1| - eta * Z2)_+^2

is strictly convex with a positive minimizer nu-bar under every admissible
sign-noise law; its empirical counterpart f_n over n draws is piecewise
quadratic in nu and is minimized here exactly by a breakpoint sweep.  The
curvature surrogates zeta are the indicator sums

    zeta_nn = (2/n) sum 1[1 - xi_i nu |z_i| >= 0] z_i^2
    zeta_ee = (2/n) sum 1[1 - xi_i nu |z_i| >= 0]

evaluated at the minimizer, and kappa_noise = 2 f* / (zeta_ee * nu-bar^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..datagen import NoiseModel, sample_label_sign
from ..errors import AssumptionViolationError, ConfigurationError, UnboundedDirectionError
from ..streams import stream
from .gaussians import lambda_q as _lambda_q_mc

__all__ = [
    "PopulationRiskProfile",
    "EmpiricalLandscape",
    "empirical_landscape",
    "population_profile",
    "quadratic_lower_bound_check",
    "localization_predictors",
]


@dataclass
class PopulationRiskProfile:
    noise: NoiseModel
    nu_bar: float
    f_star: float
    zeta_nn: float
    zeta_ee: float
    kappa_noise: float
    mc_samples: int
    mc_stderr: float  # delta-method standard error of nu_bar

    def __post_init__(self):
        if min(self.nu_bar, self.f_star, self.zeta_nn, self.zeta_ee, self.kappa_noise) <= 0:
            raise AssumptionViolationError("profile quantities must be strictly positive")
        expected = 2.0 * self.f_star / (self.zeta_ee * self.nu_bar ** 2)
        if self.kappa_noise != expected:
            raise ConfigurationError("kappa_noise inconsistent with stored fields")


@dataclass
class EmpiricalLandscape:
    abs_z: np.ndarray
    xi: np.ndarray
    g: np.ndarray
    nu_bar_n: float
    f_star_n: float
    zeta_nn_n: float
    zeta_ee_n: float

    def f_n(self, nu: float, eta: float) -> float:
        """(1/n) sum (1 - xi_i nu |z_i| - eta g_i)_+^2."""
        t = 1.0 - self.xi * self.abs_z * nu - eta * self.g
        return float(np.mean(np.maximum(t, 0.0) ** 2))


def _minimize_section(a: np.ndarray) -> tuple[float, float]:
    """Exact minimizer of nu -> mean((1 - a_i nu)_+^2) by a breakpoint sweep.

    a = xi * |z|.  Raises UnboundedDirectionError when all nonzero a_i share
    one sign (the infimum is approached at nu -> +-inf, never attained).
    """
    n = a.shape[0]
    nz = a[a != 0.0]
    if nz.size:
        if (nz > 0).all() or (nz < 0).all():
            raise UnboundedDirectionError("one-signed xi|z|: section minimum unattained")
    else:
        return 0.0, 1.0

    bps = 1.0 / nz
    order = np.argsort(bps)
    b_sorted = bps[order]
    a_sorted = nz[order]

    # active set just left of the first breakpoint: all a > 0 terms (plus constants)
    n_zero = n - nz.size
    pos = nz > 0
    S0_init = float(np.count_nonzero(pos) + n_zero)
    S1_init = float(nz[pos].sum())
    S2_init = float((nz[pos] ** 2).sum())

    # crossing a breakpoint of a negative term activates it, of a positive term
    # deactivates it; either way S1 decreases by |a|
    sgn = np.where(a_sorted < 0, 1.0, -1.0)
    S0 = S0_init + np.concatenate(([0.0], np.cumsum(sgn)))
    S1 = S1_init + np.concatenate(([0.0], np.cumsum(np.where(a_sorted < 0, a_sorted, -a_sorted))))
    S2 = S2_init + np.concatenate(([0.0], np.cumsum(sgn * a_sorted ** 2)))

    lo = np.concatenate(([-np.inf], b_sorted))
    hi = np.concatenate((b_sorted, [np.inf]))
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = np.where(S2 > 0, S1 / np.where(S2 > 0, S2, 1.0), 0.0)
    cand = np.clip(cand, lo, hi)
    # guard the unbounded end intervals (cannot contain the minimum here)
    cand = np.where(np.isfinite(cand), cand, np.clip(0.0, lo, hi))
    f = (S0 - 2.0 * S1 * cand + S2 * cand ** 2) / n
    k = int(np.argmin(f))
    return float(cand[k]), float(f[k])


def empirical_landscape(abs_z, xi, g) -> EmpiricalLandscape:
    """Exact minimization of the empirical section plus curvature surrogates."""
    abs_z = np.asarray(abs_z, dtype=float)
    xi = np.asarray(xi, dtype=float)
    g = np.asarray(g, dtype=float)
    if not (abs_z.shape == xi.shape == g.shape) or abs_z.ndim != 1 or abs_z.size < 2:
        raise ConfigurationError("abs_z, xi, g must be equal-length vectors, n >= 2")
    if (abs_z < 0).any():
        raise ConfigurationError("abs_z must be nonnegative")
    if not np.all(np.abs(xi) == 1.0):
        raise ConfigurationError("xi must lie in {-1, +1}")
    a = xi * abs_z
    nu_bar_n, f_star_n = _minimize_section(a)
    active = 1.0 - a * nu_bar_n >= 0.0
    zeta_nn_n = float(2.0 * np.mean(active * abs_z ** 2))
    zeta_ee_n = float(2.0 * np.mean(active))
    return EmpiricalLandscape(abs_z=abs_z, xi=xi, g=g, nu_bar_n=nu_bar_n,
                              f_star_n=f_star_n, zeta_nn_n=zeta_nn_n,
                              zeta_ee_n=zeta_ee_n)


def population_profile(noise: NoiseModel, mc_samples: int = 1_000_000,
                       seed: int = 0) -> PopulationRiskProfile:
    """Monte-Carlo profile of the population landscape under common random numbers.

    One fixed sample (z_i, xi_i) serves every nu (CRN), so the sampled section
    is convex in nu and golden-section search converges to the true sample
    minimizer; the search runs over nu in [1e-3, 50] to interval 1e-6 and a
    minimizer at either boundary is rejected as an assumption violation.
    """
    if not noise.is_classification:
        raise ConfigurationError("population profile needs a classification noise variant")
    if mc_samples < 100:
        raise ConfigurationError("mc_samples too small")
    rng = stream(seed, tag="population-profile")
    z = rng.standard_normal(mc_samples)
    xi = sample_label_sign(noise, z, rng)
    a = xi * np.abs(z)

    def f_hat(nu: float) -> float:
        return float(np.mean(np.maximum(1.0 - a * nu, 0.0) ** 2))

    lo, hi = 1e-3, 50.0
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f_hat(x1), f_hat(x2)
    while hi - lo > 1e-6:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f_hat(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f_hat(x2)
    nu_bar = 0.5 * (lo + hi)
    if nu_bar < 1e-3 + 1e-5 or nu_bar > 50.0 - 1e-4:
        raise AssumptionViolationError("population minimizer escaped to the search boundary")
    f_star = f_hat(nu_bar)
    active = 1.0 - a * nu_bar >= 0.0
    zeta_nn = float(2.0 * np.mean(active * z ** 2))
    zeta_ee = float(2.0 * np.mean(active))
    # delta-method stderr of nu_bar: sd of the section slope over curvature
    slope_terms = -2.0 * a * np.maximum(1.0 - a * nu_bar, 0.0)
    stderr = float(np.std(slope_terms, ddof=1) / (np.sqrt(mc_samples) * zeta_nn))
    kappa = 2.0 * f_star / (zeta_ee * nu_bar ** 2)
    return PopulationRiskProfile(noise=noise, nu_bar=nu_bar, f_star=f_star,
                                 zeta_nn=zeta_nn, zeta_ee=zeta_ee,
                                 kappa_noise=kappa, mc_samples=mc_samples,
                                 mc_stderr=stderr)


def quadratic_lower_bound_check(land: EmpiricalLandscape, grid) -> tuple[float, float, bool]:
    """Largest c with f_n >= c (nu^2 + eta^2) over the grid.

    Returns (theta_nu, theta_eta, holds): theta_nu is the minimum ratio over
    the nu-dominant points (|nu| >= |eta|), theta_eta over the rest, and
    holds is True when the overall minimum is strictly positive.  Grid points
    at the origin are rejected.
    """
    pts = [(float(nu), float(eta)) for nu, eta in grid]
    if not pts:
        raise ConfigurationError("grid must be nonempty")
    if any(nu == 0.0 and eta == 0.0 for nu, eta in pts):
        raise ConfigurationError("grid must exclude the origin")
    theta_nu = np.inf
    theta_eta = np.inf
    for nu, eta in pts:
        ratio = land.f_n(nu, eta) / (nu ** 2 + eta ** 2)
        if abs(nu) >= abs(eta):
            theta_nu = min(theta_nu, ratio)
        else:
            theta_eta = min(theta_eta, ratio)
    overall = min(theta_nu, theta_eta)
    return float(theta_nu), float(theta_eta), bool(overall > 0.0)


def localization_predictors(sigma_xi: float, n: int, d: int, p: float, *,
                            lambda_q_estimate: float | None = None,
                            mc_samples: int = 20_000, seed: int = 0,
                            asymptotic: bool = False):
    """Localization scale predictors of the norm bounds.

    Returns (nu0, dnu0) where

        nu0  = -sigma_xi^2 (lambda_q^2 / (n sigma_xi^2))^(p/2)

    predicts the signal-coordinate offset for regression and

        dnu0(land) = -2 nu_n^(p-1) f*_n lambda_q^p / (zeta_nn,n (n f*_n)^(p/2))

    maps an EmpiricalLandscape to the classification offset.  lambda_q comes
    from Monte-Carlo unless `asymptotic` selects the sqrt(q) d^(1/q) proxy or
    an explicit estimate is supplied.
    """
    if not 1.0 < p <= 2.0:
        raise ConfigurationError("localization predictors need p in (1, 2]")
    if sigma_xi <= 0 or n < 1 or d < 1:
        raise ConfigurationError("need sigma_xi > 0 and positive n, d")
    q = p / (p - 1.0)
    if lambda_q_estimate is not None:
        lam = float(lambda_q_estimate)
    elif asymptotic:
        lam = float(np.sqrt(q) * d ** (1.0 / q))
    else:
        lam, _ = _lambda_q_mc(d, q, mc_samples=mc_samples, seed=seed)

    nu0 = -sigma_xi ** 2 * (lam ** 2 / (n * sigma_xi ** 2)) ** (p / 2.0)

    def dnu0(land: EmpiricalLandscape) -> float:
        return float(-2.0 * land.nu_bar_n ** (p - 1.0) * land.f_star_n * lam ** p
                     / (land.zeta_nn_n * (n * land.f_star_n) ** (p / 2.0)))

    return float(nu0), dnu0
