"""Synthetic Gaussian sparse-signal data for regression and classification.

Regression draws rows x_i ~ N(0, I_d) and responses y_i = <x_i, w*> + xi_i
with xi_i ~ N(0, sigma^2).  Classification keeps the Gaussian design and
labels y_i = sgn(<x_i, w*>) * xi_i where the sign noise xi_i in {-1,+1} is
drawn from one of three conditional laws (random flips, logistic,
pre-quantization noise) that depend on x_i only through z = <x_i, w*>.

Generation is a pure function of (spec, seed): the design is drawn first,
then the noise, each from its own derived stream (see `lpinterp.streams`).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .streams import stream

__all__ = [
    "GroundTruth",
    "NoiseModel",
    "ProblemSpec",
    "Dataset",
    "gen_regression",
    "gen_classification",
    "sample_label_sign",
]

REGRESSION = "regression"
CLASSIFICATION = "classification"


@dataclass(frozen=True)
class GroundTruth:
    """Unit-norm signal vector; defaults to the 1-sparse e_1."""

    w_star: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w_star, dtype=float)
        object.__setattr__(self, "w_star", w)
        if w.ndim != 1:
            raise ConfigurationError("ground truth must be a 1-d vector")
        if abs(np.linalg.norm(w) - 1.0) > 1e-12:
            raise ConfigurationError("ground truth must have unit l2 norm (within 1e-12)")

    @staticmethod
    def one_sparse(d: int) -> "GroundTruth":
        w = np.zeros(d)
        w[0] = 1.0
        return GroundTruth(w)

    @staticmethod
    def s_sparse(d: int, s: int) -> "GroundTruth":
        """First s coordinates equal to 1/sqrt(s); extension hook, s=1 default elsewhere."""
        if not 1 <= s <= d:
            raise ConfigurationError("need 1 <= s <= d")
        w = np.zeros(d)
        w[:s] = 1.0 / np.sqrt(s)
        return GroundTruth(w)

    @property
    def d(self) -> int:
        return self.w_star.shape[0]


_NOISE_KINDS = ("gaussian", "flips", "logistic", "prequant")


@dataclass(frozen=True)
class NoiseModel:
    """Tagged union over the admissible noise laws.

    kind:
      gaussian  - additive N(0, sigma^2) on the regression response, sigma >= 0
      flips     - label flipped with probability sigma in [0, 0.5)
      logistic  - P(xi=+1 | z) = exp(|z sigma|) / (1 + exp(|z sigma|)), sigma > 0
      prequant  - xi = sgn(z + e) sgn(z), e ~ N(0, sigma^2), sigma > 0
    """

    kind: str
    sigma: float

    def __post_init__(self):
        if self.kind not in _NOISE_KINDS:
            raise ConfigurationError(f"unknown noise kind {self.kind!r}")
        s = float(self.sigma)
        object.__setattr__(self, "sigma", s)
        if self.kind == "gaussian" and s < 0:
            raise ConfigurationError("gaussian noise needs sigma >= 0")
        if self.kind == "flips" and not (0.0 <= s < 0.5):
            raise ConfigurationError("random flips need sigma in [0, 0.5)")
        if self.kind in ("logistic", "prequant") and not s > 0:
            raise ConfigurationError(f"{self.kind} noise needs sigma > 0")

    @staticmethod
    def gaussian_additive(sigma: float) -> "NoiseModel":
        return NoiseModel("gaussian", sigma)

    @staticmethod
    def random_flips(sigma: float) -> "NoiseModel":
        return NoiseModel("flips", sigma)

    @staticmethod
    def logistic(sigma: float) -> "NoiseModel":
        return NoiseModel("logistic", sigma)

    @staticmethod
    def pre_quantization(sigma: float) -> "NoiseModel":
        return NoiseModel("prequant", sigma)

    @property
    def is_classification(self) -> bool:
        return self.kind != "gaussian"


@dataclass(frozen=True)
class ProblemSpec:
    """Experiment parameters. q = p/(p-1) is always derived, never stored."""

    n: int
    d: int
    p: float
    noise: NoiseModel
    task: str
    seed: int

    def __post_init__(self):
        if self.task not in (REGRESSION, CLASSIFICATION):
            raise ConfigurationError(f"task must be regression or classification, got {self.task!r}")
        if self.n < 1 or self.d < 1:
            raise ConfigurationError("n and d must be positive")
        # d >= n is the interpolation feasibility requirement; it is enforced
        # at the solver boundary so that generation-only specs (moment checks,
        # n >> d) remain expressible.
        if not 1.0 <= self.p <= 2.0:
            raise ConfigurationError("p must lie in [1, 2]")

    @property
    def q(self) -> float:
        """Conjugate exponent; +inf at p = 1."""
        return np.inf if self.p == 1.0 else self.p / (self.p - 1.0)


@dataclass
class Dataset:
    """Design matrix with responses/labels; truth is None for ingested data."""

    X: np.ndarray
    y: np.ndarray
    truth: GroundTruth | None
    spec: ProblemSpec | None
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def to_csv(self, path_or_buf) -> None:
        """Write `x_0,...,x_{d-1},y` rows, floats in shortest round-trip decimal."""
        if hasattr(path_or_buf, "write"):
            self._write(path_or_buf)
        else:
            with open(path_or_buf, "w", newline="") as fh:
                self._write(fh)

    def _write(self, fh) -> None:
        fh.write(",".join([f"x_{j}" for j in range(self.d)] + ["y"]) + "\n")
        for i in range(self.n):
            row = [repr(float(v)) for v in self.X[i]]
            row.append(repr(float(self.y[i])))
            fh.write(",".join(row) + "\n")

    @staticmethod
    def from_csv(path_or_buf) -> "Dataset":
        if hasattr(path_or_buf, "read"):
            fh = path_or_buf
            return Dataset._read(fh)
        with open(path_or_buf, newline="") as fh:
            return Dataset._read(fh)

    @staticmethod
    def _read(fh) -> "Dataset":
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[-1] != "y" or header[0] != "x_0":
            raise ConfigurationError("dataset CSV must have header x_0,...,x_{d-1},y")
        rows = [[float(c) for c in row] for row in reader if row]
        arr = np.array(rows, dtype=float)
        return Dataset(X=arr[:, :-1], y=arr[:, -1], truth=None, spec=None)

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self._write(buf)
        return buf.getvalue()


def gen_regression(spec: ProblemSpec) -> Dataset:
    """y = X w* + xi with X iid standard normal and xi ~ N(0, sigma^2)."""
    if spec.task != REGRESSION:
        raise ConfigurationError("spec.task must be regression")
    if spec.noise.kind != "gaussian":
        raise ConfigurationError("regression requires the gaussian additive noise variant")
    truth = GroundTruth.one_sparse(spec.d)
    X = stream(spec.seed, tag="design").standard_normal((spec.n, spec.d))
    xi = spec.noise.sigma * stream(spec.seed, tag="noise").standard_normal(spec.n)
    y = X @ truth.w_star + xi
    return Dataset(X=X, y=y, truth=truth, spec=spec)


def sample_label_sign(model: NoiseModel, z, rng: np.random.Generator):
    """Draw the conditional sign noise xi in {-1,+1} given z = <x, w*>.

    Accepts scalar or vector z; the draw depends on x only through z.
    """
    if not model.is_classification:
        raise ConfigurationError("gaussian additive noise has no label-sign law")
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if model.kind == "flips":
        p_plus = np.full(z.shape, 1.0 - model.sigma)
        xi = np.where(rng.random(z.shape) < p_plus, 1.0, -1.0)
    elif model.kind == "logistic":
        e = np.exp(np.abs(z * model.sigma))
        p_plus = e / (1.0 + e)
        xi = np.where(rng.random(z.shape) < p_plus, 1.0, -1.0)
    else:  # prequant
        shifted = z + model.sigma * rng.standard_normal(z.shape)
        s1 = np.where(shifted >= 0, 1.0, -1.0)
        s2 = np.where(z >= 0, 1.0, -1.0)
        # z = 0 is a probability-zero event; fix xi = +1 there
        xi = np.where(z == 0.0, 1.0, s1 * s2)
    return float(xi[0]) if scalar else xi


def gen_classification(spec: ProblemSpec) -> Dataset:
    """y_i = sgn(<x_i, w*>) * xi_i with xi_i from the spec's sign-noise law."""
    if spec.task != CLASSIFICATION:
        raise ConfigurationError("spec.task must be classification")
    if not spec.noise.is_classification:
        raise ConfigurationError("classification requires a sign-noise variant")
    truth = GroundTruth.one_sparse(spec.d)
    X = stream(spec.seed, tag="design").standard_normal((spec.n, spec.d))
    z = X @ truth.w_star
    xi = sample_label_sign(spec.noise, z, stream(spec.seed, tag="noise"))
    y = np.where(z >= 0, 1.0, -1.0) * xi
    return Dataset(X=X, y=y, truth=truth, spec=spec)
