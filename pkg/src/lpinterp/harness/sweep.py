"""Experiment sweeps over the inductive-bias strength p, plus real-data splits.

Each sweep row is a pure function of (base_seed, p_index, trial): the row
seed is hash64 of that triple, so adding p values to the grid never perturbs
existing rows, and execution order (serial or worker pool) cannot change the
output.  Summaries per p carry mean risk, its standard error, and the exact
bias^2/variance split of the mean risk.
"""

from __future__ import annotations

import concurrent.futures
import io
from dataclasses import dataclass, field

import numpy as np

from ..datagen import (CLASSIFICATION, REGRESSION, Dataset, NoiseModel,
                       ProblemSpec, gen_classification, gen_regression)
from ..errors import ConfigurationError, LpInterpError
from ..metrics import bias_variance, directional_error, estimation_error, zero_one_from_directional
from ..solvers import (SolverOptions, effective_p_for_classification,
                       solve_max_lp_margin, solve_min_lp_norm)
from ..streams import hash64, stream

__all__ = ["SweepConfig", "SweepResult", "run_sweep", "train_test_eval"]

CSV_COLUMNS = [
    "kind", "task", "p", "p_index", "trial", "seed", "n", "d", "noise", "sigma",
    "approx_l1", "risk_regression", "risk_directional", "zero_one", "norm_p",
    "kkt_residual", "feasibility_residual", "iterations", "converged",
    "trials_used", "mean_risk", "stderr_risk", "bias_sq", "variance",
]


@dataclass(frozen=True)
class SweepConfig:
    task: str
    p_grid: tuple
    n: int
    d: int
    noise: NoiseModel
    trials: int
    base_seed: int
    solver: SolverOptions = SolverOptions()
    output_path: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError("trials must be >= 1")
        grid = tuple(float(p) for p in self.p_grid)
        if not grid or any(not 1.0 <= p <= 2.0 for p in grid):
            raise ConfigurationError("p_grid must be nonempty with values in [1, 2]")
        object.__setattr__(self, "p_grid", grid)
        if self.task not in (REGRESSION, CLASSIFICATION):
            raise ConfigurationError("task must be regression or classification")


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)

    def to_csv(self, path_or_buf) -> None:
        if hasattr(path_or_buf, "write"):
            self._write(path_or_buf)
        else:
            with open(path_or_buf, "w", newline="") as fh:
                self._write(fh)

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self._write(buf)
        return buf.getvalue()

    def _write(self, fh) -> None:
        fh.write("# schema=v1\n")
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in list(self.rows) + list(self.summary):
            fh.write(",".join(_fmt(row.get(col)) for col in CSV_COLUMNS) + "\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _run_trial(cfg: SweepConfig, p_index: int, trial: int):
    p = cfg.p_grid[p_index]
    seed = hash64(cfg.base_seed, p_index, trial)
    spec = ProblemSpec(n=cfg.n, d=cfg.d, p=p, noise=cfg.noise, task=cfg.task, seed=seed)
    row = dict(kind="row", task=cfg.task, p=p, p_index=p_index, trial=trial,
               seed=seed, n=cfg.n, d=cfg.d, noise=cfg.noise.kind,
               sigma=cfg.noise.sigma, approx_l1=False)
    w = None
    try:
        if cfg.task == REGRESSION:
            ds = gen_regression(spec)
            sol = solve_min_lp_norm(ds.X, ds.y, p, cfg.solver)
            w = sol.w
            row.update(risk_regression=estimation_error(sol.w, ds.truth))
        else:
            ds = gen_classification(spec)
            p_eff, approx = effective_p_for_classification(p, cfg.d)
            row["approx_l1"] = approx
            sol = solve_max_lp_margin(ds.X, ds.y, p_eff, cfg.solver)
            nw = sol.w / np.linalg.norm(sol.w)
            w = nw
            r = directional_error(sol.w, ds.truth)
            row.update(risk_directional=r, zero_one=zero_one_from_directional(min(r, 4.0)))
        row.update(norm_p=sol.objective, kkt_residual=sol.kkt_residual,
                   feasibility_residual=sol.feasibility_residual,
                   iterations=sol.iterations, converged=sol.converged)
    except LpInterpError as exc:
        row.update(converged=False, iterations=0, norm_p=None,
                   kkt_residual=None, feasibility_residual=None)
        row["error"] = type(exc).__name__
    return row, w


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    """Run |p_grid| x trials fits; solver failures are recorded, never fatal."""
    keys = [(pi, t) for pi in range(len(cfg.p_grid)) for t in range(cfg.trials)]
    results = {}
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {pool.submit(_run_trial, cfg, pi, t): (pi, t) for pi, t in keys}
            for fut in concurrent.futures.as_completed(futs):
                results[futs[fut]] = fut.result()
    else:
        for key in keys:
            results[key] = _run_trial(cfg, *key)

    risk_col = "risk_regression" if cfg.task == REGRESSION else "risk_directional"
    rows = []
    summary = []
    w_star = np.zeros(cfg.d)
    w_star[0] = 1.0
    for pi, p in enumerate(cfg.p_grid):
        vecs, risks = [], []
        for t in range(cfg.trials):
            row, w = results[(pi, t)]
            rows.append(row)
            if w is not None and row.get(risk_col) is not None:
                vecs.append(w)
                risks.append(row[risk_col])
        srow = dict(kind="summary", task=cfg.task, p=p, p_index=pi, n=cfg.n,
                    d=cfg.d, noise=cfg.noise.kind, sigma=cfg.noise.sigma,
                    trials_used=len(risks))
        if risks:
            risks_arr = np.asarray(risks)
            srow["mean_risk"] = float(risks_arr.mean())
            srow["stderr_risk"] = (float(risks_arr.std(ddof=1) / np.sqrt(len(risks)))
                                   if len(risks) > 1 else 0.0)
            if len(vecs) >= 2:
                bias_sq, variance = bias_variance(np.asarray(vecs), w_star)
                srow["bias_sq"] = bias_sq
                srow["variance"] = variance
        summary.append(srow)
    return SweepResult(config=cfg, rows=rows, summary=summary)


def train_test_eval(ds: Dataset, split_seed: int, train_frac: float, p_grid,
                    flip_frac: float, n_splits: int = 100,
                    opts: SolverOptions | None = None) -> dict:
    """Max-margin test error over random train/test splits of a labeled dataset.

    Exactly floor(flip_frac * n_train) training labels are flipped per split,
    chosen without replacement; the test set is never touched.  Splits where
    some p fails to separate are flagged and excluded from that p's means.
    """
    opts = opts or SolverOptions()
    y = np.asarray(ds.y, dtype=float)
    if not np.all(np.abs(y) == 1.0):
        raise ConfigurationError("train_test_eval needs labels in {-1, +1}")
    if not 0.0 <= flip_frac < 0.5:
        raise ConfigurationError("flip_frac must lie in [0, 0.5)")
    if not 0.0 < train_frac < 1.0:
        raise ConfigurationError("train_frac must lie in (0, 1)")
    n = ds.n
    n_train = int(round(train_frac * n))
    if not 1 <= n_train < n:
        raise ConfigurationError("train_frac leaves an empty train or test set")
    n_flip = int(np.floor(flip_frac * n_train))
    p_grid = [float(p) for p in p_grid]

    rows = []
    for split in range(n_splits):
        rng = stream(split_seed, split, tag="split")
        perm = rng.permutation(n)
        tr, te = perm[:n_train], perm[n_train:]
        y_tr = y[tr].copy()
        if n_flip:
            flip_idx = rng.choice(n_train, size=n_flip, replace=False)
            y_tr[flip_idx] *= -1.0
        for p in p_grid:
            p_eff, approx = effective_p_for_classification(p, ds.d)
            row = dict(kind="row", split=split, p=p, approx_l1=approx, ok=True)
            try:
                sol = solve_max_lp_margin(ds.X[tr], y_tr, p_eff, opts)
                pred = np.where(ds.X[te] @ sol.w >= 0, 1.0, -1.0)
                row.update(test_error=float(np.mean(pred != y[te])),
                           norm_p=sol.objective, converged=sol.converged)
            except LpInterpError as exc:
                row.update(ok=False, error=type(exc).__name__)
            rows.append(row)

    summary = []
    for p in p_grid:
        errs = [r["test_error"] for r in rows if r["p"] == p and r["ok"]]
        srow = dict(kind="summary", p=p, splits_used=len(errs))
        if errs:
            arr = np.asarray(errs)
            srow["mean_test_error"] = float(arr.mean())
            srow["stderr_test_error"] = (float(arr.std(ddof=1) / np.sqrt(len(errs)))
                                         if len(errs) > 1 else 0.0)
        summary.append(srow)
    return dict(rows=rows, summary=summary)
