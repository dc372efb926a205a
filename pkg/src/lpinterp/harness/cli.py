"""Command-line interface.

Subcommands: gen, fit, sweep, theory rates, cgmt landscape|path, ingest,
eval, plot.  Every subcommand accepts --config FILE (flat dotted-key text,
see harness.config) and --set key=value overrides; direct flags win over
--set, which wins over the file.  Exit codes: 0 success, 2 configuration
error, 3 solver failure in single-fit mode.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ..datagen import (CLASSIFICATION, REGRESSION, Dataset, NoiseModel, ProblemSpec,
                       gen_classification, gen_regression)
from ..errors import ConfigurationError, LpInterpError, SchemaError, SeparabilityError
from ..solvers import SolverOptions, solve_max_lp_margin, solve_min_lp_norm
from ..theory import (empirical_landscape, path_concentration_report,
                      population_profile, rates_table)
from ..datagen import sample_label_sign
from ..streams import stream
from .config import load_config, merge, parse_value
from .ingest import ingest_csv
from .svgplot import emit_plot
from .sweep import SweepConfig, SweepResult, run_sweep, train_test_eval

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _gather_config(args) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ConfigurationError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        cfg = merge(cfg, {key.strip(): parse_value(value)})
    return cfg


def _cfg_get(cfg, key, flag_value, default=None):
    if flag_value is not None:
        return flag_value
    if key in cfg:
        return cfg[key]
    return default


def _noise_from(cfg, kind_flag, sigma_flag, default_kind="gaussian", default_sigma=0.0):
    kind = _cfg_get(cfg, "noise.kind", kind_flag, default_kind)
    sigma = float(_cfg_get(cfg, "noise.sigma", sigma_flag, default_sigma))
    return NoiseModel(kind, sigma)


def _solver_opts(cfg) -> SolverOptions:
    kw = {}
    for name in ("tol_kkt", "tol_feas", "max_iters", "barrier_mu0", "barrier_shrink", "admm_rho"):
        key = f"solver.{name}"
        if key in cfg:
            kw[name] = cfg[key]
    return SolverOptions(**kw)


def _float_list(value):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    return [float(v) for v in str(value).split(",") if v.strip()]


def _cmd_gen(args) -> int:
    cfg = _gather_config(args)
    task = _cfg_get(cfg, "gen.task", args.task, REGRESSION)
    n = int(_cfg_get(cfg, "gen.n", args.n, 100))
    d = int(_cfg_get(cfg, "gen.d", args.d, 200))
    seed = int(_cfg_get(cfg, "gen.seed", args.seed, 0))
    noise = _noise_from(cfg, args.noise, args.sigma,
                        "gaussian" if task == REGRESSION else "flips",
                        0.0 if task == REGRESSION else 0.1)
    spec = ProblemSpec(n=n, d=d, p=2.0, noise=noise, task=task, seed=seed)
    ds = gen_regression(spec) if task == REGRESSION else gen_classification(spec)
    out = _cfg_get(cfg, "output.path", args.out)
    if not out:
        raise ConfigurationError("gen needs --out (or output.path)")
    ds.to_csv(out)
    print(f"wrote {out} (n={ds.n}, d={ds.d})")
    return EXIT_OK


def _cmd_fit(args) -> int:
    cfg = _gather_config(args)
    ds = Dataset.from_csv(args.data)
    task = _cfg_get(cfg, "fit.task", args.task, REGRESSION)
    p = float(_cfg_get(cfg, "fit.p", args.p, 2.0))
    opts = _solver_opts(cfg)
    try:
        if task == REGRESSION:
            sol = solve_min_lp_norm(ds.X, ds.y, p, opts)
        else:
            sol = solve_max_lp_margin(ds.X, ds.y, p, opts)
    except SeparabilityError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    diag = dict(objective=sol.objective, kkt_residual=sol.kkt_residual,
                feasibility_residual=sol.feasibility_residual,
                iterations=sol.iterations, converged=sol.converged)
    print(json.dumps(diag))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("w\n")
            for v in sol.w:
                fh.write(repr(float(v)) + "\n")
    return EXIT_OK if sol.converged else EXIT_SOLVER


def _cmd_sweep(args) -> int:
    cfg = _gather_config(args)
    task = _cfg_get(cfg, "sweep.task", args.task)
    if task is None:
        raise ConfigurationError("sweep needs a task (sweep.task or --task)")
    p_grid = _float_list(_cfg_get(cfg, "sweep.p_grid", args.p_grid))
    if not p_grid:
        raise ConfigurationError("sweep needs a p grid")
    noise = _noise_from(cfg, args.noise, args.sigma,
                        "gaussian" if task == REGRESSION else "flips",
                        1.0 if task == REGRESSION else 0.15)
    sweep_cfg = SweepConfig(
        task=task,
        p_grid=tuple(p_grid),
        n=int(_cfg_get(cfg, "sweep.n", args.n, 100)),
        d=int(_cfg_get(cfg, "sweep.d", args.d, 1000)),
        noise=noise,
        trials=int(_cfg_get(cfg, "sweep.trials", args.trials, 10)),
        base_seed=int(_cfg_get(cfg, "sweep.base_seed", args.base_seed, 0)),
        solver=_solver_opts(cfg),
        output_path=_cfg_get(cfg, "output.path", args.out, "") or "",
    )
    workers = int(_cfg_get(cfg, "sweep.workers", args.workers, 1))
    result = run_sweep(sweep_cfg, workers=workers)
    if sweep_cfg.output_path:
        result.to_csv(sweep_cfg.output_path)
        print(f"wrote {sweep_cfg.output_path} ({len(result.rows)} rows)")
    else:
        result.to_csv(sys.stdout)
    return EXIT_OK


def _cmd_theory_rates(args) -> int:
    cfg = _gather_config(args)
    tasks = _cfg_get(cfg, "theory.tasks", args.tasks, "regression,classification")
    if isinstance(tasks, str):
        tasks = [t.strip() for t in tasks.split(",") if t.strip()]
    betas = _float_list(_cfg_get(cfg, "theory.betas", args.betas, [1.25, 1.5, 2.0, 2.5, 3.0]))
    ps = _float_list(_cfg_get(cfg, "theory.ps", args.ps, [1.05, 1.1, 1.25, 1.5, 2.0]))
    rows = rates_table(tasks, betas, ps)
    out = _cfg_get(cfg, "output.path", args.out)
    lines = ["task,beta,p,alpha,source"]
    for row in rows:
        p_txt = "" if row["p"] is None else repr(float(row["p"]))
        lines.append(f'{row["task"]},{repr(float(row["beta"]))},{p_txt},'
                     f'{repr(float(row["alpha"]))},{row["source"]}')
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_cgmt_landscape(args) -> int:
    cfg = _gather_config(args)
    noise = _noise_from(cfg, args.noise, args.sigma, "flips", 0.3)
    n = int(_cfg_get(cfg, "cgmt.n", args.n, 10_000))
    seed = int(_cfg_get(cfg, "cgmt.seed", args.seed, 0))
    mc = int(_cfg_get(cfg, "cgmt.mc_samples", args.mc_samples, 1_000_000))
    rng = stream(seed, tag="cgmt-landscape")
    z = rng.standard_normal(n)
    xi = sample_label_sign(noise, z, rng)
    g = rng.standard_normal(n)
    land = empirical_landscape(np.abs(z), xi, g)
    prof = population_profile(noise, mc_samples=mc, seed=seed + 1)
    lines = ["source,nu_bar,f_star,zeta_nn,zeta_ee,kappa_noise,samples,stderr"]
    kappa_n = 2.0 * land.f_star_n / (land.zeta_ee_n * land.nu_bar_n ** 2) \
        if land.nu_bar_n > 0 else float("nan")
    lines.append(f"empirical,{land.nu_bar_n!r},{land.f_star_n!r},{land.zeta_nn_n!r},"
                 f"{land.zeta_ee_n!r},{kappa_n!r},{n},")
    lines.append(f"population,{prof.nu_bar!r},{prof.f_star!r},{prof.zeta_nn!r},"
                 f"{prof.zeta_ee!r},{prof.kappa_noise!r},{prof.mc_samples},{prof.mc_stderr!r}")
    text = "\n".join(lines) + "\n"
    out = _cfg_get(cfg, "output.path", args.out)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_cgmt_path(args) -> int:
    cfg = _gather_config(args)
    d = int(_cfg_get(cfg, "cgmt.d", args.d, 100_000))
    seed = int(_cfg_get(cfg, "cgmt.seed", args.seed, 0))
    s_list = _cfg_get(cfg, "cgmt.s_list", args.s, [100, 200, 400])
    if isinstance(s_list, str):
        s_list = [int(v) for v in s_list.split(",") if v.strip()]
    elif isinstance(s_list, (int, float)):
        s_list = [int(s_list)]
    else:
        s_list = [int(v) for v in s_list]
    rows = path_concentration_report(d, s_list, seed=seed)
    lines = ["s,t_s,alpha_s,ratio1,ratio2"]
    for row in rows:
        lines.append(f'{row["s"]},{row["t_s"]!r},{row["alpha_s"]!r},'
                     f'{row["ratio1"]!r},{row["ratio2"]!r}')
    text = "\n".join(lines) + "\n"
    out = _cfg_get(cfg, "output.path", args.out)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_ingest(args) -> int:
    cfg = _gather_config(args)
    label = _cfg_get(cfg, "ingest.label", args.label)
    if not label:
        raise ConfigurationError("ingest needs the label column name")
    ds = ingest_csv(args.data, label)
    out = _cfg_get(cfg, "output.path", args.out)
    if not out:
        raise ConfigurationError("ingest needs --out (or output.path)")
    ds.to_csv(out)
    print(json.dumps(dict(n=ds.n, d=ds.d, dropped=ds.meta.get("dropped_columns", []),
                          label_mapping=ds.meta.get("label_mapping", {}))))
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    cfg = _gather_config(args)
    ds = Dataset.from_csv(args.data)
    p_grid = _float_list(_cfg_get(cfg, "eval.p_grid", args.p_grid, [1.1, 1.5, 2.0]))
    table = train_test_eval(
        ds,
        split_seed=int(_cfg_get(cfg, "eval.split_seed", args.split_seed, 0)),
        train_frac=float(_cfg_get(cfg, "eval.train_frac", args.train_frac, 0.9)),
        p_grid=p_grid,
        flip_frac=float(_cfg_get(cfg, "eval.flip_frac", args.flip_frac, 0.0)),
        n_splits=int(_cfg_get(cfg, "eval.n_splits", args.splits, 100)),
        opts=_solver_opts(cfg),
    )
    lines = ["kind,split,p,approx_l1,ok,test_error,mean_test_error,stderr_test_error,splits_used"]
    for row in table["rows"]:
        lines.append(f'row,{row["split"]},{row["p"]!r},{str(row["approx_l1"]).lower()},'
                     f'{str(row["ok"]).lower()},'
                     f'{"" if not row["ok"] else repr(row["test_error"])},,,')
    for srow in table["summary"]:
        mean = srow.get("mean_test_error")
        se = srow.get("stderr_test_error")
        lines.append(f'summary,,{srow["p"]!r},,,,'
                     f'{"" if mean is None else repr(mean)},'
                     f'{"" if se is None else repr(se)},{srow["splits_used"]}')
    text = "\n".join(lines) + "\n"
    out = _cfg_get(cfg, "output.path", args.out)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_plot(args) -> int:
    out = args.out or "plot.svg"
    emit_plot(args.data, args.kind, out)
    print(f"wrote {out} and {out.rsplit('.', 1)[0]}.dat")
    return EXIT_OK


def _add_common(sp):
    sp.add_argument("--config", help="flat dotted-key config file")
    sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                    help="override a config key (repeatable)")
    sp.add_argument("--out", help="output path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lpinterp",
                                 description="min-lp-norm interpolation and max-lp-margin experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="generate a synthetic dataset CSV")
    _add_common(sp)
    sp.add_argument("--task", choices=[REGRESSION, CLASSIFICATION])
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--noise", choices=["gaussian", "flips", "logistic", "prequant"])
    sp.add_argument("--sigma", type=float)
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("fit", help="fit one interpolator/margin solution")
    _add_common(sp)
    sp.add_argument("--data", required=True)
    sp.add_argument("--task", choices=[REGRESSION, CLASSIFICATION])
    sp.add_argument("--p", type=float)
    sp.set_defaults(func=_cmd_fit)

    sp = sub.add_parser("sweep", help="run a (p x trials) experiment sweep")
    _add_common(sp)
    sp.add_argument("--task", choices=[REGRESSION, CLASSIFICATION])
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--p-grid")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--base-seed", type=int)
    sp.add_argument("--noise", choices=["gaussian", "flips", "logistic", "prequant"])
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--workers", type=int)
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("theory", help="closed-form rate tables")
    tsub = sp.add_subparsers(dest="theory_command", required=True)
    tp = tsub.add_parser("rates", help="emit task,beta,p,alpha,source CSV")
    _add_common(tp)
    tp.add_argument("--tasks")
    tp.add_argument("--betas")
    tp.add_argument("--ps")
    tp.set_defaults(func=_cmd_theory_rates)

    sp = sub.add_parser("cgmt", help="auxiliary-landscape and l1-path reports")
    csub = sp.add_subparsers(dest="cgmt_command", required=True)
    cp = csub.add_parser("landscape", help="empirical vs population landscape quantities")
    _add_common(cp)
    cp.add_argument("--noise", choices=["flips", "logistic", "prequant"])
    cp.add_argument("--sigma", type=float)
    cp.add_argument("--n", type=int)
    cp.add_argument("--seed", type=int)
    cp.add_argument("--mc-samples", type=int)
    cp.set_defaults(func=_cmd_cgmt_landscape)
    cp = csub.add_parser("path", help="l1-path concentration ratios")
    _add_common(cp)
    cp.add_argument("--d", type=int)
    cp.add_argument("--s", help="comma list of support sizes")
    cp.add_argument("--seed", type=int)
    cp.set_defaults(func=_cmd_cgmt_path)

    sp = sub.add_parser("ingest", help="standardize a labeled CSV into a dataset")
    _add_common(sp)
    sp.add_argument("--data", required=True)
    sp.add_argument("--label")
    sp.set_defaults(func=_cmd_ingest)

    sp = sub.add_parser("eval", help="train/test margin evaluation over random splits")
    _add_common(sp)
    sp.add_argument("--data", required=True)
    sp.add_argument("--p-grid")
    sp.add_argument("--split-seed", type=int)
    sp.add_argument("--train-frac", type=float)
    sp.add_argument("--flip-frac", type=float)
    sp.add_argument("--splits", type=int)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("plot", help="emit an SVG (+ .dat) from a results CSV")
    _add_common(sp)
    sp.add_argument("--data", required=True)
    sp.add_argument("--kind", required=True, choices=["rates", "risk_vs_p", "bias_variance"])
    sp.set_defaults(func=_cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, SchemaError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LpInterpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
