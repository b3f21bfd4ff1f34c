"""Command-line interface.

Subcommands: simulate | fisher | geodesic | report | region | fields.
All emit deterministic CSV (default) or JSON tables; identical
configurations produce byte-identical files.  Exit status: 0 on success,
1 when a tolerance check fails (simulate/geodesic) or an integration
aborts, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import constants as const
from .config import SCENARIO_CHOICES, RunConfig, resolve_config
from .dynamics import DrivingConfig, FieldKind, FieldProfile, field_components, integrate_propagator
from .errors import (
    ConfigError,
    EntropathError,
    NearDegenerateError,
    StepTooLargeError,
    UnitarityDriftError,
)
from .fisher import FisherFunction, Normalization, fisher_numeric
from .geodesics import (
    GeodesicForm,
    efficiency_normalizer,
    entropic_speed,
    geodesic_closed_form,
    path_functionals,
    region_mask,
    solve_geodesic_numeric,
)
from .scenarios import ProbabilityPath, ScenarioParams, success_probability
from .tableio import render_table, write_output

_KIND = {
    "constant": FieldKind.CONSTANT,
    "oscillatory": FieldKind.OSCILLATORY,
    "powerlaw": FieldKind.POWER_LAW,
    "exponential": FieldKind.EXPONENTIAL,
}

_FISHER_LABEL = {
    "constant": "constant",
    "oscillatory": "oscillatory",
    "powerlaw": "power-law decay",
    "exponential": "exponential decay",
}

_ANALOGY = {
    "constant": "Grover-like",
    "oscillatory": "Grover-like",
    "powerlaw": "fixed-point-like",
    "exponential": "fixed-point-like",
}

SIMULATE_TOLERANCE = 1e-8
GEODESIC_TOLERANCE = 1e-6


def _scenario(cfg: RunConfig, name: Optional[str] = None) -> ScenarioParams:
    kind = _KIND[name or cfg.scenario]
    lam = 0.0 if kind == FieldKind.CONSTANT else cfg.lam
    return ScenarioParams(
        profile=FieldProfile(kind=kind, gamma=cfg.gamma_over_hbar, lam=lam),
        hbar=1.0,
    )


def _normalization(cfg: RunConfig) -> Normalization:
    return Normalization.FUBINI_STUDY if cfg.normalization == "fs" else Normalization.RAW_FISHER


def _shared_meta(cfg: RunConfig, command: str) -> dict:
    return {
        "command": command,
        "scenario": cfg.scenario,
        "gamma_over_hbar": cfg.gamma_over_hbar,
        "lambda": cfg.lam,
    }


def cmd_simulate(cfg: RunConfig) -> int:
    scenario = _scenario(cfg)
    tolerance = cfg.tolerance if cfg.tolerance is not None else SIMULATE_TOLERANCE
    meta = _shared_meta(cfg, "simulate")
    meta.update(omega0=cfg.omega0, t_max=cfg.t_max, dt=cfg.dt,
                record_every=cfg.record_every, tolerance=tolerance)

    if cfg.t_max == 0.0:
        rows = [(0.0, 0.0, 0.0, 1.0, 0.0)]
        meta.update(max_abs_error=0.0, max_unitarity_drift=0.0, passed=True)
        text = render_table(meta, _SIM_COLUMNS, rows, cfg.format, cfg.precision)
        write_output(text, cfg.out)
        return 0

    run = integrate_propagator(
        scenario.profile,
        DrivingConfig(omega0=cfg.omega0),
        const.dimensionless(),
        cfg.t_max,
        cfg.dt,
        record_every=cfg.record_every,
        allow_off_resonance=cfg.allow_off_resonance,
    )
    # norm drift can push |beta|^2 a few ulp past 1; emit physical values
    p_num = np.clip(run.success_probabilities(), 0.0, 1.0)
    p_w, p_perp = success_probability(scenario, run.times)
    abs_err = np.abs(p_num - p_w)
    max_err = float(np.max(abs_err))
    passed = max_err <= tolerance
    meta.update(max_abs_error=max_err, max_unitarity_drift=run.max_drift, passed=passed)
    rows = zip(run.times.tolist(), p_num.tolist(), np.asarray(p_w).tolist(),
               np.asarray(p_perp).tolist(), abs_err.tolist())
    text = render_table(meta, _SIM_COLUMNS, rows, cfg.format, cfg.precision)
    write_output(text, cfg.out)
    return 0 if passed else 1


_SIM_COLUMNS = ("t", "p_success_numeric", "p_success_closed", "p_failure_closed", "abs_error")


def cmd_fisher(cfg: RunConfig) -> int:
    scenario = _scenario(cfg)
    ff = FisherFunction(scenario, _normalization(cfg))
    path = ProbabilityPath(scenario)
    thetas = np.linspace(0.0, cfg.theta_max, cfg.samples)
    f_closed = np.atleast_1d(ff.fisher(thetas))
    metric = np.atleast_1d(ff.metric(thetas))
    rows = []
    degenerate_rows = 0
    for i, th in enumerate(thetas.tolist()):
        try:
            f_num = fisher_numeric(path, th, h_step=cfg.h_step, allow_fallback=False)
            flag = False
        except (NearDegenerateError, ValueError):
            f_num = float(f_closed[i])  # analytic fallback at degenerate points
            flag = True
            degenerate_rows += 1
        rows.append((th, float(f_closed[i]), f_num, float(metric[i]), flag))
    meta = _shared_meta(cfg, "fisher")
    meta.update(normalization=cfg.normalization, theta_max=cfg.theta_max,
                samples=cfg.samples, degenerate_rows=degenerate_rows)
    text = render_table(meta, ("theta", "fisher_closed", "fisher_numeric", "metric", "degenerate"),
                        rows, cfg.format, cfg.precision)
    write_output(text, cfg.out)
    return 0


def cmd_geodesic(cfg: RunConfig) -> int:
    scenario = _scenario(cfg)
    normalization = _normalization(cfg)
    tolerance = cfg.tolerance if cfg.tolerance is not None else GEODESIC_TOLERANCE
    form = GeodesicForm.EXACT if cfg.form == "exact" else GeodesicForm.ALTERNATE
    solution = geodesic_closed_form(scenario, cfg.theta0, cfg.thetadot0, cfg.xi0, form)

    if cfg.xi_max is not None:
        xi_end = cfg.xi_max
    elif math.isfinite(solution.xi_max):
        xi_end = solution.xi_max
    else:
        xi_end = cfg.xi0 + 10.0

    numeric = solve_geodesic_numeric(
        scenario, cfg.theta0, cfg.thetadot0, cfg.xi0, xi_end, cfg.dxi,
        record_every=cfg.record_every,
    )
    theta_closed = np.atleast_1d(solution.theta(numeric.xi))
    speed = np.atleast_1d(numeric.speeds(normalization))
    abs_err = np.abs(theta_closed - numeric.theta)
    # the tolerance applies over the first 90% of the validity domain;
    # rows beyond the cutoff stay in the table with their larger errors
    if math.isfinite(solution.xi_max):
        cutoff = cfg.xi0 + 0.9 * (solution.xi_max - cfg.xi0)
    else:
        cutoff = math.inf
    window = numeric.xi <= cutoff
    max_err = float(np.max(abs_err[window]))
    passed = max_err <= tolerance

    v = entropic_speed(scenario, cfg.theta0, cfg.thetadot0, normalization)
    length, divergence = path_functionals(
        FisherFunction(scenario, normalization), solution, float(numeric.xi[-1]), cfg.dxi
    )
    meta = _shared_meta(cfg, "geodesic")
    meta.update(
        form=cfg.form, normalization=cfg.normalization,
        theta0=cfg.theta0, thetadot0=cfg.thetadot0, xi0=cfg.xi0,
        xi_end=float(numeric.xi[-1]), dxi=cfg.dxi, record_every=cfg.record_every,
        domain_min=solution.xi_min, domain_max=solution.xi_max,
        domain_exit=numeric.exited,
        v_entropic=v, entropy_rate=v * v, length=length, divergence=divergence,
        tolerance=tolerance, comparison_cutoff=cutoff, max_abs_error=max_err,
        passed=passed,
    )
    rows = zip(numeric.xi.tolist(), theta_closed.tolist(), numeric.theta.tolist(),
               speed.tolist(), abs_err.tolist())
    text = render_table(meta, ("xi", "theta_closed", "theta_numeric", "speed", "abs_error"),
                        rows, cfg.format, cfg.precision)
    write_output(text, cfg.out)
    return 0 if passed else 1


def cmd_report(cfg: RunConfig, scenario_names: Sequence[str]) -> int:
    normalization = _normalization(cfg)
    entries = []
    for name in scenario_names:
        scenario = _scenario(cfg, name)
        v = entropic_speed(scenario, cfg.theta0, cfg.thetadot0, normalization)
        entries.append((name, v, v * v))
    normalizer = efficiency_normalizer([rate for _, _, rate in entries])
    entries.sort(key=lambda e: e[2], reverse=True)
    rows = [
        (name, _FISHER_LABEL[name], v, rate, 1.0 - rate / normalizer, _ANALOGY[name])
        for name, v, rate in entries
    ]
    meta = {
        "command": "report",
        "gamma_over_hbar": cfg.gamma_over_hbar,
        "lambda": cfg.lam,
        "theta0": cfg.theta0,
        "thetadot0": cfg.thetadot0,
        "normalization": cfg.normalization,
        "normalizer": normalizer,
    }
    text = render_table(
        meta,
        ("scenario", "fisher_behavior", "v_entropic", "entropy_rate", "efficiency", "search_analogy"),
        rows, cfg.format, cfg.precision,
    )
    write_output(text, cfg.out)
    return 0


def cmd_region(cfg: RunConfig) -> int:
    n_lam, n_theta = cfg.grid_shape()
    lam_grid = np.logspace(-2.0, 2.0, n_lam)
    theta_grid = np.linspace(0.0, 5.0, n_theta + 1)[1:]
    grid = region_mask(lam_grid, theta_grid)
    meta = {
        "command": "region",
        "z_star": grid.z_star,
        "lambda_points": n_lam,
        "theta0_points": n_theta,
        "lambda_min": float(lam_grid[0]),
        "lambda_max": float(lam_grid[-1]),
        "theta0_min": float(theta_grid[0]),
        "theta0_max": float(theta_grid[-1]),
    }
    rows = (
        (float(grid.lam[i]), float(grid.theta0[j]),
         float(grid.ratio[i, j]), bool(grid.mask[i, j]))
        for i in range(n_lam)
        for j in range(n_theta)
    )
    text = render_table(meta, ("lambda", "theta0", "speed_ratio", "in_region"),
                        rows, cfg.format, cfg.precision)
    write_output(text, cfg.out)
    return 0


def cmd_fields(cfg: RunConfig) -> int:
    scenario = _scenario(cfg)
    driving = DrivingConfig(omega0=cfg.omega0)
    consts = const.dimensionless()
    rows = []
    for t in np.linspace(0.0, cfg.t_max, cfg.samples).tolist():
        b = field_components(scenario.profile, driving, consts, t)
        rows.append((t, b.bx, b.by, b.bz, b.b_perp))
    meta = _shared_meta(cfg, "fields")
    meta.update(omega0=cfg.omega0, t_max=cfg.t_max, samples=cfg.samples, normalized=True)
    text = render_table(meta, ("t", "bx", "by", "bz", "b_perp"), rows, cfg.format, cfg.precision)
    write_output(text, cfg.out)
    return 0


def _add_shared_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file; flags win")
    p.add_argument("--scenario", choices=SCENARIO_CHOICES)
    p.add_argument("--gamma-over-hbar", type=float, dest="gamma_over_hbar")
    p.add_argument("--lambda", type=float, dest="lam")
    p.add_argument("--omega0", type=float)
    p.add_argument("--theta0", type=float)
    p.add_argument("--thetadot0", type=float)
    p.add_argument("--xi0", type=float)
    p.add_argument("--t-max", type=float, dest="t_max")
    p.add_argument("--theta-max", type=float, dest="theta_max")
    p.add_argument("--xi-max", type=float, dest="xi_max")
    p.add_argument("--dt", type=float)
    p.add_argument("--dxi", type=float)
    p.add_argument("--h-step", type=float, dest="h_step")
    p.add_argument("--samples", type=int)
    p.add_argument("--grid")
    p.add_argument("--record-every", type=int, dest="record_every")
    p.add_argument("--normalization", choices=("fs", "raw"))
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--precision", type=int)
    p.add_argument("--allow-off-resonance", action="store_const", const=True,
                   default=None, dest="allow_off_resonance")
    p.add_argument("--form", choices=("exact", "alternate"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropath",
        description="Entropic-speed analysis of resonantly driven two-level evolutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("simulate", "integrate the propagator and compare with the closed-form probabilities"),
        ("fisher", "tabulate closed-form and finite-difference Fisher information"),
        ("geodesic", "solve the optimum path numerically and compare with the closed form"),
        ("report", "per-scenario entropic speed, entropy rate, and efficiency"),
        ("region", "exponential-vs-power-law speed comparison grid"),
        ("fields", "laboratory-frame magnetic field components"),
    ):
        _add_shared_flags(sub.add_parser(name, help=text))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = resolve_config(overrides, args.config)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "fisher":
            return cmd_fisher(cfg)
        if args.command == "geodesic":
            return cmd_geodesic(cfg)
        if args.command == "report":
            names = [cfg.scenario] if overrides.get("scenario") else list(SCENARIO_CHOICES)
            return cmd_report(cfg, names)
        if args.command == "region":
            return cmd_region(cfg)
        return cmd_fields(cfg)
    except ConfigError as exc:
        print(f"entropath: config error: {exc}", file=sys.stderr)
        return 2
    except (UnitarityDriftError, StepTooLargeError) as exc:
        print(f"entropath: {exc}", file=sys.stderr)
        return 1
    except (EntropathError, ValueError) as exc:
        print(f"entropath: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
