"""Command-line harness: runs the simulations, writes CSV (plus a JSON
metadata sidecar and an optional SVG plot) into one output directory, and
prints a single summary line.

Every artifact is computed before any file is opened, writes go through a
temp-file rename so partial files never appear, and nothing is written
outside --out. Exit codes: 0 success, 2 configuration, 3 numerics, 4 I/O;
failures print one JSON object on stderr.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import escape, plotting, rearrange, thermal
from .config import ConfigError, default_config
from .core import MotionProfile, analytic_trajectory
from .dynamics import NumericalError
from .escape import RegimeError, RootBracketError
from .thermal import FitError, SamplingError
from .units import KB, UnitError, parse_quantity

_GRID_DEFAULTS = {
    # used when the config's sweep.kind differs from the subcommand's kind
    "acceleration": (0.01, 1.35, 40, "log"),
    "guide_depth": (0.0, 1.0, 11, "linear"),
    "impact_parameter": (-3.0, 3.0, 25, "linear"),
}
_SWEEP_BASE_KIND = {
    "acceleration": "acceleration",
    "guide_depth": "energy",
    "impact_parameter": "length",
}


def _num_or_str(text):
    try:
        return float(text)
    except ValueError:
        return text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config",
                        help="JSON config file; keys merge over the bundled rubidium values")
    common.add_argument("--out", default="results", help="output directory (default: results)")
    common.add_argument("--seed", type=int, help="override thermal.seed")
    common.add_argument("--n", type=int, help="override thermal.n_samples")
    common.add_argument("--T", help="override temperature, e.g. 40uK or an SI number")
    common.add_argument("--a", help="override acceleration: bare number = fraction of "
                                    "a_max, or a suffixed value like 5e4m/s2")
    common.add_argument("--no-plot", action="store_true", help="skip SVG output")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--start", help="grid start (bare number = natural units, see README)")
    grid.add_argument("--stop", help="grid stop")
    grid.add_argument("--points", type=int, help="grid size")
    grid.add_argument("--scale", choices=("log", "linear"), help="grid spacing")
    grid.add_argument("--mode", choices=("analytic1d", "numeric1d", "numeric3d"),
                      help="success-probability estimator")

    p = argparse.ArgumentParser(
        prog="atomtoss",
        description="Throw-and-catch single-atom transport: critical accelerations, "
                    "trajectories, Monte Carlo sweeps, and rearrangement timing.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("criticals", parents=[common],
                   help="critical accelerations and the failure-gap edges")
    sub.add_parser("trajectory", parents=[common],
                   help="closed-form rest-start trajectory at profile.accel")
    sub.add_parser("sweep-a", parents=[common, grid],
                   help="success probability vs throw acceleration")
    sub.add_parser("sweep-guide", parents=[common, grid],
                   help="success probability vs mid-flight guide depth")
    sub.add_parser("sweep-scatter", parents=[common, grid],
                   help="catch probability vs en-route tweezer impact parameter")
    rp = sub.add_parser("repair", parents=[common],
                        help="3x3 lattice vacancy repair, flying vs guided")
    rp.add_argument("--mode", choices=("flying", "guided", "both"), default="both")
    rp.add_argument("--trials", type=int, help="override repair.n_trials")
    pl = sub.add_parser("plan", parents=[common],
                        help="time one rearrangement plan")
    pl.add_argument("--strategy", choices=rearrange.STRATEGIES)
    sc = sub.add_parser("scaling", parents=[common],
                        help="fit rearrangement-time scaling exponent")
    sc.add_argument("--strategy", choices=rearrange.STRATEGIES)
    sc.add_argument("--dims", type=int, choices=(1, 2, 3))
    sc.add_argument("--trials", type=int, help="override scaling.n_trials")
    cr = sub.add_parser("crossover", parents=[common],
                        help="smallest N where flying loses to the hologram bound")
    cr.add_argument("--dims", type=int, choices=(1, 2, 3))
    return p


def _load_config(args):
    cfg = default_config()
    if args.config:
        with open(args.config) as fh:
            cfg = cfg.merged(json.load(fh))
    ov = {}
    if args.seed is not None:
        ov.setdefault("thermal", {})["seed"] = args.seed
        ov.setdefault("repair", {})["seed"] = args.seed
    if args.n is not None:
        ov.setdefault("thermal", {})["n_samples"] = args.n
    if args.T is not None:
        ov.setdefault("thermal", {})["temperature"] = _num_or_str(args.T)
        ov.setdefault("repair", {})["temperature"] = _num_or_str(args.T)
    if args.a is not None:
        v = _num_or_str(args.a)
        ov.setdefault("profile", {})["accel"] = v
        ov.setdefault("sweep", {})["accel"] = v
    return cfg.merged(ov) if ov else cfg


def _csv_text(header, rows):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _stem(cfg):
    return str(cfg.plain("output", "stem", "run"))


def _want_plot(cfg, args):
    return bool(cfg.plain("output", "plot", True)) and not args.no_plot


def _progress(label):
    def cb(i, n):
        end = "\n" if i == n else ""
        print(f"\r{label}: {i}/{n}", end=end, file=sys.stderr, flush=True)
    return cb


def _cmd_criticals(cfg, args):
    trap = cfg.build_trap()
    length = cfg.quantity("geometry", "length", "length")
    crit = escape.critical_accelerations(trap, length)
    named = [
        ("a_max", crit.a_max),
        ("a_theta_3pi", crit.a_theta_3pi),
        ("a_theta_2pi", crit.a_theta_2pi),
        ("a_gap_minus", crit.a_gap_minus),
        ("a_gap_plus", crit.a_gap_plus),
        ("island_end", crit.island_end),
    ]
    rows = [(name, repr(float(v)), repr(float(v / crit.a_max))) for name, v in named]
    meta = {
        "command": "criticals",
        "trap": {"mass_kg": trap.mass, "depth_J": trap.depth, "width_m": trap.width},
        "length_m": length,
        "omega_rad_s": trap.omega,
        "gap_minus_binding": crit.gap_minus_binding.name,
        "values_m_s2": {name: v for name, v in named},
    }
    stem = _stem(cfg)
    summary = (f"a_max={crit.a_max:.6e} m/s2; a(3pi)/a_max={crit.a_theta_3pi / crit.a_max:.4f}; "
               f"a(2pi)/a_max={crit.a_theta_2pi / crit.a_max:.4f}; "
               f"gap=[{crit.a_gap_minus / crit.a_max:.4f}, {crit.a_gap_plus / crit.a_max:.4f}] a_max")
    return summary, {
        f"{stem}-criticals.csv": _csv_text(("quantity", "value_m_s2", "value_per_a_max"), rows),
        f"{stem}-criticals.json": _json_text(meta),
    }


def _cmd_trajectory(cfg, args):
    trap = cfg.build_trap()
    length = cfg.quantity("geometry", "length", "length")
    accel = cfg.scaled_quantity("profile", "accel", "acceleration", trap.a_max,
                                default=0.33 * trap.a_max)
    profile = MotionProfile(accel, length)
    points = int(cfg.plain("profile", "sample_points", 400))
    if points < 2:
        raise ConfigError("profile.sample_points must be >= 2")
    traj = analytic_trajectory(trap, profile, sample_dt=profile.tf / points)
    rows = [(repr(float(t)), repr(float(x)), repr(float(v)))
            for t, x, v in zip(traj.t, traj.xi, traj.xi_dot)]
    meta = {
        "command": "trajectory",
        "accel_m_s2": accel,
        "length_m": length,
        "outcome": traj.outcome.name,
        "t1_s": profile.t1, "t2_s": profile.t2, "tf_s": profile.tf,
        "release_speed_m_s": profile.release_speed,
    }
    stem = _stem(cfg)
    art = {
        f"{stem}-trajectory.csv": _csv_text(("t_s", "xi_m", "xi_dot_m_s"), rows),
        f"{stem}-trajectory.json": _json_text(meta),
    }
    if _want_plot(cfg, args):
        art[f"{stem}-trajectory.svg"] = plotting.trajectory_figure(traj, trap, profile)
    summary = (f"outcome={traj.outcome.name.lower()}; a={accel:.4e} m/s2 "
               f"({accel / trap.a_max:.3f} a_max); tf={profile.tf * 1e6:.2f} us; "
               f"release speed {profile.release_speed:.4f} m/s")
    return summary, art


def _resolve_grid(cfg, args, kind, trap):
    scale = {"acceleration": trap.a_max, "guide_depth": trap.depth,
             "impact_parameter": trap.width}[kind]
    base_kind = _SWEEP_BASE_KIND[kind]
    if cfg.plain("sweep", "kind", "acceleration") == kind:
        start = cfg.scaled_quantity("sweep", "start", base_kind, scale)
        stop = cfg.scaled_quantity("sweep", "stop", base_kind, scale)
        points = int(cfg.plain("sweep", "points"))
        spacing = str(cfg.plain("sweep", "scale", "linear"))
    else:
        s0, s1, points, spacing = _GRID_DEFAULTS[kind]
        start, stop = s0 * scale, s1 * scale

    def _flag(v):
        v = _num_or_str(v)
        if isinstance(v, float):
            return v * scale
        try:
            return parse_quantity(v, base_kind)
        except UnitError as exc:
            raise ConfigError(f"--start/--stop: {exc}") from None

    if args.start is not None:
        start = _flag(args.start)
    if args.stop is not None:
        stop = _flag(args.stop)
    if args.points is not None:
        points = args.points
    if args.scale is not None:
        spacing = args.scale
    if points < 1:
        raise ConfigError(f"sweep needs at least 1 point, got {points}")
    if not (stop > start):
        raise ConfigError(f"sweep grid needs stop > start, got [{start}, {stop}]")
    if spacing == "log":
        if start <= 0:
            raise ConfigError("log-spaced sweep needs a positive start")
        return np.geomspace(start, stop, points), scale
    if spacing != "linear":
        raise ConfigError(f"sweep.scale must be 'log' or 'linear', got {spacing!r}")
    return np.linspace(start, stop, points), scale


def _run_sweep(cfg, args, kind):
    trap = cfg.build_trap()
    length = cfg.quantity("geometry", "length", "length")
    spec = cfg.build_thermal()
    grid, scale = _resolve_grid(cfg, args, kind, trap)
    mode = args.mode or str(cfg.plain("sweep", "mode", "analytic1d"))
    accel = None
    static_depth = None
    occupied = True
    if kind in ("guide_depth", "impact_parameter"):
        accel = cfg.scaled_quantity("sweep", "accel", "acceleration", trap.a_max,
                                    default=0.33 * trap.a_max)
    if kind == "impact_parameter":
        static_depth = cfg.scaled_quantity("sweep", "static_depth", "energy", trap.depth,
                                           default=0.58e-3 * KB)
        occupied = bool(cfg.plain("sweep", "occupied", True))
    result = thermal.sweep(kind, grid, trap, length, spec, mode=mode, accel=accel,
                           static_depth=static_depth, occupied=occupied,
                           progress=_progress(kind))
    if len(result.points) == 0:
        first = next(iter(result.metadata["failures"].values()), "no points computed")
        raise NumericalError(f"every sweep point failed; first failure: {first}")
    return trap, length, spec, result, scale


_SWEEP_AXIS = {
    "acceleration": ("a / a_max", 1.0),
    "guide_depth": ("guide depth / trap depth", 1.0),
    "impact_parameter": ("impact parameter (um)", 1e6),
}


def _sweep_artifacts(cfg, args, name, result, scale, overlays=(), extra_meta=None):
    stem = _stem(cfg)
    meta = dict(result.metadata)
    meta["command"] = name
    if extra_meta:
        meta.update(extra_meta)
    art = {
        f"{stem}-{name}.csv": result.to_csv_string(),
        f"{stem}-{name}.json": _json_text(meta),
    }
    if _want_plot(cfg, args) and len(result.points) >= 2:
        kind = result.metadata["kind"]
        label, to_plot = _SWEEP_AXIS[kind]
        # natural units for the figure: fractions of the trap scale, or um
        factor = to_plot if kind == "impact_parameter" else 1.0 / scale
        pts = [(cv * factor, p, lo, hi, n) for cv, p, lo, hi, n in result.points]
        plot_res = thermal.SweepResult(result.control_name, pts)
        scaled_overlays = [(np.asarray(ox) * factor, oy, ol) for ox, oy, ol in overlays]
        style = {"xlabel": label, "logx": kind == "acceleration"}
        art[f"{stem}-{name}.svg"] = plotting.emit_plot(plot_res, style, scaled_overlays)
    return art


def _cmd_sweep_a(cfg, args):
    trap, length, spec, result, scale = _run_sweep(cfg, args, "acceleration")
    xs = np.array([p[0] for p in result.points])
    ps = np.array([p[1] for p in result.points])
    approx = thermal.low_accel_approx(trap, length, xs, spec.temperature)
    best = int(np.argmax(ps))
    summary = (f"{len(result.points)} points; max p={ps[best]:.3f} at "
               f"a={xs[best] / trap.a_max:.3f} a_max; n={spec.n_samples}/point")
    art = _sweep_artifacts(cfg, args, "sweep-a", result, scale,
                           overlays=[(xs, approx, "low-a closed form")])
    return summary, art


def _cmd_sweep_guide(cfg, args):
    trap, length, spec, result, scale = _run_sweep(cfg, args, "guide_depth")
    ps = [p[1] for p in result.points]
    summary = (f"{len(result.points)} points; p ranges [{min(ps):.3f}, {max(ps):.3f}]; "
               f"p(Uc=0 end)={ps[0]:.3f}, p(max Uc end)={ps[-1]:.3f}")
    return summary, _sweep_artifacts(cfg, args, "sweep-guide", result, scale)


def _cmd_sweep_scatter(cfg, args):
    trap, length, spec, result, scale = _run_sweep(cfg, args, "impact_parameter")
    overlays = []
    extra = {}
    fit_note = "fit skipped (needs >= 7 points)"
    if len(result.points) >= 7:
        try:
            fit = thermal.fit_double_gaussian(result)
            xs = np.array([p[0] for p in result.points])
            dense = np.linspace(xs[0], xs[-1], 200)
            curve = (fit.offset
                     - fit.alpha * np.exp(-((dense - fit.gamma) ** 2) / fit.beta)
                     - fit.alpha * np.exp(-((dense + fit.gamma) ** 2) / fit.beta))
            overlays.append((dense, curve, "double-Gaussian fit"))
            extra["fit"] = {"offset": fit.offset, "alpha": fit.alpha,
                            "beta_m2": fit.beta, "gamma_m": fit.gamma,
                            "residual_rms": fit.residual}
            fit_note = (f"fit offset={fit.offset:.3f} alpha={fit.alpha:.3f} "
                        f"beta={fit.beta * 1e12:.3f}um2 gamma={fit.gamma * 1e6:.3f}um")
        except (FitError, ValueError) as exc:
            extra["fit_error"] = f"{type(exc).__name__}: {exc}"
            fit_note = "fit failed (see metadata)"
    summary = f"{len(result.points)} points; {fit_note}"
    return summary, _sweep_artifacts(cfg, args, "sweep-scatter", result, scale,
                                     overlays=overlays, extra_meta=extra)


def _cmd_repair(cfg, args):
    trap = cfg.build_trap()
    lam = cfg.quantity("geometry", "lattice_spacing", "length", 4.2e-6)
    temp = cfg.quantity("repair", "temperature", "temperature",
                        cfg.quantity("thermal", "temperature", "temperature", 0.0))
    n_trials = args.trials if args.trials is not None else int(cfg.plain("repair", "n_trials", 300))
    kw = dict(
        temperature=temp,
        n_trials=n_trials,
        seed=int(cfg.plain("repair", "seed", 0)),
        dynamic_depth=cfg.quantity("repair", "dynamic_depth", "energy", 1.94e-3 * KB),
        static_depth=cfg.quantity("repair", "static_depth", "energy", 0.58e-3 * KB),
        spacing=lam,
        trap_width=trap.width,
        mass=trap.mass,
        accel_fraction=float(cfg.plain("repair", "accel_fraction", 0.10)),
        include_statics=bool(cfg.plain("repair", "include_statics", True)),
    )
    modes = ("flying", "guided") if args.mode == "both" else (args.mode,)
    results = []
    for m in modes:
        print(f"repair: {m} ({n_trials} trials)", file=sys.stderr, flush=True)
        results.append(rearrange.repair_scene(m, **kw))
    rows = [(r.mode, repr(r.p_hat), repr(r.ci_low), repr(r.ci_high), r.n_trials)
            for r in results]
    meta = {"command": "repair", "temperature_K": temp, "spacing_m": lam,
            "results": {r.mode: {"p_hat": r.p_hat, "ci": [r.ci_low, r.ci_high],
                                 "n": r.n_trials} for r in results}}
    parts = [f"{r.mode} p={r.p_hat:.3f} [{r.ci_low:.3f}, {r.ci_high:.3f}]" for r in results]
    if len(results) == 2:
        se = [math.sqrt(max(r.p_hat * (1 - r.p_hat), 0.0) / r.n_trials) for r in results]
        gap = results[0].p_hat - results[1].p_hat
        denom = math.hypot(*se)
        sep = gap / denom if denom > 0 else math.copysign(math.inf, gap) if gap else 0.0
        meta["separation_se"] = sep
        parts.append(f"separation {sep:.1f} SE" if math.isfinite(sep) else "separation inf SE")
    stem = _stem(cfg)
    return "; ".join(parts), {
        f"{stem}-repair.csv": _csv_text(("mode", "p_hat", "ci_low", "ci_high", "n"), rows),
        f"{stem}-repair.json": _json_text(meta),
    }


def _cmd_plan(cfg, args):
    trap = cfg.build_trap()
    lam = cfg.quantity("geometry", "lattice_spacing", "length", 4.2e-6)
    problem = rearrange.ArrayProblem.from_dict(cfg.plain("plan", "problem"), lam)
    strategy = args.strategy or str(cfg.plain("plan", "strategy", "flying"))
    f_p = cfg.quantity("plan", "f_p", "frequency", 40.0)
    frac = float(cfg.plain("plan", "accel_fraction", 0.33))
    report = rearrange.plan_and_time(problem, strategy, trap, f_p=f_p, accel_fraction=frac)
    n_atoms = int(problem.occupancy.sum())
    conv = rearrange.guided_convention_time(n_atoms, lam, trap.a_max)
    rows = [(s, v, repr(d)) for s, v, d in report.moves]
    meta = {"command": "plan", "strategy": strategy, "n_moves": report.n_moves,
            "total_time_s": report.total_time, "n_atoms": n_atoms,
            "guided_convention_time_s": conv, "accel_fraction": frac, "f_p_Hz": f_p}
    stem = _stem(cfg)
    summary = (f"{strategy}: {report.n_moves} moves, total {report.total_time:.6e} s; "
               f"guided 2N-convention estimate {conv:.6e} s")
    return summary, {
        f"{stem}-plan.csv": _csv_text(("from_site", "to_site", "duration_s"), rows),
        f"{stem}-plan.json": _json_text(meta),
    }


def _cmd_scaling(cfg, args):
    trap = cfg.build_trap()
    lam = cfg.quantity("geometry", "lattice_spacing", "length", 4.2e-6)
    dims = args.dims if args.dims is not None else int(cfg.plain("scaling", "dims", 2))
    n_list = [int(n) for n in cfg.plain("scaling", "n_list", [64, 256, 1024, 4096])]
    n_trials = args.trials if args.trials is not None else int(cfg.plain("scaling", "n_trials", 200))
    strategy = args.strategy or str(cfg.plain("scaling", "strategy", "flying"))
    f_p = cfg.quantity("scaling", "f_p", "frequency", 40.0)
    frac = float(cfg.plain("scaling", "accel_fraction", 0.33))
    seed = int(cfg.plain("thermal", "seed", 0))
    res = rearrange.scaling_experiment(dims, n_list, n_trials, seed, strategy, trap,
                                       spacing=lam, f_p=f_p, accel_fraction=frac,
                                       progress=_progress(f"scaling {strategy} {dims}d"))
    rows = [(n, repr(t)) for n, t in zip(res.n_list, res.mean_times)]
    meta = {"command": "scaling", "strategy": strategy, "dims": dims,
            "n_trials": n_trials, "seed": seed, "exponent": res.exponent,
            "stderr": res.stderr}
    stem = _stem(cfg)
    art = {
        f"{stem}-scaling.csv": _csv_text(("n_atoms", "mean_time_s"), rows),
        f"{stem}-scaling.json": _json_text(meta),
    }
    if _want_plot(cfg, args):
        art[f"{stem}-scaling.svg"] = plotting.scaling_figure(
            res.n_list, res.mean_times, res.exponent, f"{strategy}, {dims}d")
    summary = (f"{strategy} {dims}d: exponent {res.exponent:.3f} +/- {res.stderr:.3f} "
               f"over N={list(res.n_list)}")
    return summary, art


def _cmd_crossover(cfg, args):
    trap = cfg.build_trap()
    lam = cfg.quantity("geometry", "lattice_spacing", "length", 4.2e-6)
    dims = args.dims if args.dims is not None else int(cfg.plain("crossover", "dims", 2))
    f_p = cfg.quantity("crossover", "f_p", "frequency", 40.0)
    path = cfg.quantity("crossover", "path_length", "length", 3e-6)
    holo_w = cfg.quantity("crossover", "hologram_width", "length", trap.width)
    n_lo = int(cfg.plain("crossover", "n_lo", 16))
    n_hi = int(cfg.plain("crossover", "n_hi", 4096))
    n_trials = int(cfg.plain("crossover", "n_trials", 8))
    frac = float(cfg.plain("crossover", "accel_fraction", 0.33))
    seed = int(cfg.plain("thermal", "seed", 0))
    res = rearrange.crossover(dims, trap, f_p, path, lam, (n_lo, n_hi),
                              n_trials=n_trials, seed=seed, accel_fraction=frac,
                              hologram_width=holo_w)
    rows = [(n, repr(t)) for n, t in res.probes]
    meta = {"command": "crossover", "dims": dims, "t_hologram_s": res.t_hologram,
            "n_star": res.n_star, "n_range": [n_lo, n_hi], "n_trials": n_trials,
            "seed": seed}
    stem = _stem(cfg)
    if res.n_star is None:
        summary = (f"no crossover in [{n_lo}, {n_hi}]: mean flying time stays below "
                   f"the hologram bound t_H={res.t_hologram:.4f} s ({dims}d)")
    else:
        summary = (f"flying exceeds the hologram bound t_H={res.t_hologram:.4f} s "
                   f"from N={res.n_star} ({dims}d)")
    return summary, {
        f"{stem}-crossover.csv": _csv_text(("n_atoms", "mean_flying_time_s"), rows),
        f"{stem}-crossover.json": _json_text(meta),
    }


_COMMANDS = {
    "criticals": _cmd_criticals,
    "trajectory": _cmd_trajectory,
    "sweep-a": _cmd_sweep_a,
    "sweep-guide": _cmd_sweep_guide,
    "sweep-scatter": _cmd_sweep_scatter,
    "repair": _cmd_repair,
    "plan": _cmd_plan,
    "scaling": _cmd_scaling,
    "crossover": _cmd_crossover,
}


def _fail(code, exc):
    print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc),
                                "exit_code": code}}), file=sys.stderr)
    return code


def _atomic_write(path, text):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        summary, artifacts = _COMMANDS[args.command](cfg, args)
    except (RegimeError, RootBracketError, NumericalError, SamplingError, FitError) as exc:
        return _fail(3, exc)
    except (ConfigError, UnitError, ValueError) as exc:
        return _fail(2, exc)
    except OSError as exc:
        return _fail(4, exc)
    try:
        os.makedirs(args.out, exist_ok=True)
        for name, text in artifacts.items():
            _atomic_write(os.path.join(args.out, name), text)
    except OSError as exc:
        return _fail(4, exc)
    print(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
