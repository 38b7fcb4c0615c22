"""Thermal ensembles, success-probability estimation, sweeps, and the
impact-parameter fit.

Initial conditions are phase-space Gaussians per axis (harmonic-basin
Boltzmann statistics) rejection-resampled onto bound states. Success over an
ensemble is a Bernoulli mean with a Wilson 95% interval. Sweeps derive one
child random stream per grid point from the root seed, so results are
bit-identical no matter how points are scheduled across workers.
"""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import MotionProfile, Outcome, PhaseState, cos_window_max, cos_window_min
from .units import KB
from . import dynamics

WILSON_Z = 1.959963984540054  # two-sided 95%
KIND_TAGS = {"acceleration": 1, "guide_depth": 2, "impact_parameter": 3}
MAX_REJECTION_ROUNDS = 200


class SamplingError(RuntimeError):
    pass


class FitError(RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class ThermalSpec:
    temperature: float
    n_samples: int
    seed: int
    dims: str = "1d"

    def __post_init__(self):
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise ValueError(f"temperature must be >= 0, got {self.temperature!r}")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.dims not in ("1d", "3d"):
            raise ValueError(f"dims must be '1d' or '3d', got {self.dims!r}")


def wilson_interval(k, n, z=WILSON_Z):
    """Wilson score interval for k successes out of n."""
    if n <= 0:
        raise ValueError("n must be positive")
    p = k / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    # analytically the interval always contains p; keep that under rounding
    return min(max(0.0, center - half), p), max(min(1.0, center + half), p)


def sample_states(trap, temperature, n, rng, dims="1d", omegas=None):
    """Draw n bound initial states as (n, 6) columns (xi, xi_dot, y, ydot, z, zdot).

    Per axis: position sigma^2 = kB T / (m w_axis^2), velocity sigma^2 = kB T / m,
    rejected until the harmonic-basin energy is below the trap depth. T = 0
    returns exact rest. omegas overrides the per-axis frequencies (defaults to
    the trap frequency on every sampled axis).
    """
    out = np.zeros((n, 6))
    if temperature == 0.0:
        return out
    m, U0 = trap.mass, trap.depth
    kt = KB * temperature
    if kt >= U0 / 2.0:
        # estimate the acceptance of one batch so the error is informative
        probe = _bound_fraction(trap, temperature, dims, omegas)
        raise SamplingError(
            f"kB*T = {kt:.3e} J >= half the trap depth {U0:.3e} J; rejection sampling "
            f"stalls (acceptance ~ {probe:.1%})"
        )
    axes = (0,) if dims == "1d" else (0, 1, 2)
    if omegas is None:
        omegas = tuple(trap.omega for _ in axes)
    sv = math.sqrt(kt / m)
    sx = [math.sqrt(kt / m) / w for w in omegas]

    def energy(pos, vel):
        e = 0.5 * m * (vel**2).sum(axis=1)
        for j, w in enumerate(omegas):
            e += 0.5 * m * w * w * pos[:, j] ** 2
        return e

    pos = np.zeros((n, len(axes)))
    vel = np.zeros((n, len(axes)))
    bad = np.ones(n, dtype=bool)
    for _ in range(MAX_REJECTION_ROUNDS):
        k = int(bad.sum())
        if k == 0:
            break
        for j in range(len(axes)):
            pos[bad, j] = rng.normal(0.0, sx[j], k)
        vel[bad] = rng.normal(0.0, sv, (k, len(axes)))
        bad = energy(pos, vel) >= U0
    else:
        raise SamplingError(f"rejection sampling did not converge (acceptance ~ {1 - bad.mean():.1%})")
    for j, axis in enumerate(axes):
        out[:, 2 * axis] = pos[:, j]
        out[:, 2 * axis + 1] = vel[:, j]
    return out


def _bound_fraction(trap, temperature, dims, omegas, n=4096):
    rng = np.random.default_rng(0)
    m, kt = trap.mass, KB * temperature
    axes = 1 if dims == "1d" else 3
    if omegas is None:
        omegas = (trap.omega,) * axes
    pos = rng.normal(0.0, 1.0, (n, axes)) * (math.sqrt(kt / m) / np.asarray(omegas))
    vel = rng.normal(0.0, math.sqrt(kt / m), (n, axes))
    e = 0.5 * m * (vel**2).sum(axis=1) + 0.5 * m * ((np.asarray(omegas) * pos) ** 2).sum(axis=1)
    return float((e < trap.depth).mean())


def sample_initial(trap, thermal, rng, omegas=None):
    """One draw as a PhaseState."""
    s = sample_states(trap, thermal.temperature, 1, rng, thermal.dims, omegas)[0]
    return PhaseState(*s)


def _success_analytic(trap, length, a, xi0, v0):
    """Vectorized closed-form success test, general bound initial conditions."""
    profile = MotionProfile(a, length)
    w, d = trap.omega, trap.width
    t1, t2, tf = profile.t1, profile.t2, profile.tf
    th1 = w * t1
    eq1 = -a / w**2
    u1 = xi0 - eq1
    ph1 = np.arctan2(-v0 / w, u1)
    A1 = np.hypot(u1, v0 / w)
    hi1 = eq1 + A1 * cos_window_max(ph1, th1)
    lo1 = eq1 + A1 * cos_window_min(ph1, th1)
    ok1 = (hi1 <= d) & (lo1 >= -d)
    xi1 = eq1 + A1 * np.cos(ph1 + th1)
    v1 = -A1 * w * np.sin(ph1 + th1)
    xi2 = xi1 + v1 * (t2 - t1)
    ok2 = np.abs(xi2) <= d
    eq3 = profile.decel / w**2
    u3 = xi2 - eq3
    A2 = np.hypot(u3, v1 / w)
    th2 = np.arctan2(-v1 / w, u3)
    span3 = w * (tf - t2)
    hi3 = eq3 + A2 * cos_window_max(th2, span3)
    lo3 = eq3 + A2 * cos_window_min(th2, span3)
    ok3 = (hi3 <= d) & (lo3 >= -d)
    return ok1 & ok2 & ok3


@dataclass(frozen=True)
class SuccessEstimate:
    p_hat: float
    ci_low: float
    ci_high: float
    n: int
    n_success: int


def _estimate(successes, n):
    k = int(successes)
    lo, hi = wilson_interval(k, n)
    return SuccessEstimate(k / n, lo, hi, n, k)


def success_probability(trap, length, a, thermal, mode="analytic1d", flight_depth=0.0, rng=None):
    """Monte Carlo success probability of one throw at one acceleration.

    mode "analytic1d" evaluates the closed form per sample (flight_depth must
    be 0); "numeric1d" and "numeric3d" integrate the hard-edge and smooth
    models. T = 0 collapses to the single deterministic rest trajectory,
    reported at the requested sample count.
    """
    if rng is None:
        rng = np.random.default_rng(thermal.seed)
    n = thermal.n_samples
    if mode == "analytic1d":
        if flight_depth != 0.0:
            raise ValueError("analytic mode requires flight_depth = 0")
        if thermal.temperature == 0.0:
            ok = bool(_success_analytic(trap, length, a, np.zeros(1), np.zeros(1))[0])
            return _estimate(n if ok else 0, n)
        s = sample_states(trap, thermal.temperature, n, rng, "1d")
        ok = _success_analytic(trap, length, a, s[:, 0], s[:, 1])
        return _estimate(ok.sum(), n)

    profile = MotionProfile(a, length, flight_depth=flight_depth)
    if mode == "numeric1d":
        model, dims, omegas = "harmonic1d", "1d", None
    elif mode == "numeric3d":
        model, dims = "gaussian3d", "3d"
        w = math.sqrt(2.0) * trap.width
        wr = math.sqrt(4.0 * trap.depth / (trap.mass * w**2))
        omegas = (wr, wr, wr / 5.0)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if thermal.temperature == 0.0:
        res = dynamics.throw_catch_batch(trap, profile, None, model=model)
        ok = res.outcomes[0] == Outcome.SUCCESS if model == "harmonic1d" else bool(res.captured[0])
        return _estimate(n if ok else 0, n)
    s = sample_states(trap, thermal.temperature, n, rng, dims, omegas)
    res = dynamics.throw_catch_batch(trap, profile, s, model=model)
    if model == "harmonic1d":
        k = sum(1 for o in res.outcomes if o == Outcome.SUCCESS)
    else:
        k = int(res.captured.sum())
    return _estimate(k, n)


def low_accel_approx(trap, length, a, temperature):
    """Closed-form low-acceleration success estimate, clamped to [0, 1].

    P = sqrt((4 d / (pi l)) * (U0 / kB T) * (a / a_max)). Documented validity
    a/a_max <~ 0.01; see the asymptotic tests for how this compares to the
    Monte Carlo result.
    """
    a = np.asarray(a, dtype=float)
    if temperature == 0.0:
        out = np.ones_like(a)
        return out if out.ndim else float(out)
    pref2 = (4.0 * trap.width / (math.pi * length)) * (trap.depth / (KB * temperature))
    out = np.clip(np.sqrt(pref2 * a / trap.a_max), 0.0, 1.0)
    return out if out.ndim else float(out)


@dataclass
class SweepResult:
    control_name: str
    points: list  # (control_value, p_hat, ci_low, ci_high, n) tuples
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = [p[0] for p in self.points]
        if vals != sorted(vals):
            raise ValueError("sweep points must be sorted by control value")
        for _, p, lo, hi, _ in self.points:
            if not (0.0 <= lo <= p <= hi <= 1.0):
                raise ValueError("confidence bounds must satisfy 0 <= lo <= p <= hi <= 1")

    def to_csv_string(self):
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["control_value", "p_hat", "ci_low", "ci_high", "n"])
        for cv, p, lo, hi, n in self.points:
            wr.writerow([repr(float(cv)), repr(float(p)), repr(float(lo)), repr(float(hi)), int(n)])
        return buf.getvalue()

    @classmethod
    def from_csv_string(cls, text, control_name="control", metadata=None):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["control_value", "p_hat", "ci_low", "ci_high", "n"]:
            raise ValueError("unrecognized sweep CSV header")
        pts = [(float(a), float(b), float(c), float(d), int(e)) for a, b, c, d, e in rows[1:]]
        return cls(control_name, pts, metadata or {})


def point_rng(seed, kind, index):
    """Independent child stream for one sweep point, derived from the root seed."""
    ss = np.random.SeedSequence(entropy=(int(seed), KIND_TAGS[kind], int(index)))
    return np.random.Generator(np.random.Philox(ss))


def sweep(kind, grid, trap, length, thermal, mode="analytic1d", flight_depth=0.0,
          accel=None, static_depth=None, occupied=True, waist=None, progress=None):
    """Estimate success across a control grid with per-point child streams.

    kind "acceleration" scans the throw acceleration; "guide_depth" scans the
    coast-segment trap depth at fixed accel; "impact_parameter" scans the
    offset of an en-route static tweezer at fixed accel. Per-point failures
    are collected in metadata["failures"] without aborting the rest.
    """
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("empty sweep grid")
    if grid != sorted(grid):
        raise ValueError("sweep grid must be sorted ascending")
    if kind not in KIND_TAGS:
        raise ValueError(f"unknown sweep kind {kind!r}")
    if kind in ("guide_depth", "impact_parameter") and accel is None:
        raise ValueError(f"{kind} sweep needs a fixed accel")
    if kind == "impact_parameter" and static_depth is None:
        raise ValueError("impact_parameter sweep needs static_depth")

    points, failures = [], {}
    for i, cv in enumerate(grid):
        rng = point_rng(thermal.seed, kind, i)
        try:
            if kind == "acceleration":
                est = success_probability(trap, length, cv, thermal, mode, flight_depth, rng)
            elif kind == "guide_depth":
                m = mode if mode != "analytic1d" else "numeric1d"  # finite depth needs the integrator
                est = success_probability(trap, length, accel, thermal, m, cv, rng)
            else:
                est = _impact_point(trap, length, accel, cv, thermal, static_depth, occupied, waist, rng)
            points.append((cv, est.p_hat, est.ci_low, est.ci_high, est.n))
        except (ValueError, RuntimeError) as exc:
            failures[i] = f"{type(exc).__name__}: {exc}"
        if progress is not None:
            progress(i + 1, len(grid))
    meta = {
        "kind": kind,
        "mode": mode,
        "seed": thermal.seed,
        "n_samples": thermal.n_samples,
        "temperature_K": thermal.temperature,
        "length_m": length,
        "trap": {"mass_kg": trap.mass, "depth_J": trap.depth, "width_m": trap.width},
        "failures": failures,
    }
    if accel is not None:
        meta["accel_m_s2"] = accel
    if static_depth is not None:
        meta["static_depth_J"] = static_depth
    name = {"acceleration": "accel_m_s2", "guide_depth": "flight_depth_J",
            "impact_parameter": "impact_b_m"}[kind]
    return SweepResult(name, points, meta)


def _impact_point(trap, length, accel, b, thermal, static_depth, occupied, waist, rng):
    profile = MotionProfile(accel, length)
    w = waist if waist is not None else math.sqrt(2.0) * trap.width
    wr = math.sqrt(4.0 * trap.depth / (trap.mass * w**2))
    omegas = (wr, wr, wr / 5.0)
    n = thermal.n_samples
    flyer = sample_states(trap, thermal.temperature, n, rng, "3d", omegas)
    static_init = None
    if occupied:
        ws = math.sqrt(4.0 * static_depth / (trap.mass * w**2))
        stat_trap = type(trap)(trap.mass, static_depth, trap.width)
        static_init = sample_states(stat_trap, thermal.temperature, n, rng, "3d", (ws, ws, ws / 5.0))
    ok, _ = dynamics.scattering_batch(trap, profile, static_depth, b, flyer, static_init,
                                      occupied=occupied, waist=waist)
    return _estimate(ok.sum(), n)


@dataclass(frozen=True)
class FitResult:
    offset: float
    alpha: float
    beta: float
    gamma: float
    residual: float


def _twin_dip_sse(b, y, beta, gamma):
    g = np.exp(-((b - gamma) ** 2) / beta) + np.exp(-((b + gamma) ** 2) / beta)
    design = np.column_stack([np.ones_like(b), -g])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    r = y - design @ coef
    return float(r @ r), float(coef[0]), float(coef[1])


def fit_double_gaussian(sweep_result):
    """Fit p(b) = offset - alpha e^{-(b-gamma)^2/beta} - alpha e^{-(b+gamma)^2/beta}.

    Coarse grid over (beta, gamma) with (offset, alpha) solved linearly at each
    candidate, then derivative-free simplex refinement in scaled coordinates.
    """
    pts = sweep_result.points
    if len(pts) < 7:
        raise ValueError(f"need at least 7 points to fit, got {len(pts)}")
    b = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    scale = float(np.max(np.abs(b)))
    if scale == 0:
        raise ValueError("degenerate grid: all impact parameters zero")

    gammas = np.linspace(0.0, scale, 41)
    betas = np.geomspace((scale / 40.0) ** 2, (2.0 * scale) ** 2, 41)
    best = None
    for gm in gammas:
        for bt in betas:
            sse, off, al = _twin_dip_sse(b, y, bt, gm)
            if best is None or sse < best[0]:
                best = (sse, off, al, bt, gm)

    def objective(q):
        bt = math.exp(q[0]) * scale**2
        gm = abs(q[1]) * scale
        return _twin_dip_sse(b, y, bt, gm)[0]

    x0 = np.array([math.log(best[3] / scale**2), best[4] / scale])
    res = None
    for _ in range(2):  # simplex restart tightens the noiseless optimum
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-24, "maxiter": 4000})
        x0 = res.x
    if not res.success and res.fun > best[0]:
        raise FitError(
            f"simplex refinement failed: {res.message}",
            best=FitResult(best[1], best[2], best[3], best[4], math.sqrt(best[0] / len(b))),
        )
    beta = math.exp(res.x[0]) * scale**2
    gamma = abs(res.x[1]) * scale
    sse, offset, alpha = _twin_dip_sse(b, y, beta, gamma)
    return FitResult(offset, alpha, beta, gamma, math.sqrt(sse / len(b)))
