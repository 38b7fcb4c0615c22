"""Time-domain integration of atoms in moving, depth-scheduled tweezers.

Velocity Verlet in the lab frame. A scene is a list of potential fields
(one moving "dynamic" tweezer plus any static ones) acting on non-interacting
atoms, all the same species. Batches of atoms integrate as (N, 3) arrays, so
Monte Carlo ensembles run in a single pass.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import MotionProfile, Outcome

CAPTURE_RADIUS = 1.5  # normalized ellipsoid radius of the Gaussian capture basin
DT_GUARD_DIVISOR = 50  # dt must resolve the fastest trap period at least this finely
DT_DEFAULT_DIVISOR = 200


class NumericalError(RuntimeError):
    pass


class SceneError(ValueError):
    pass


@dataclass
class PotentialField:
    """A single tweezer potential.

    shape "harmonic": U = s(t) * (U0/d^2) (xi^2 - d^2) for |xi| <= d along x,
    zero outside; the hard edge is the escape bound. shape "gaussian":
    U = -s(t) * U0 * exp(-2 (xi^2+y^2)/w^2) * exp(-2 z^2/wz^2), smooth
    everywhere. s(t) is the depth schedule multiplier in [0, 1].
    """

    shape: str
    depth: float
    width: float
    axial_width: float | None = None
    center: np.ndarray = (0.0, 0.0, 0.0)
    center_path: object = None  # callable t -> (3,)
    depth_schedule: object = None  # callable t -> multiplier in [0, 1]

    def __post_init__(self):
        if self.shape not in ("harmonic", "gaussian"):
            raise SceneError(f"unknown field shape {self.shape!r}")
        if not (self.depth > 0 and self.width > 0):
            raise SceneError("field depth and width must be positive")
        if self.shape == "gaussian" and self.axial_width is None:
            self.axial_width = 5.0 * self.width
        self.center = np.asarray(self.center, dtype=float).reshape(3)

    def omega0(self, mass):
        """Bottom-of-well angular frequency at full depth."""
        if self.shape == "harmonic":
            return math.sqrt(2.0 * self.depth / (mass * self.width**2))
        return math.sqrt(4.0 * self.depth / (mass * self.width**2))

    def center_at(self, t):
        return self.center if self.center_path is None else np.asarray(self.center_path(t), dtype=float)

    def depth_at(self, t):
        if self.depth_schedule is None:
            return 1.0
        s = float(self.depth_schedule(t))
        if not (0.0 <= s <= 1.0) or not math.isfinite(s):
            raise SceneError(f"depth schedule returned {s!r} at t={t:.3e}; must be in [0, 1]")
        return s

    def potential(self, x, t):
        s = self.depth_at(t)
        r = x - self.center_at(t)
        if self.shape == "harmonic":
            xi = r[:, 0]
            inside = np.abs(xi) <= self.width
            return np.where(inside, s * self.depth / self.width**2 * (xi**2 - self.width**2), 0.0)
        g = np.exp(
            -2.0 * (r[:, 0] ** 2 + r[:, 1] ** 2) / self.width**2
            - 2.0 * r[:, 2] ** 2 / self.axial_width**2
        )
        return -s * self.depth * g

    def accel(self, x, t, mass):
        s = self.depth_at(t)
        out = np.zeros_like(x)
        if s == 0.0:
            return out
        r = x - self.center_at(t)
        if self.shape == "harmonic":
            xi = r[:, 0]
            inside = np.abs(xi) <= self.width
            out[:, 0] = np.where(inside, -2.0 * s * self.depth / (mass * self.width**2) * xi, 0.0)
            return out
        g = np.exp(
            -2.0 * (r[:, 0] ** 2 + r[:, 1] ** 2) / self.width**2
            - 2.0 * r[:, 2] ** 2 / self.axial_width**2
        )
        k_r = -4.0 * s * self.depth / (mass * self.width**2)
        k_z = -4.0 * s * self.depth / (mass * self.axial_width**2)
        out[:, 0] = k_r * r[:, 0] * g
        out[:, 1] = k_r * r[:, 1] * g
        out[:, 2] = k_z * r[:, 2] * g
        return out


@dataclass
class Scene:
    fields: list
    x0: np.ndarray
    v0: np.ndarray
    mass: float
    duration: float
    dt: float | None = None
    breakpoints: tuple = ()
    const_accel: np.ndarray = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.fields:
            raise SceneError("scene needs at least one field")
        self.x0 = np.atleast_2d(np.asarray(self.x0, dtype=float))
        self.v0 = np.atleast_2d(np.asarray(self.v0, dtype=float))
        if self.x0.shape != self.v0.shape or self.x0.shape[1] != 3:
            raise SceneError(f"x0/v0 must be matching (N, 3) arrays, got {self.x0.shape} and {self.v0.shape}")
        if not (self.mass > 0 and self.duration > 0):
            raise SceneError("mass and duration must be positive")
        self.const_accel = np.asarray(self.const_accel, dtype=float).reshape(3)
        guard = self.min_period() / DT_GUARD_DIVISOR
        if self.dt is None:
            self.dt = self.min_period() / DT_DEFAULT_DIVISOR
        if self.dt > guard:
            raise SceneError(f"dt = {self.dt:.3e} s too coarse; need <= {guard:.3e} s to resolve the fastest trap")

    def min_period(self):
        return min(2.0 * math.pi / f.omega0(self.mass) for f in self.fields)


@dataclass
class IntegrationResult:
    x: np.ndarray
    v: np.ndarray
    t: float
    sample_t: np.ndarray | None = None
    sample_x: np.ndarray | None = None
    sample_v: np.ndarray | None = None


def integrate(scene, record_every=0, on_step=None):
    """Velocity-Verlet propagation of the whole scene.

    Sub-intervals split at scene.breakpoints so schedule kinks (trap on/off,
    acceleration sign changes) land exactly on step boundaries. on_step, if
    given, is called as on_step(t, x, v) after every step.
    """
    x = scene.x0.copy()
    v = scene.v0.copy()
    mass = scene.mass

    def total_accel(xx, t):
        acc = np.zeros_like(xx) + scene.const_accel
        for f in scene.fields:
            acc += f.accel(xx, t, mass)
        return acc

    edges = [0.0] + sorted(b for b in scene.breakpoints if 0.0 < b < scene.duration) + [scene.duration]
    rec_t, rec_x, rec_v = [], [], []
    if record_every:
        rec_t.append(0.0), rec_x.append(x.copy()), rec_v.append(v.copy())
    step_count = 0
    a = total_accel(x, 0.0)
    for ta, tb in zip(edges[:-1], edges[1:]):
        if tb - ta <= 0:
            continue
        n = max(1, int(math.ceil((tb - ta) / scene.dt - 1e-12)))
        h = (tb - ta) / n
        for i in range(1, n + 1):
            t = tb if i == n else ta + i * h
            x += v * h + 0.5 * a * h * h
            a_new = total_accel(x, t)
            v += 0.5 * (a + a_new) * h
            a = a_new
            step_count += 1
            if on_step is not None:
                on_step(t, x, v)
            if record_every and (step_count % record_every == 0 or (tb == edges[-1] and i == n)):
                rec_t.append(t), rec_x.append(x.copy()), rec_v.append(v.copy())
        if not np.isfinite(x).all():
            raise NumericalError(f"non-finite positions after t = {tb:.3e} s (schedule or dt bug)")
    if record_every:
        return IntegrationResult(x, v, scene.duration, np.array(rec_t), np.array(rec_x), np.array(rec_v))
    return IntegrationResult(x, v, scene.duration)


def captured(field, x, v, t, mass):
    """Energy-and-basin capture test against one field at time t.

    Harmonic: inside the hard width. Gaussian: inside the CAPTURE_RADIUS
    ellipsoid in (width, axial_width) units. Both require total energy
    relative to the well (kinetic + field potential) below zero.
    """
    x = np.atleast_2d(x)
    v = np.atleast_2d(v)
    E = 0.5 * mass * (v**2).sum(axis=1) + field.potential(x, t)
    r = x - field.center_at(t)
    if field.shape == "harmonic":
        basin = np.abs(r[:, 0]) <= field.width
    else:
        rho2 = (r[:, 0] ** 2 + r[:, 1] ** 2) / field.width**2 + r[:, 2] ** 2 / field.axial_width**2
        basin = rho2 < CAPTURE_RADIUS**2
    return (E < 0) & basin


def throw_path(profile, origin=(0.0, 0.0, 0.0)):
    """Center path along +x following the piecewise schedule, from origin."""
    origin = np.asarray(origin, dtype=float).reshape(3)

    def path(t):
        return origin + np.array([profile.center(t), 0.0, 0.0])

    return path


def flight_schedule(profile, full_depth):
    """Depth multiplier: 1 while throwing/catching, flight fraction during coast."""
    frac = profile.flight_depth / full_depth
    if not 0.0 <= frac <= 1.0:
        raise SceneError(f"flight depth {profile.flight_depth!r} outside [0, trap depth]")
    t1, t2 = profile.t1, profile.t2

    def schedule(t):
        return frac if t1 < t < t2 else 1.0

    return schedule


@dataclass
class ThrowResult:
    outcomes: list
    captured: np.ndarray
    x: np.ndarray
    v: np.ndarray
    result: IntegrationResult


def throw_catch_batch(trap, profile, init_states=None, model="harmonic1d", waist=None,
                      axial_waist=None, gravity=(0.0, 0.0, 0.0), dt=None, record_every=0):
    """Integrate a batch of atoms through one throw-catch schedule.

    init_states is (N, 6) columns (xi, xi_dot, y, y_dot, z, z_dot) relative to
    the trap center at t=0, or None for a single rest-start atom. For the
    harmonic 1D model the outcome labels mirror the analytic escape cascade
    (hard |xi| <= width bound per segment); for the Gaussian 3D model the
    outcome is capture at the end, with loss labeled transverse when the
    normalized transverse offset dominates the axial one.
    """
    if init_states is None:
        init_states = np.zeros((1, 6))
    init_states = np.atleast_2d(np.asarray(init_states, dtype=float))
    n = init_states.shape[0]
    t1, t2, tf = profile.t1, profile.t2, profile.tf

    if model == "harmonic1d":
        fld = PotentialField("harmonic", trap.depth, trap.width,
                             center_path=throw_path(profile),
                             depth_schedule=flight_schedule(profile, trap.depth))
    elif model == "gaussian3d":
        w = waist if waist is not None else math.sqrt(2.0) * trap.width
        fld = PotentialField("gaussian", trap.depth, w, axial_width=axial_waist,
                             center_path=throw_path(profile),
                             depth_schedule=flight_schedule(profile, trap.depth))
    else:
        raise ValueError(f"unknown model {model!r}")

    x0 = np.zeros((n, 3))
    v0 = np.zeros((n, 3))
    x0[:, 0] = init_states[:, 0]
    x0[:, 1] = init_states[:, 2]
    x0[:, 2] = init_states[:, 4]
    v0[:, 0] = init_states[:, 1]
    v0[:, 1] = init_states[:, 3]
    v0[:, 2] = init_states[:, 5]

    scene = Scene([fld], x0, v0, trap.mass, tf, dt=dt, breakpoints=(t1, t2), const_accel=gravity)

    stage = np.zeros(n, dtype=int)
    if model == "harmonic1d":
        stage[np.abs(x0[:, 0]) > trap.width] = 1  # born outside the well
        tiny = 1e-9 * tf
        flight_on = profile.flight_depth > 0

        def hook(t, x, v):
            if t1 + tiny < t < t2 - tiny and not flight_on:
                return  # trap off, no bound applies
            if t <= t1 + tiny:
                code = 1
            elif t < t2 - tiny:
                code = 4
            elif t <= t2 + tiny:
                code = 2
            else:
                code = 3
            out = np.abs(x[:, 0] - profile.center(t)) > trap.width
            stage[out & (stage == 0)] = code

        res = integrate(scene, record_every=record_every, on_step=hook)
    else:
        res = integrate(scene, record_every=record_every)

    caught = captured(fld, res.x, res.v, tf, trap.mass)
    outcomes = []
    if model == "harmonic1d":
        label = {0: Outcome.SUCCESS, 1: Outcome.ESCAPE_THROW, 2: Outcome.RECAPTURE_FAIL,
                 3: Outcome.ESCAPE_CATCH, 4: Outcome.LOST}
        outcomes = [label[int(s)] for s in stage]
    else:
        rc = res.x - fld.center_at(tf)
        rho_perp = np.hypot(rc[:, 1] / fld.width, rc[:, 2] / fld.axial_width)
        rho_ax = np.abs(rc[:, 0]) / fld.width
        for i in range(n):
            if caught[i]:
                outcomes.append(Outcome.SUCCESS)
            elif rho_perp[i] > rho_ax[i]:
                outcomes.append(Outcome.ESCAPE_TRANSVERSE)
            else:
                outcomes.append(Outcome.LOST)
    return ThrowResult(outcomes, caught, res.x, res.v, res)


def throw_catch_run(trap, profile, init=None, model="harmonic1d", **kw):
    """Single-atom convenience wrapper; init is a PhaseState or None for rest."""
    if init is not None:
        states = np.array([[init.xi, init.xi_dot, init.y, init.y_dot, init.z, init.z_dot]])
    else:
        states = None
    res = throw_catch_batch(trap, profile, states, model=model, **kw)
    return res.outcomes[0]


def scattering_batch(trap, profile, static_depth, b, flyer_init=None, static_init=None,
                     occupied=True, waist=None, static_waist=None, dt=None):
    """Throw a batch of atoms past a static tweezer offset b from the flight line.

    The static trap sits at (length/2, b, 0). Returns (flyer_captured,
    static_retained); the second is None when the static trap is empty.
    Atoms do not interact, so flyer and resident integrate in one batch.
    """
    length = profile.length
    w = waist if waist is not None else math.sqrt(2.0) * trap.width
    ws = static_waist if static_waist is not None else w
    dyn = PotentialField("gaussian", trap.depth, w,
                         center_path=throw_path(profile),
                         depth_schedule=flight_schedule(profile, trap.depth))
    static_center = np.array([length / 2.0, b, 0.0])
    stat = PotentialField("gaussian", static_depth, ws, center=static_center)

    if flyer_init is None:
        flyer_init = np.zeros((1, 6))
    flyer_init = np.atleast_2d(np.asarray(flyer_init, dtype=float))
    nf = flyer_init.shape[0]
    fx = np.column_stack([flyer_init[:, 0], flyer_init[:, 2], flyer_init[:, 4]])
    fv = np.column_stack([flyer_init[:, 1], flyer_init[:, 3], flyer_init[:, 5]])

    if occupied:
        if static_init is None:
            static_init = np.zeros((nf, 6))
        static_init = np.atleast_2d(np.asarray(static_init, dtype=float))
        sx = static_center + np.column_stack([static_init[:, 0], static_init[:, 2], static_init[:, 4]])
        sv = np.column_stack([static_init[:, 1], static_init[:, 3], static_init[:, 5]])
        x0 = np.vstack([fx, sx])
        v0 = np.vstack([fv, sv])
    else:
        x0, v0 = fx, fv

    scene = Scene([dyn, stat], x0, v0, trap.mass, profile.tf, dt=dt,
                  breakpoints=(profile.t1, profile.t2))
    res = integrate(scene)
    flyer_ok = captured(dyn, res.x[:nf], res.v[:nf], profile.tf, trap.mass)
    static_ok = None
    if occupied:
        static_ok = captured(stat, res.x[nf:], res.v[nf:], profile.tf, trap.mass)
    return flyer_ok, static_ok


def scattering_run(trap, static_depth, b, a, length, occupied=True, flight_depth=0.0, **kw):
    """Single rest-start pass; returns (flyer outcome, resident outcome or None)."""
    profile = MotionProfile(a, length, flight_depth=flight_depth)
    flyer_ok, static_ok = scattering_batch(trap, profile, static_depth, b,
                                           occupied=occupied, **kw)
    flyer = Outcome.SUCCESS if flyer_ok[0] else Outcome.LOST
    resident = None
    if static_ok is not None:
        resident = Outcome.SUCCESS if static_ok[0] else Outcome.LOST
    return flyer, resident
