"""Closed-form trap-frame dynamics of a thrown-and-caught atom.

The tweezer is modeled as a truncated harmonic well of depth U0 and
half-width d riding a piecewise-constant-acceleration schedule: accelerate
over the first stretch of the transport length, coast (trap off or dimmed),
then decelerate to rest at the destination. In the co-moving frame the atom
obeys a driven harmonic oscillator while the trap is on, so each segment has
an exact amplitude/phase solution and the whole trajectory is closed form.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi


class Outcome(Enum):
    SUCCESS = "success"
    ESCAPE_THROW = "escape_throw"
    RECAPTURE_FAIL = "recapture_fail"
    ESCAPE_CATCH = "escape_catch"
    ESCAPE_TRANSVERSE = "escape_transverse"
    LOST = "lost"


@dataclass(frozen=True)
class TrapParams:
    """Static tweezer parameters. depth in joules, width = half-width d."""

    mass: float
    depth: float
    width: float

    def __post_init__(self):
        for name in ("mass", "depth", "width"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"TrapParams.{name} must be a positive finite number, got {v!r}")

    @property
    def omega(self):
        return math.sqrt(2.0 * self.depth / (self.mass * self.width**2))

    @property
    def a_max(self):
        return self.depth / (self.mass * self.width)


def trap_frequency(trap):
    """Small-oscillation angular frequency at the well bottom, sqrt(2 U0 / m d^2)."""
    return trap.omega


def max_acceleration(trap):
    """Largest sustainable tweezer acceleration U0/(m d), equal to d*omega^2/2."""
    return trap.a_max


@dataclass(frozen=True)
class MotionProfile:
    """Piecewise tweezer schedule: accelerate / coast / decelerate.

    accel applies over the first fraction of the length; the deceleration
    magnitude is accel*f1/f3 so the center comes to rest exactly at x=length.
    flight_depth is the absolute trap depth (J) during the coast segment,
    0 meaning fully off.
    """

    accel: float
    length: float
    fractions: tuple = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    flight_depth: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.accel) and self.accel > 0):
            raise ValueError(f"accel must be positive, got {self.accel!r}")
        if not (math.isfinite(self.length) and self.length > 0):
            raise ValueError(f"length must be positive, got {self.length!r}")
        f = tuple(float(x) for x in self.fractions)
        if len(f) != 3 or any(x < 0 for x in f) or abs(sum(f) - 1.0) > 1e-9:
            raise ValueError(f"fractions must be 3 non-negative numbers summing to 1, got {self.fractions!r}")
        if f[0] <= 0 or f[2] <= 0:
            raise ValueError("acceleration and deceleration fractions must be positive")
        if not (math.isfinite(self.flight_depth) and self.flight_depth >= 0):
            raise ValueError(f"flight_depth must be >= 0, got {self.flight_depth!r}")
        object.__setattr__(self, "fractions", f)

    @property
    def t1(self):
        return math.sqrt(2.0 * self.fractions[0] * self.length / self.accel)

    @property
    def release_speed(self):
        # center speed at the end of the acceleration segment
        return self.accel * self.t1

    @property
    def t2(self):
        v = self.release_speed
        return self.t1 + self.fractions[1] * self.length / v

    @property
    def tf(self):
        v = self.release_speed
        return self.t2 + 2.0 * self.fractions[2] * self.length / v

    @property
    def decel(self):
        return self.accel * self.fractions[0] / self.fractions[2]

    def center(self, t):
        """Tweezer center position at time t (scalar or array)."""
        t = np.asarray(t, dtype=float)
        t1, t2, tf = self.t1, self.t2, self.tf
        v = self.release_speed
        l1 = self.fractions[0] * self.length
        l12 = (self.fractions[0] + self.fractions[1]) * self.length
        tau = np.clip(t, None, tf) - t2
        x = np.where(
            t < t1,
            0.5 * self.accel * np.square(np.clip(t, 0.0, None)),
            np.where(t < t2, l1 + v * (t - t1), l12 + v * tau - 0.5 * self.decel * tau**2),
        )
        x = np.where(t >= tf, self.length, x)
        return x if x.ndim else float(x)

    def center_velocity(self, t):
        t = np.asarray(t, dtype=float)
        t1, t2, tf = self.t1, self.t2, self.tf
        v = self.release_speed
        out = np.where(
            t < t1,
            self.accel * np.clip(t, 0.0, None),
            np.where(t < t2, v, v - self.decel * (np.clip(t, None, tf) - t2)),
        )
        out = np.where(t >= tf, 0.0, out)
        return out if out.ndim else float(out)

    def center_accel(self, t):
        t = np.asarray(t, dtype=float)
        out = np.where(t < self.t1, self.accel, np.where(t < self.t2, 0.0, -self.decel))
        out = np.where((t < 0) | (t >= self.tf), 0.0, out)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class PhaseState:
    """Atom displacement and velocity relative to the tweezer center."""

    xi: float
    xi_dot: float
    y: float = 0.0
    y_dot: float = 0.0
    z: float = 0.0
    z_dot: float = 0.0

    def __post_init__(self):
        for name in ("xi", "xi_dot", "y", "y_dot", "z", "z_dot"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"PhaseState.{name} must be finite")


@dataclass(frozen=True)
class PhaseRecord:
    """Boundary snapshot (displacement, relative velocity, phase angle)."""

    xi: float
    xi_dot: float
    theta: float


@dataclass
class Trajectory:
    t: np.ndarray
    xi: np.ndarray
    xi_dot: np.ndarray
    outcome: Outcome
    release: PhaseRecord | None = None
    recapture: PhaseRecord | None = None

    @property
    def samples(self):
        return [(float(tk), PhaseState(float(x), float(v))) for tk, x, v in zip(self.t, self.xi, self.xi_dot)]


def cos_window_max(alpha, span):
    """Max of cos over [alpha, alpha+span], vectorized. span >= 0."""
    k = np.ceil(np.asarray(alpha) / TWO_PI) * TWO_PI
    hit = k <= np.asarray(alpha) + span
    out = np.where(hit, 1.0, np.maximum(np.cos(alpha), np.cos(alpha + span)))
    return out if out.ndim else float(out)


def cos_window_min(alpha, span):
    """Min of cos over [alpha, alpha+span], vectorized."""
    k = np.ceil((np.asarray(alpha) - math.pi) / TWO_PI) * TWO_PI + math.pi
    hit = k <= np.asarray(alpha) + span
    out = np.where(hit, -1.0, np.minimum(np.cos(alpha), np.cos(alpha + span)))
    return out if out.ndim else float(out)


def segment_solution(xi0, v0, equilibrium, omega):
    """Amplitude and phase of xi(tau) = eq + A cos(omega tau + phi) matching (xi0, v0)."""
    u = xi0 - equilibrium
    A = math.hypot(u, v0 / omega)
    phi = math.atan2(-v0 / omega, u)
    return A, phi


def _first_cos_touch(k, phi, span):
    """Smallest angle s in (0, span] with cos(phi + s) == k, or None."""
    if abs(k) > 1.0:
        return None
    base = math.acos(k)
    best = None
    for branch in (base, -base):
        n = math.ceil((phi - branch) / TWO_PI)
        theta = branch + TWO_PI * n
        s = theta - phi
        if s <= 1e-12:  # starting exactly on the level does not count as a crossing
            s += TWO_PI
        if s <= span and (best is None or s < best):
            best = s
    return best


def first_escape_time(xi0, v0, equilibrium, omega, bound, span_time):
    """First t in (0, span_time] where |eq + A cos(w t + phi)| exceeds bound.

    Returns None when the segment stays inside. Assumes |xi0| <= bound at entry;
    a grazing touch that never exceeds the bound is not an escape.
    """
    A, phi = segment_solution(xi0, v0, equilibrium, omega)
    span = omega * span_time
    candidates = []
    if A > 0:
        hi = equilibrium + A * cos_window_max(phi, span)
        lo = equilibrium + A * cos_window_min(phi, span)
        if hi > bound:
            s = _first_cos_touch((bound - equilibrium) / A, phi, span)
            if s is not None:
                candidates.append(s)
        if lo < -bound:
            s = _first_cos_touch((-bound - equilibrium) / A, phi, span)
            if s is not None:
                candidates.append(s)
    if not candidates:
        return None
    return min(candidates) / omega


@dataclass(frozen=True)
class SegmentPlan:
    """Per-segment closed-form coefficients plus the boundary records."""

    eq1: float
    A1: float
    phi1: float
    xi1: float
    xi_dot1: float
    theta1: float
    xi2: float
    xi_dot2: float
    eq3: float
    A2: float
    theta2: float


def solve_segments(trap, profile, init=None):
    """Boundary values of the three-segment closed form for the given start state."""
    if init is None:
        init = PhaseState(0.0, 0.0)
    w = trap.omega
    a = profile.accel
    t1, t2 = profile.t1, profile.t2
    eq1 = -a / w**2
    A1, phi1 = segment_solution(init.xi, init.xi_dot, eq1, w)
    th1 = w * t1
    xi1 = eq1 + A1 * math.cos(phi1 + th1)
    v1 = -A1 * w * math.sin(phi1 + th1)
    xi2 = xi1 + v1 * (t2 - t1)
    eq3 = profile.decel / w**2
    A2, th2 = segment_solution(xi2, v1, eq3, w)
    # theta2 from atan2 satisfies both position and velocity continuity at t2,
    # which fixes the branch of the equivalent arcsin form
    return SegmentPlan(eq1, A1, phi1, xi1, v1, th1, xi2, v1, eq3, A2, th2)


def evaluate_xi(trap, profile, plan, t):
    """Closed-form xi(t) and xi_dot(t) on an array of times."""
    w = trap.omega
    t = np.asarray(t, dtype=float)
    t1, t2 = profile.t1, profile.t2
    ph1 = plan.phi1 + w * np.minimum(t, t1)
    seg1 = plan.eq1 + plan.A1 * np.cos(ph1)
    dseg1 = -plan.A1 * w * np.sin(ph1)
    seg2 = plan.xi1 + plan.xi_dot1 * (np.minimum(t, t2) - t1)
    ph3 = plan.theta2 + w * (t - t2)
    seg3 = plan.eq3 + plan.A2 * np.cos(ph3)
    dseg3 = -plan.A2 * w * np.sin(ph3)
    xi = np.where(t <= t1, seg1, np.where(t <= t2, seg2, seg3))
    xi_dot = np.where(t <= t1, dseg1, np.where(t <= t2, np.full_like(seg2, plan.xi_dot1), dseg3))
    return xi, xi_dot


def analytic_trajectory(trap, profile, init=None, sample_dt=None):
    """Exact piecewise trajectory in the trap frame, truncated at first escape.

    Only the trap-off coast is closed form, so profile.flight_depth must be 0.
    Escape is checked against |xi| <= width while the trap is on; recapture
    failure means |xi| > width at the instant the trap re-engages.
    """
    if profile.flight_depth != 0.0:
        raise ValueError("analytic form requires flight_depth == 0; use the numerical integrator")
    if sample_dt is None or not (math.isfinite(sample_dt) and sample_dt > 0):
        raise ValueError(f"sample_dt must be positive, got {sample_dt!r}")
    if init is not None and any(getattr(init, k) != 0.0 for k in ("y", "y_dot", "z", "z_dot")):
        raise ValueError("analytic trajectory is 1D; transverse components must be zero")

    d = trap.width
    w = trap.omega
    t1, t2, tf = profile.t1, profile.t2, profile.tf
    plan = solve_segments(trap, profile, init)
    release = PhaseRecord(plan.xi1, plan.xi_dot1, plan.theta1)
    recapture = PhaseRecord(plan.xi2, plan.xi_dot2, plan.theta2)

    xi0 = init.xi if init is not None else 0.0
    v0 = init.xi_dot if init is not None else 0.0
    if abs(xi0) > d:
        raise ValueError("initial displacement lies outside the trap")

    outcome = Outcome.SUCCESS
    t_end = tf
    esc1 = first_escape_time(xi0, v0, plan.eq1, w, d, t1)
    if esc1 is not None:
        outcome, t_end = Outcome.ESCAPE_THROW, esc1
        release = recapture = None
    elif abs(plan.xi2) > d:
        outcome, t_end = Outcome.RECAPTURE_FAIL, t2
    else:
        esc3 = first_escape_time(plan.xi2, plan.xi_dot2, plan.eq3, w, d, tf - t2)
        if esc3 is not None:
            outcome, t_end = Outcome.ESCAPE_CATCH, t2 + esc3

    grid = np.arange(0.0, t_end, sample_dt)
    if grid.size == 0 or t_end - grid[-1] > 1e-12 * max(t_end, sample_dt):
        grid = np.append(grid, t_end)
    else:
        grid[-1] = t_end
    xi, xi_dot = evaluate_xi(trap, profile, plan, grid)
    return Trajectory(grid, xi, xi_dot, outcome, release, recapture)
