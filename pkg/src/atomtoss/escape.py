"""Outcome classification and critical accelerations for rest-start throws.

For an atom starting at rest the three-segment closed form reduces to a few
symbol relations in theta1 = omega*t1, and the whole success/failure structure
as a function of acceleration comes out of window extrema of a cosine. The
boundaries between regimes are roots of a scalar function of a, located by
sign scan plus bisection.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    MotionProfile,
    Outcome,
    PhaseRecord,
    Trajectory,
    analytic_trajectory,
    cos_window_max,
    cos_window_min,
    solve_segments,
)

GRID_POINTS = 2000  # log-spaced scan used to bracket roots
REL_TOL = 1e-10


class RegimeError(ValueError):
    """Geometry or acceleration outside the theta1 > pi regime the closed
    cascade covers."""


class RootBracketError(RuntimeError):
    """Sign scan failed to bracket the expected roots."""

    def __init__(self, message, sign_pattern=None):
        super().__init__(message)
        self.sign_pattern = sign_pattern


@dataclass(frozen=True)
class EscapeReport:
    accel: float
    theta1: float
    max_disp_throw: float
    xi2: float
    max_disp_catch: float
    outcome: Outcome


@dataclass(frozen=True)
class CriticalAccels:
    a_max: float
    a_theta_3pi: float
    a_theta_2pi: float
    a_gap_minus: float
    a_gap_plus: float
    island_end: float
    gap_minus_binding: Outcome

    def __post_init__(self):
        ok = (
            0 < self.a_theta_3pi < self.a_theta_2pi
            and 0 < self.a_gap_minus < self.a_gap_plus < self.a_max
        )
        if not ok:
            raise ValueError("critical accelerations out of order; geometry outside the modeled regime")


def _check_regime(trap, length):
    lmin = 3.0 * math.pi**2 * trap.width / 4.0
    if length <= lmin:
        raise RegimeError(
            f"transport length {length:.3e} m too short: need length > 3*pi^2*d/4 = {lmin:.3e} m "
            "so the release phase exceeds pi at all accelerations up to a_max"
        )


def theta1_of(trap, length, a):
    """Release phase omega*t1 for a rest-start thirds schedule."""
    return trap.omega * np.sqrt(2.0 * length / (3.0 * np.asarray(a, dtype=float)))


def accel_of_theta1(trap, length, theta1):
    """Inverse of theta1_of: a = 2 l w^2 / (3 theta1^2)."""
    return 2.0 * length * trap.omega**2 / (3.0 * theta1**2)


def _rest_quantities(trap, length, a):
    """Vectorized boundary symbols for rest start: theta1, xi2, A2, catch window."""
    a = np.asarray(a, dtype=float)
    w = trap.omega
    th1 = theta1_of(trap, length, a)
    amp = a / w**2
    c, s = np.cos(th1), np.sin(th1)
    xi2 = amp * (c - 1.0 - 0.5 * th1 * s)  # coast lasts t1/2, i.e. phase theta1/2
    u = xi2 - amp
    A2 = np.hypot(u, amp * s)
    th2 = np.arctan2(amp * s, u)  # relative velocity -a sin(th1)/w, so -v/w = +amp*s
    return th1, xi2, A2, th2


def classify(trap, length, a):
    """Rest-start outcome at acceleration a via the closed-form cascade.

    The cascade checks, in order: escape during the throw (max displacement
    2a/w^2 beyond the width), recapture failure (|xi2| > width at re-engage),
    escape during the catch (window max of the final oscillation beyond the
    width). Valid only when theta1 > pi.
    """
    _check_regime(trap, length)
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"acceleration must be positive, got {a!r}")
    w, d = trap.omega, trap.width
    th1 = float(theta1_of(trap, length, a))
    if th1 <= math.pi:
        raise RegimeError(
            f"release phase theta1 = {th1:.3f} <= pi at a = {a:.3e} m/s^2; "
            "the rest-start cascade assumes theta1 > pi"
        )
    amp = a / w**2
    # rest start: xi = -amp (1 - cos(w t)), so for theta1 > pi the swing reaches 2*amp
    lo1 = -amp + amp * cos_window_min(0.0, th1)
    hi1 = -amp + amp * cos_window_max(0.0, th1)
    max_disp_throw = max(abs(lo1), abs(hi1))

    _, xi2, A2, th2 = _rest_quantities(trap, length, a)
    xi2, A2, th2 = float(xi2), float(A2), float(th2)
    profile = MotionProfile(a, length)
    span3 = w * (profile.tf - profile.t2)
    hi3 = amp + A2 * cos_window_max(th2, span3)
    lo3 = amp + A2 * cos_window_min(th2, span3)
    max_disp_catch = float(hi3)

    if max_disp_throw > d:
        outcome = Outcome.ESCAPE_THROW
    elif abs(xi2) > d:
        outcome = Outcome.RECAPTURE_FAIL
    elif hi3 > d or lo3 < -d:
        outcome = Outcome.ESCAPE_CATCH
    else:
        outcome = Outcome.SUCCESS
    return EscapeReport(a, th1, max_disp_throw, xi2, max_disp_catch, outcome)


def _gap_function(trap, length, a):
    """g(a) = A2 + a/w^2 - d. Positive means the catch swing overshoots the width."""
    _, _, A2, _ = _rest_quantities(trap, length, a)
    return A2 + np.asarray(a, dtype=float) / trap.omega**2 - trap.width


def _bisect(f, lo, hi, rel_tol=REL_TOL):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= rel_tol * mid:
            return mid
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_accelerations(trap, length):
    """All regime boundaries for the given geometry.

    a_gap_minus / a_gap_plus are the roots of g(a) = A2(a) + a/w^2 - d nearest
    the theta1 = 3pi and theta1 = 2pi anchors; island_end is the next root
    above the gap, capped at a_max. Bisection is used instead of a derivative
    method because A2(a) oscillates through cos(theta1(a)).
    """
    _check_regime(trap, length)
    a_max = trap.a_max
    a3 = accel_of_theta1(trap, length, 3.0 * math.pi)
    a2 = accel_of_theta1(trap, length, 2.0 * math.pi)

    grid = np.geomspace(1e-3 * a_max, a_max, GRID_POINTS)
    g = _gap_function(trap, length, grid)
    sign = np.sign(g)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(flips) < 2:
        runs = [f"{int(s)}x{int(c)}" for s, c in _run_lengths(sign)]
        raise RootBracketError(
            f"expected at least 2 sign changes of the gap function, found {len(flips)}; "
            "the gap may close for this geometry",
            sign_pattern=",".join(runs),
        )
    f = lambda a: float(_gap_function(trap, length, a))
    roots = [_bisect(f, grid[i], grid[i + 1]) for i in flips]
    gap_minus = min(roots, key=lambda r: abs(r - a3))
    gap_plus = min(roots, key=lambda r: abs(r - a2))
    if not gap_minus < gap_plus:
        raise RootBracketError(
            f"gap roots out of order: {gap_minus:.6e} vs {gap_plus:.6e}",
            sign_pattern=None,
        )
    above = [r for r in roots if r > gap_plus * (1 + 1e-9)]
    island_end = min(min(above), a_max) if above else a_max
    binding = classify(trap, length, gap_minus * (1.0 + 1e-6)).outcome
    return CriticalAccels(float(a_max), float(a3), float(a2), float(gap_minus),
                          float(gap_plus), float(island_end), binding)


def _run_lengths(signs):
    out = []
    for s in signs:
        if out and out[-1][0] == s:
            out[-1][1] += 1
        else:
            out.append([s, 1])
    return [(s, c) for s, c in out]


@dataclass
class PhasePortrait:
    xi: np.ndarray
    xi_dot: np.ndarray
    release: tuple | None
    recapture: tuple | None
    escape: tuple | None
    equilibria: list


def phase_portrait(trap, length, a, sample_dt):
    """(xi, xi_dot) curve for a rest-start throw with the landmark points."""
    if a == 0.0:
        return PhasePortrait(np.zeros(1), np.zeros(1), None, None, None, [(0.0, 0.0)])
    _check_regime(trap, length)
    profile = MotionProfile(a, length)
    traj = analytic_trajectory(trap, profile, None, sample_dt)
    w2 = trap.omega**2
    eqs = [(-a / w2, 0.0), (a / w2, 0.0)]
    rel = (traj.release.xi, traj.release.xi_dot) if traj.release else None
    rec = (traj.recapture.xi, traj.recapture.xi_dot) if traj.recapture else None
    esc = None
    if traj.outcome in (Outcome.ESCAPE_THROW, Outcome.ESCAPE_CATCH, Outcome.RECAPTURE_FAIL):
        esc = (float(traj.xi[-1]), float(traj.xi_dot[-1]))
    return PhasePortrait(traj.xi, traj.xi_dot, rel, rec, esc, eqs)
