"""Array-rearrangement planning: greedy source/vacancy matching, timing models
for sequential guided moves, ballistic flying moves, and simultaneous
hologram-refresh moves, plus Monte Carlo scaling fits and the 3x3
lattice-repair scene that exercises the full field integrator.

All timing here is kinematic. Guided moves scoot one lattice cell at a time at
the full trap acceleration. Flying moves accelerate over at most half a cell,
cruise at sqrt(a*spacing), and decelerate, so a move of length L costs
2*sqrt(L/a) for L <= spacing and (L/spacing + 1)*sqrt(spacing/a) beyond.
Hologram moves all run simultaneously at speed width*f_p and the slowest one
sets the total.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import MotionProfile, TrapParams
from .units import KB, RB87_MASS
from . import dynamics
from .thermal import sample_states, wilson_interval

STRATEGIES = ("guided", "flying", "holographic")


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class ArrayProblem:
    spacing: float
    occupancy: np.ndarray  # bool over the site grid
    target: np.ndarray     # bool, same shape

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        tgt = np.asarray(self.target, dtype=bool)
        object.__setattr__(self, "occupancy", occ)
        object.__setattr__(self, "target", tgt)
        if occ.shape != tgt.shape:
            raise ValueError(f"occupancy shape {occ.shape} != target shape {tgt.shape}")
        if occ.ndim not in (1, 2, 3):
            raise ValueError(f"grids must be 1-, 2-, or 3-dimensional, got {occ.ndim}")
        if not (self.spacing > 0 and math.isfinite(self.spacing)):
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        if occ.sum() < tgt.sum():
            raise InfeasibleError(
                f"{int(occ.sum())} atoms cannot fill {int(tgt.sum())} target sites")

    @property
    def dims(self):
        return self.occupancy.ndim

    @property
    def n_sites(self):
        return self.occupancy.size

    def site_coords(self):
        """(n_sites, dims) integer lattice coordinates in flat-index order."""
        return np.indices(self.occupancy.shape).reshape(self.dims, -1).T

    @classmethod
    def chain(cls, n_atoms, spacing):
        """n_atoms + 1 collinear sites, the center one vacant, target = sites 1..n."""
        if n_atoms < 2:
            raise ValueError("chain needs at least 2 atoms")
        occ = np.ones(n_atoms + 1, dtype=bool)
        occ[n_atoms // 2] = False
        tgt = np.ones(n_atoms + 1, dtype=bool)
        tgt[0] = False
        return cls(spacing, occ, tgt)

    @classmethod
    def half_filled(cls, dims, n_atoms, spacing, rng):
        """Random half-filled region with a centered compact target block.

        The target is a cube of side round(n_atoms^(1/dims)) centered in a
        region big enough to hold twice that many sites; the same number of
        atoms is placed uniformly over the whole region.
        """
        side_t = max(1, round(n_atoms ** (1.0 / dims)))
        n_t = side_t**dims
        side_r = math.ceil((2 * n_t) ** (1.0 / dims))
        shape = (side_r,) * dims
        tgt = np.zeros(shape, dtype=bool)
        lo = (side_r - side_t) // 2
        block = tuple(slice(lo, lo + side_t) for _ in range(dims))
        tgt[block] = True
        occ = np.zeros(side_r**dims, dtype=bool)
        occ[rng.choice(side_r**dims, size=n_t, replace=False)] = True
        return cls(spacing, occ.reshape(shape), tgt)

    @classmethod
    def from_dict(cls, d, spacing):
        """Build from a config mapping: chain, half_filled, or explicit grid."""
        kind = d.get("kind")
        if kind == "chain":
            return cls.chain(int(d["n_atoms"]), spacing)
        if kind == "half_filled":
            rng = np.random.Generator(np.random.Philox(
                np.random.SeedSequence(int(d.get("seed", 0)))))
            return cls.half_filled(int(d["dims"]), int(d["n_atoms"]), spacing, rng)
        if kind == "grid":
            return cls(spacing, np.asarray(d["occupancy"], dtype=bool),
                       np.asarray(d["target"], dtype=bool))
        raise ValueError(f"unknown problem kind {kind!r}")


def match_moves(problem):
    """Pair each empty target site with a spare atom, nearest pairs first.

    Returns a list of (source_flat_index, dest_flat_index) in the greedy
    order: repeatedly take the globally closest still-free (vacancy, atom)
    pair, ties broken toward the lower vacancy then source site index.
    Computed by mutual-nearest-neighbor rounds over the shrinking free sets,
    which give the same assignment because the globally closest free pair is
    always mutual; site coordinates are integers, so squared distances and
    the argmin tie order (first occurrence = lowest index) are exact.
    """
    occ = problem.occupancy.ravel()
    tgt = problem.target.ravel()
    src = np.flatnonzero(occ & ~tgt)
    vac = np.flatnonzero(tgt & ~occ)
    if len(vac) > len(src):
        raise InfeasibleError(f"{len(src)} spare atoms for {len(vac)} vacancies")
    if len(vac) == 0:
        return []
    coords = problem.site_coords().astype(float)
    sp = coords[src]
    vp = coords[vac]
    free_s = np.ones(len(src), dtype=bool)
    free_v = np.ones(len(vac), dtype=bool)
    matched = []
    while free_v.any():
        si = np.flatnonzero(free_s)
        vi = np.flatnonzero(free_v)
        a, b = vp[vi], sp[si]
        d2 = (a * a).sum(1)[:, None] + (b * b).sum(1)[None, :] - 2.0 * (a @ b.T)
        near_s = d2.argmin(axis=1)
        near_v = d2.argmin(axis=0)
        mutual = np.flatnonzero(near_v[near_s] == np.arange(len(vi)))
        dist = d2[mutual, near_s[mutual]]
        matched.extend(zip(dist, vi[mutual], si[near_s[mutual]]))
        free_v[vi[mutual]] = False
        free_s[si[near_s[mutual]]] = False
    matched.sort()
    return [(int(src[s]), int(vac[v])) for _, v, s in matched]


def flying_move_time(length, spacing, accel):
    """Accelerate/decelerate over half a cell each, cruise at sqrt(a*spacing)."""
    if length <= 0:
        return 0.0
    if length <= spacing:
        return 2.0 * math.sqrt(length / accel)
    return (length / spacing + 1.0) * math.sqrt(spacing / accel)


@dataclass(frozen=True)
class PlanReport:
    strategy: str
    moves: list  # (from_site, to_site, duration_s)
    total_time: float
    success: bool

    @property
    def n_moves(self):
        return len(self.moves)

    @property
    def max_path(self):
        return max((m[2] for m in self.moves), default=0.0)


def plan_and_time(problem, strategy, trap, f_p=None, accel_fraction=0.33):
    """Match vacancies to spare atoms and time the plan under one strategy.

    guided: one atom at a time, one lattice cell per scoot, 2*sqrt(spacing/a_max)
    each, scoot count = Manhattan cell distance. flying: direct line at
    accel_fraction * a_max with the cruise cap, paths may cross occupied sites.
    holographic: all moves simultaneous at speed trap.width * f_p, total time set
    by the longest path.
    """
    return _time_pairs(problem, match_moves(problem), strategy, trap,
                       f_p, accel_fraction)


def _time_pairs(problem, pairs, strategy, trap, f_p, accel_fraction):
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if strategy == "holographic" and (f_p is None or f_p <= 0):
        raise ValueError("holographic timing needs a positive refresh rate f_p")
    coords = problem.site_coords()
    lam = problem.spacing
    moves = []
    for s, v in pairs:
        delta = coords[v] - coords[s]
        if strategy == "guided":
            scoots = int(np.abs(delta).sum())
            dur = scoots * 2.0 * math.sqrt(lam / trap.a_max)
        elif strategy == "flying":
            length = float(np.linalg.norm(delta)) * lam
            dur = flying_move_time(length, lam, accel_fraction * trap.a_max)
        else:
            length = float(np.linalg.norm(delta)) * lam
            dur = length / (trap.width * f_p)
        moves.append((int(s), int(v), dur))
    total = max((m[2] for m in moves), default=0.0) if strategy == "holographic" \
        else sum(m[2] for m in moves)
    return PlanReport(strategy, moves, total, True)


def guided_convention_time(n_atoms, spacing, accel):
    """The 2N*sqrt(spacing/a) convention for an N-atom chain fill.

    The simulated plan counts actual scoots (N/2 for a boundary-to-center
    chain), so this conventional estimate runs 4x longer; reports show both.
    """
    return 2.0 * n_atoms * math.sqrt(spacing / accel)


def _trial_rng(*entropy):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class ScalingResult:
    strategy: str
    dims: int
    n_list: tuple
    mean_times: tuple
    exponent: float
    stderr: float


def scaling_experiment(dims, n_list, n_trials, seed, strategy, trap,
                       spacing=4.2e-6, f_p=40.0, accel_fraction=0.33,
                       progress=None):
    """Fit total rearrangement time ~ N^p over random half-filled problems.

    Log-log least squares over per-N trial means; stderr is the slope's
    standard error from the fit residuals. Trials are deterministic per
    (seed, N, trial) and independent of execution order. strategy may be a
    sequence of strategies, fitted over the same problems and matchings (the
    matching is the expensive step); then a list of results is returned.
    """
    single = isinstance(strategy, str)
    strategies = (strategy,) if single else tuple(strategy)
    n_list = sorted(int(n) for n in n_list)
    if len(n_list) < 3:
        raise ValueError("need at least 3 problem sizes to fit an exponent")
    if max(n_list) < 10 * min(n_list):
        raise ValueError("problem sizes should span at least one decade")
    means = {s: [] for s in strategies}
    for i, n in enumerate(n_list):
        tot = {s: 0.0 for s in strategies}
        for t in range(n_trials):
            rng = _trial_rng(seed, n, t)
            prob = ArrayProblem.half_filled(dims, n, spacing, rng)
            pairs = match_moves(prob)
            for s in strategies:
                tot[s] += _time_pairs(prob, pairs, s, trap, f_p,
                                      accel_fraction).total_time
        for s in strategies:
            means[s].append(tot[s] / n_trials)
        if progress is not None:
            progress(i + 1, len(n_list))

    out = []
    x = np.log(np.asarray(n_list, dtype=float))
    design = np.column_stack([np.ones_like(x), x])
    for s in strategies:
        y = np.log(np.asarray(means[s]))
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        resid = y - design @ coef
        dof = len(x) - 2
        var = float(resid @ resid) / dof if dof > 0 else 0.0
        cov = var * np.linalg.inv(design.T @ design)
        out.append(ScalingResult(s, dims, tuple(n_list), tuple(means[s]),
                                 float(coef[1]), float(math.sqrt(max(cov[1, 1], 0.0)))))
    return out[0] if single else out


def crossover(dims, trap, f_p, path_length, spacing, n_range, n_trials=50,
              seed=0, accel_fraction=0.33, hologram_width=None):
    """Smallest N in n_range where mean flying time exceeds the hologram time.

    The hologram bound t_H = path_length / (width * f_p) is N-independent;
    width defaults to the trap width and can be overridden for a larger
    steering tweezer. Binary search over integer N assuming the flying mean
    grows with N. n_star in the result is None when flying wins everywhere
    in range.
    """
    w = trap.width if hologram_width is None else hologram_width
    t_h = path_length / (w * f_p)
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 2 or hi < lo:
        raise ValueError(f"bad n_range {n_range!r}")
    cache = {}

    def mean_tf(n):
        if n not in cache:
            tot = 0.0
            for t in range(n_trials):
                rng = _trial_rng(seed, n, t)
                prob = ArrayProblem.half_filled(dims, n, spacing, rng)
                tot += plan_and_time(prob, "flying", trap,
                                     accel_fraction=accel_fraction).total_time
            cache[n] = tot / n_trials
        return cache[n]

    def done(n_star):
        return CrossoverResult(n_star, t_h, tuple(sorted(cache.items())))

    if mean_tf(hi) <= t_h:
        return done(None)
    if mean_tf(lo) > t_h:
        return done(lo)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mean_tf(mid) > t_h:
            hi = mid
        else:
            lo = mid
    return done(hi)


@dataclass(frozen=True)
class CrossoverResult:
    n_star: object  # int, or None when flying wins everywhere in range
    t_hologram: float
    probes: tuple  # (n, mean_flying_time) pairs actually evaluated


@dataclass(frozen=True)
class RepairResult:
    mode: str
    p_hat: float
    ci_low: float
    ci_high: float
    n_trials: int
    n_success: int


def repair_scene(mode, temperature=0.0, n_trials=1, seed=0,
                 dynamic_depth=1.94e-3 * KB, static_depth=0.58e-3 * KB,
                 spacing=4.2e-6, trap_width=0.5e-6, mass=RB87_MASS,
                 accel_fraction=0.10, include_statics=True, dt=None):
    """Fill the center vacancy of a 3x3 lattice by throwing an atom across it.

    Eight sites hold atoms in static tweezers; the ninth (center) is vacant.
    A moving tweezer carries a fresh atom in from two cells out along a row,
    crossing the occupied mid-row site. mode "flying" releases the atom over
    that site; "guided" keeps the moving trap on, dragging the occupied site's
    atom. Success is a defect-free lattice: every site ends with at least one
    atom within half a lattice constant and total energy below zero.

    With include_statics False the scene reduces to a plain throw-catch of the
    moving atom into the (empty) destination site.
    """
    if mode not in ("flying", "guided"):
        raise ValueError(f"mode must be 'flying' or 'guided', got {mode!r}")
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    dyn_trap = TrapParams(mass, dynamic_depth, trap_width)
    stat_trap = TrapParams(mass, static_depth, trap_width)
    lam = spacing
    length = 2.0 * lam
    accel = accel_fraction * dyn_trap.a_max
    flight = dynamic_depth if mode == "guided" else 0.0
    profile = MotionProfile(accel, length, flight_depth=flight)
    waist = math.sqrt(2.0) * trap_width
    wz = 5.0 * waist

    sites = np.array([[i * lam, j * lam, 0.0] for i in (-1, 0, 1) for j in (-1, 0, 1)])
    dest = np.array([0.0, 0.0, 0.0])
    start = np.array([-2.0 * lam, 0.0, 0.0])
    occupied = [s for s in sites if not np.allclose(s, dest)]

    fields = []
    if include_statics:
        fields += [dynamics.PotentialField("gaussian", static_depth, waist,
                                           axial_width=wz, center=s) for s in sites]
    fields.append(dynamics.PotentialField(
        "gaussian", dynamic_depth, waist, axial_width=wz,
        center_path=dynamics.throw_path(profile, origin=start),
        depth_schedule=dynamics.flight_schedule(profile, dynamic_depth)))

    w_s = math.sqrt(4.0 * static_depth / (mass * waist**2))
    w_d = math.sqrt(4.0 * dynamic_depth / (mass * waist**2))
    om_s = (w_s, w_s, w_s / 5.0)
    om_d = (w_d, w_d, w_d / 5.0)

    n_static = len(occupied) if include_statics else 0
    per_trial = n_static + 1
    x0 = np.zeros((n_trials * per_trial, 3))
    v0 = np.zeros_like(x0)
    for t in range(n_trials):
        rng = _trial_rng(seed, t)
        row = t * per_trial
        for k in range(n_static):
            s = sample_states(stat_trap, temperature, 1, rng, "3d", om_s)[0]
            x0[row + k] = occupied[k] + s[[0, 2, 4]]
            v0[row + k] = s[[1, 3, 5]]
        s = sample_states(dyn_trap, temperature, 1, rng, "3d", om_d)[0]
        x0[row + n_static] = start + s[[0, 2, 4]]
        v0[row + n_static] = s[[1, 3, 5]]

    scene = dynamics.Scene(fields, x0, v0, mass, profile.tf, dt=dt,
                           breakpoints=(profile.t1, profile.t2))
    res = dynamics.integrate(scene)

    u_tot = np.zeros(len(x0))
    for f in fields:
        u_tot += f.potential(res.x, profile.tf)
    energy = 0.5 * mass * (res.v**2).sum(axis=1) + u_tot
    x = res.x.reshape(n_trials, per_trial, 3)
    e = energy.reshape(n_trials, per_trial)
    check_sites = sites if include_statics else dest[None, :]
    good = np.ones(n_trials, dtype=bool)
    for s in check_sites:
        r = np.linalg.norm(x - s, axis=2)
        good &= ((r < lam / 2.0) & (e < 0.0)).any(axis=1)
    k = int(good.sum())
    lo, hi = wilson_interval(k, n_trials)
    return RepairResult(mode, k / n_trials, lo, hi, n_trials, k)
