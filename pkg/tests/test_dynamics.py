"""Velocity-Verlet scenes: conservation, convergence, and throw/catch batches."""

import numpy as np
import pytest

from atomtoss import KB, MotionProfile, Outcome, RB87_MASS, TrapParams
from atomtoss.core import evaluate_xi, solve_segments
from atomtoss.dynamics import (
    NumericalError,
    PotentialField,
    Scene,
    SceneError,
    captured,
    flight_schedule,
    integrate,
    scattering_batch,
    throw_catch_batch,
    throw_path,
)
from atomtoss.escape import classify, critical_accelerations

DEPTH = 0.76e-3 * KB
WIDTH = 0.5e-6


def _static_harmonic():
    return PotentialField("harmonic", DEPTH, WIDTH)


def test_energy_conservation_long_run():
    field = _static_harmonic()
    period = 2 * np.pi / field.omega0(RB87_MASS)
    n_periods = 1000
    scene = Scene([field], [[0.3 * WIDTH, 0, 0]], [[0, 0, 0]], RB87_MASS,
                  n_periods * period, dt=period / 100)
    res = integrate(scene, record_every=1)
    x = res.sample_x[:, 0, :]
    v = res.sample_v[:, 0, :]
    e = 0.5 * RB87_MASS * (v**2).sum(axis=1) + field.potential(x, 0.0)
    # symplectic: the period-averaged energy must not walk anywhere
    head, tail = e[:1000].mean(), e[-1000:].mean()
    assert abs(tail - head) <= 1e-6 * abs(head)
    assert np.max(np.abs(e - head)) <= 1e-3 * abs(head)  # bounded wobble only


def test_gaussian_equilibrium_is_fixed_point():
    field = PotentialField("gaussian", DEPTH, np.sqrt(2) * WIDTH)
    period = 2 * np.pi / field.omega0(RB87_MASS)
    scene = Scene([field], [[0, 0, 0]], [[0, 0, 0]], RB87_MASS, 20 * period)
    res = integrate(scene)
    assert np.all(res.x == 0.0)
    assert np.all(res.v == 0.0)


def test_free_drift_and_gravity_parabola():
    off = PotentialField("gaussian", DEPTH, WIDTH, depth_schedule=lambda t: 0.0)
    x0 = np.array([[1e-6, 2e-6, -3e-6]])
    v0 = np.array([[0.1, -0.05, 0.2]])
    t_end = 2e-5
    res = integrate(Scene([off], x0, v0, RB87_MASS, t_end))
    assert np.allclose(res.x, x0 + v0 * t_end, rtol=1e-9)

    g = 9.81
    res_g = integrate(Scene([off], x0, v0, RB87_MASS, t_end, const_accel=(0, 0, -g)))
    want = x0 + v0 * t_end + np.array([0, 0, -0.5 * g * t_end**2])
    assert np.allclose(res_g.x, want, rtol=1e-9)  # verlet is exact for constant force


def test_second_order_convergence():
    field = PotentialField("gaussian", DEPTH, np.sqrt(2) * WIDTH)
    period = 2 * np.pi / field.omega0(RB87_MASS)
    x0, v0 = [[0.4 * WIDTH, 0.2 * WIDTH, 0.5 * WIDTH]], [[0.0, 0.0, 0.0]]
    t_end = 5 * period

    def endpoint(div):
        return integrate(Scene([field], x0, v0, RB87_MASS, t_end, dt=period / div)).x

    ref = endpoint(16000)
    errs = [np.max(np.abs(endpoint(div) - ref)) for div in (250, 500, 1000)]
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    assert np.all((orders > 1.8) & (orders < 2.2))


def test_throw_matches_closed_form_endpoint(trap, length):
    rng = np.random.default_rng(3)
    period = 2 * np.pi / trap.omega
    accels = np.concatenate([rng.uniform(0.05, 0.36, 6), rng.uniform(0.84, 0.98, 6)])
    for frac in accels:
        p = MotionProfile(frac * trap.a_max, length)
        res = throw_catch_batch(trap, p, dt=period / 4000)
        assert res.outcomes[0] is Outcome.SUCCESS
        assert bool(res.captured[0])
        plan = solve_segments(trap, p)
        xi_ref, v_ref = evaluate_xi(trap, p, plan, p.tf)
        assert abs((res.x[0, 0] - length) - xi_ref) < 1e-3 * trap.width
        assert abs(res.v[0, 0] - v_ref) < 1e-3 * trap.width * trap.omega


def test_batch_outcomes_track_classifier(trap, length):
    crits = critical_accelerations(trap, length)
    gap_mid = 0.5 * (crits.a_gap_minus + crits.a_gap_plus)
    for a in (gap_mid, 1.05 * trap.a_max):
        res = throw_catch_batch(trap, MotionProfile(a, length))
        assert res.outcomes[0] is classify(trap, length, a).outcome
        assert not res.captured[0]


def test_full_depth_guide_keeps_atom(trap, length):
    p = MotionProfile(0.3 * trap.a_max, length, flight_depth=trap.depth)
    res = throw_catch_batch(trap, p)
    assert res.outcomes[0] is Outcome.SUCCESS
    assert bool(res.captured[0])


def test_scattering_cold_limit(trap, length):
    p = MotionProfile(0.33 * trap.a_max, length)
    static_depth = 0.58e-3 * KB
    for b in (0.0, trap.width, 10 * np.sqrt(2) * trap.width):
        flyer_ok, static_ok = scattering_batch(trap, p, static_depth, b)
        assert flyer_ok.all() and static_ok.all()
    flyer_ok, static_ok = scattering_batch(trap, p, static_depth, 5e-6, occupied=False)
    assert static_ok is None
    assert flyer_ok.all()


def test_captured_basin_and_energy():
    field = PotentialField("gaussian", DEPTH, np.sqrt(2) * WIDTH)
    at_rest = captured(field, [[0, 0, 0]], [[0, 0, 0]], 0.0, RB87_MASS)
    assert at_rest.all()
    v_esc = np.sqrt(2 * DEPTH / RB87_MASS)
    too_fast = captured(field, [[0, 0, 0]], [[1.1 * v_esc, 0, 0]], 0.0, RB87_MASS)
    assert not too_fast.any()
    outside = captured(field, [[10 * field.width, 0, 0]], [[0, 0, 0]], 0.0, RB87_MASS)
    assert not outside.any()


def test_throw_path_and_flight_schedule(trap, length):
    p = MotionProfile(0.3 * trap.a_max, length, flight_depth=0.25 * trap.depth)
    path = throw_path(p, origin=(1e-6, 0.0, 2e-6))
    assert path(0.0) == pytest.approx([1e-6, 0.0, 2e-6])
    assert path(p.tf)[0] == pytest.approx(1e-6 + length, rel=1e-12)
    sched = flight_schedule(p, trap.depth)
    assert sched(0.5 * p.t1) == 1.0
    assert sched(0.5 * (p.t1 + p.t2)) == pytest.approx(0.25)
    assert sched(p.tf) == 1.0
    with pytest.raises(SceneError):
        flight_schedule(MotionProfile(5e4, length, flight_depth=2 * trap.depth), trap.depth)


def test_scene_guards():
    field = _static_harmonic()
    period = 2 * np.pi / field.omega0(RB87_MASS)
    with pytest.raises(SceneError):
        Scene([], [[0, 0, 0]], [[0, 0, 0]], RB87_MASS, 1e-5)
    with pytest.raises(SceneError):
        Scene([field], [[0, 0, 0]], [[0, 0]], RB87_MASS, 1e-5)
    with pytest.raises(SceneError):
        Scene([field], [[0, 0, 0]], [[0, 0, 0]], RB87_MASS, 1e-5, dt=period / 10)
    with pytest.raises(SceneError):
        PotentialField("boxcar", DEPTH, WIDTH)
    with pytest.raises(SceneError):
        PotentialField("harmonic", -DEPTH, WIDTH)


def test_bad_schedule_and_blowup_raise():
    field = PotentialField("harmonic", DEPTH, WIDTH, depth_schedule=lambda t: 2.0)
    scene = Scene([field], [[0.1 * WIDTH, 0, 0]], [[0, 0, 0]], RB87_MASS, 1e-5)
    with pytest.raises(SceneError):
        integrate(scene)
    ok_field = _static_harmonic()
    blowup = Scene([ok_field], [[0, 0, 0]], [[0, 0, 0]], RB87_MASS, 1e-5,
                   const_accel=(float("inf"), 0.0, 0.0))
    with pytest.raises(NumericalError):
        integrate(blowup)
