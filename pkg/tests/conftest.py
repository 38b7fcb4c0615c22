import re

import pytest

from atomtoss import KB, RB87_MASS, TrapParams

# published operating point used across the suite
DEPTH = 0.76e-3 * KB
WIDTH = 0.5e-6
LENGTH = 12.6e-6


@pytest.fixture
def trap():
    return TrapParams(RB87_MASS, DEPTH, WIDTH)


@pytest.fixture
def length():
    return LENGTH


ACCEPTANCE_DESCRIPTIONS = {
    1: "critical-acceleration ratios 0.378 / 0.851 within 0.005, under 1 s",
    2: "release speed 0.648 +/- 0.002 m/s at 5.00e4 m/s^2",
    3: "total schedule time 15 +/- 1 us at 2.33e5 m/s^2",
    4: "closed-form classifier matches the integrator on 200-point grids x 5 geometries",
    5: "exactly two zero-temperature success regions; edges at the bisection roots",
    6: "thermal optimum argmax P(a, 40 uK) inside [0.25, 0.40] a_max, under 5 min",
    7: "Monte Carlo within 20% of the low-acceleration closed form at 1e-3..5e-3 a_max",
    8: "3D success never exceeds 1D success by more than 2 SE",
    9: "full guide depth does not hurt; no guided point sits >2 SE below bare flight",
    10: "catch vs impact parameter: symmetric, peaked at 0, dips near |b|=d; fit recovers params",
    11: "guided/hologram closed forms exact; flying/guided ratio 0.5 +/- 0.01 on chains",
    12: "scaling exponents: flying 2 / 1.5 / 1.33 (+/-0.25), hologram 1 / 0.5 / 0.33 (+/-0.15)",
    13: "lattice repair: flying defect-free and guided not at T=0; >5 SE apart at 40 uK",
    14: "sweep re-runs are byte-identical",
}

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_c(\d\d)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call":
        _results[num] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _results[num] = report.outcome  # collection/setup error counts as a failure


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    tw = terminalreporter
    tw.write_sep("-", "acceptance criteria")
    for num in sorted(_results):
        status = "PASS" if _results[num] == "passed" else "FAIL"
        desc = ACCEPTANCE_DESCRIPTIONS.get(num, "")
        tw.write_line(f"[acceptance] criterion {num:02d} {status} - {desc}")
