"""Single-atom throw-and-catch transport: closed-form trap-frame dynamics,
numerical field integration, thermal Monte Carlo, and array-rearrangement
timing, with a CLI that writes CSV, JSON, and SVG reports.
"""

from .core import (
    MotionProfile,
    Outcome,
    PhaseState,
    Trajectory,
    TrapParams,
    analytic_trajectory,
    max_acceleration,
    trap_frequency,
)
from .escape import (
    CriticalAccels,
    EscapeReport,
    RegimeError,
    RootBracketError,
    classify,
    critical_accelerations,
    phase_portrait,
)
from .dynamics import (
    NumericalError,
    PotentialField,
    Scene,
    SceneError,
    integrate,
    scattering_run,
    throw_catch_run,
)
from .thermal import (
    FitError,
    FitResult,
    SamplingError,
    SuccessEstimate,
    SweepResult,
    ThermalSpec,
    fit_double_gaussian,
    low_accel_approx,
    sample_states,
    success_probability,
    sweep,
    wilson_interval,
)
from .rearrange import (
    ArrayProblem,
    CrossoverResult,
    InfeasibleError,
    PlanReport,
    RepairResult,
    ScalingResult,
    crossover,
    match_moves,
    plan_and_time,
    repair_scene,
    scaling_experiment,
)
from .config import ConfigError, RunConfig, default_config
from .plotting import emit_plot, scaling_figure, trajectory_figure
from .units import KB, RB87_MASS, UnitError, parse_quantity

__version__ = "0.1.0"

__all__ = [
    "ArrayProblem", "ConfigError", "CriticalAccels", "CrossoverResult",
    "EscapeReport", "FitError", "FitResult", "InfeasibleError", "KB",
    "MotionProfile", "NumericalError", "Outcome", "PhaseState", "PlanReport",
    "PotentialField", "RB87_MASS", "RegimeError", "RepairResult",
    "RootBracketError", "RunConfig", "SamplingError", "ScalingResult", "Scene",
    "SceneError", "SuccessEstimate", "SweepResult", "ThermalSpec", "Trajectory",
    "TrapParams", "UnitError", "analytic_trajectory", "classify",
    "critical_accelerations", "crossover", "default_config",
    "emit_plot", "fit_double_gaussian", "integrate", "low_accel_approx",
    "match_moves", "max_acceleration", "parse_quantity", "phase_portrait",
    "plan_and_time", "repair_scene", "sample_states", "scaling_experiment",
    "scaling_figure", "scattering_run", "success_probability", "sweep",
    "throw_catch_run", "trajectory_figure", "trap_frequency",
    "wilson_interval",
]
