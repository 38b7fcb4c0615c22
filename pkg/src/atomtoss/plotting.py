"""SVG rendering for sweep results and trajectories.

Figures are emitted as self-contained SVG strings with text kept as text
(assertable in tests) and a fixed hash salt plus stripped creation date so
identical inputs give identical bytes.
"""

import io

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

matplotlib.rcParams["svg.fonttype"] = "none"
matplotlib.rcParams["svg.hashsalt"] = "atomtoss"

_SI_PREFIX = {"": 1.0, "m": 1e-3, "u": 1e-6, "n": 1e-9}


def _render(fig):
    buf = io.BytesIO()
    try:
        fig.savefig(buf, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return buf.getvalue().decode("utf-8")


def emit_plot(sweep, style=None, overlays=()):
    """Render a sweep as an SVG curve with Wilson error bars.

    style keys (all optional): title, xlabel, ylabel, logx (bool), color.
    overlays is an iterable of (x, y, label) analytic curves drawn beneath the
    data. Needs at least 2 points; degenerate value ranges are auto-padded.
    """
    pts = sweep.points
    if len(pts) < 2:
        raise ValueError(f"need at least 2 points to plot, got {len(pts)}")
    style = dict(style or {})
    x = [p[0] for p in pts]
    y = [p[1] for p in pts]
    lo = [p[1] - p[2] for p in pts]
    hi = [p[3] - p[1] for p in pts]
    logx = style.get("logx")
    if logx is None:
        logx = min(x) > 0 and max(x) / min(x) > 30.0

    fig, ax = plt.subplots(figsize=(5.4, 3.6), dpi=100)
    for ox, oy, label in overlays:
        ax.plot(ox, oy, lw=1.2, alpha=0.8, label=label)
    ax.errorbar(x, y, yerr=[lo, hi], fmt="o-", ms=3.5, lw=1.0, capsize=2.0,
                color=style.get("color", "#1f4e79"), label=style.get("label", "simulated"))
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(style.get("xlabel", sweep.control_name))
    ax.set_ylabel(style.get("ylabel", "success probability"))
    if "title" in style:
        ax.set_title(style["title"])
    if max(y) - min(y) < 1e-12:
        pad = max(0.05, abs(y[0]) * 0.1)
        ax.set_ylim(y[0] - pad, y[0] + pad)
    ax.grid(True, alpha=0.3)
    if overlays or "label" in style:
        ax.legend(fontsize=8)
    fig.tight_layout()
    return _render(fig)


def scaling_figure(n_list, means, exponent, label):
    """Log-log mean time vs problem size with the fitted power law."""
    if len(n_list) < 2:
        raise ValueError("need at least 2 sizes to plot")
    fig, ax = plt.subplots(figsize=(5.4, 3.6), dpi=100)
    ax.loglog(n_list, means, "o", ms=4, color="#1f4e79", label=label)
    ref = means[0] * (np.asarray(n_list, dtype=float) / n_list[0]) ** exponent
    ax.loglog(n_list, ref, "--", lw=1.0, color="#b06030",
              label=f"N^{exponent:.2f} fit")
    ax.set_xlabel("atom number N")
    ax.set_ylabel("mean rearrangement time (s)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _render(fig)


def trajectory_figure(traj, trap, profile):
    """Trap-frame displacement against time with the escape bounds marked."""
    t = traj.t * 1e6
    fig, ax = plt.subplots(figsize=(5.4, 3.6), dpi=100)
    ax.plot(t, traj.xi / trap.width, lw=1.2, color="#1f4e79")
    ax.axhline(1.0, color="#888888", lw=0.8, ls="--")
    ax.axhline(-1.0, color="#888888", lw=0.8, ls="--")
    for mark, name in ((profile.t1, "release"), (profile.t2, "recapture")):
        if mark <= traj.t[-1]:
            ax.axvline(mark * 1e6, color="#b06030", lw=0.8, ls=":")
            ax.text(mark * 1e6, ax.get_ylim()[1], name, fontsize=7,
                    ha="center", va="bottom", color="#b06030")
    ax.set_xlabel("time (us)")
    ax.set_ylabel("displacement / trap width")
    ax.set_title(f"outcome: {traj.outcome.name.lower()}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return _render(fig)
