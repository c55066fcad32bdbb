"""Named runs that regenerate every published curve as a table of rows.

Each scenario turns a parameter set into an ordered list of row tuples.
Expensive points are evaluated through ``map_fn`` so that the caller can
hand in a process pool; rows always come back in sweep order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import ensemble
from .diagnostics import adiabatic_threshold_check, linearization_error, small_term_trace
from .dressed import adiabaticity_f, dressed_energies, lz_h
from .dynamics import DEFAULT_RTOL, integrate
from .field import alpha, chi_1d
from .landau_zener import predict
from .trajectory import DEFAULT_OMEGA_T, Trajectory
from .units import PhysicalParams

V_SWEEP = (0.001, 0.06)
ANTINODE = 0.25


@dataclass(frozen=True)
class RunContext:
    params: PhysicalParams
    points: int
    tol: float = DEFAULT_RTOL
    options: dict = field(default_factory=dict)
    map_fn: Callable[..., Iterable] = map


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    columns: tuple[str, ...]
    default_points: int
    runner: Callable[[RunContext], list[tuple]]
    options: dict = field(default_factory=dict)
    plot: tuple[str, ...] = ()  # y columns drawn against the first column


@dataclass(frozen=True)
class SweepResult:
    scenario: str
    columns: tuple[str, ...]
    rows: list[tuple]
    params: PhysicalParams
    tol: float
    options: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)


# ---------------------------------------------------------------- workers


def _trajectory_point(args) -> tuple:
    """(P_ode, norm drift, P_lz, nodes, tangential, overlap) for one trajectory."""
    traj, params, tol = args
    report = integrate(traj, params, tol=tol)
    lz = predict(traj, params)
    return report.p_dark, report.max_norm_drift, lz.p_total, lz.n_nodes, int(lz.tangential_flag), int(lz.overlap_flag)


def _axial_point(args) -> float:
    v, params, tol = args
    return integrate(Trajectory.constant_v(v, ANTINODE), params, tol=tol).p_dark


def _detuned_point(args) -> tuple:
    v, params, deltas, tol = args
    out = []
    for d in deltas:
        r = integrate(Trajectory.constant_v(v, ANTINODE), params.replace(delta=d), tol=tol)
        out += [r.p_dark, r.max_norm_drift]
    return tuple(out)


# ---------------------------------------------------------------- runners


def _times(ctx: RunContext) -> np.ndarray:
    return np.linspace(0.0, ctx.params.protocol_end, ctx.points)


def _speeds(ctx: RunContext) -> np.ndarray:
    return np.linspace(*V_SWEEP, ctx.points)


def _run_energies(ctx: RunContext) -> list[tuple]:
    v = ctx.options["v"]
    rows = []
    for t in _times(ctx):
        z = ANTINODE + v * t
        s = dressed_energies(float(chi_1d(z)), float(alpha(t, ctx.params.pulse)), ctx.params)
        rows.append((t, z, s.e0, s.e_plus, s.e_minus))
    return rows


def _run_f(ctx: RunContext) -> list[tuple]:
    t = _times(ctx)
    return list(zip(t, adiabaticity_f(t, ctx.params.pulse, ctx.params.g0)))


def _run_h(ctx: RunContext) -> list[tuple]:
    t = _times(ctx)
    return list(zip(t, lz_h(t, ctx.params.pulse)))


def _sweep(ctx: RunContext, trajectories: list[Trajectory]) -> list[tuple]:
    tasks = [(traj, ctx.params, ctx.tol) for traj in trajectories]
    return list(ctx.map_fn(_trajectory_point, tasks))


def _run_constv(ctx: RunContext) -> list[tuple]:
    vs = _speeds(ctx)
    res = _sweep(ctx, [Trajectory.constant_v(v, ANTINODE) for v in vs])
    return [(v, *r) for v, r in zip(vs, res)]


def _run_harmonic(ctx: RunContext) -> list[tuple]:
    vs = _speeds(ctx)
    w = ctx.options["omega_T"]
    res = _sweep(ctx, [Trajectory.harmonic(v, w, ANTINODE) for v in vs])
    return [(v, *r) for v, r in zip(vs, res)]


def _run_line(ctx: RunContext) -> list[tuple]:
    vs = _speeds(ctx)
    theta = math.radians(ctx.options["theta_deg"])
    res = _sweep(ctx, [Trajectory.line3d(v, theta, ANTINODE) for v in vs])
    axial = list(ctx.map_fn(_axial_point, [(v * math.cos(theta), ctx.params, ctx.tol) for v in vs]))
    return [(v, *r, p1) for v, r, p1 in zip(vs, res, axial)]


def _run_ensemble(ctx: RunContext) -> list[tuple]:
    dv = ctx.options["dv"]
    v0s = np.linspace(0.0, V_SWEEP[1], ctx.points)
    v_hi = V_SWEEP[1] + ensemble.TAIL_WIDTHS * dv
    rows = []
    for z0 in ctx.options["z0"]:
        table = ensemble.SurvivalTable.build(z0, ctx.params, v_hi, tol=ctx.tol, map_fn=ctx.map_fn)
        for v0 in v0s:
            dist = ensemble.VelocityDistribution(float(v0), dv)
            rows.append(
                (
                    z0,
                    v0,
                    ensemble.ensemble_survival(dist, ctx.params, z0, ensemble.NUMERIC, table),
                    ensemble.ensemble_survival(dist, ctx.params, z0, ensemble.ANALYTIC),
                )
            )
    return rows


def _run_detuning(ctx: RunContext) -> list[tuple]:
    vs = _speeds(ctx)
    deltas = tuple(f * ctx.params.g0 for f in ctx.options["delta_over_g0"])
    res = ctx.map_fn(_detuned_point, [(v, ctx.params, deltas, ctx.tol) for v in vs])
    return [(v, *r) for v, r in zip(vs, res)]


def _run_linearization(ctx: RunContext) -> list[tuple]:
    bounds = np.linspace(0.01, 0.99, ctx.points)
    return [(b, linearization_error(float(b))) for b in bounds]


def _run_smallterm(ctx: RunContext) -> list[tuple]:
    trace = small_term_trace(ctx.options["v"], ctx.params, points=ctx.points)
    return trace.samples


def _run_threshold(ctx: RunContext) -> list[tuple]:
    rows = []
    for v in _speeds(ctx):
        r = adiabatic_threshold_check(Trajectory.constant_v(v, ANTINODE), ctx.params)
        rows.append((v, int(r.passed), r.worst_exponent, r.node_count, int(r.above_speed_threshold)))
    return rows


_SWEEP_COLUMNS = ("v", "P_ode", "norm_drift", "P_lz", "nodes", "tangential", "overlap")


def _detuning_columns(fractions) -> tuple[str, ...]:
    cols = ["v"]
    for f in fractions:
        cols += [f"P_delta_{f:g}g0", f"norm_drift_{f:g}g0"]
    return tuple(cols)


_DETUNINGS = (0.0, 0.2, 1.0)

SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in [
        Scenario(
            "fig3_energies",
            "dressed energies along z = 1/4 + v t (columns t, z, E0, E_plus, E_minus)",
            ("t", "z", "E0", "E_plus", "E_minus"),
            401,
            _run_energies,
            {"v": 0.14},
            ("E0", "E_plus", "E_minus"),
        ),
        Scenario("fig4_f", "adiabaticity function f(t) (columns t, f)", ("t", "f"), 401, _run_f, plot=("f",)),
        Scenario("fig5_h", "crossing strength h(t) (columns t, h)", ("t", "h"), 401, _run_h, plot=("h",)),
        Scenario(
            "fig6_constv",
            "survival vs speed, constant velocity from the antinode",
            _SWEEP_COLUMNS,
            200,
            _run_constv,
            plot=("P_ode", "P_lz"),
        ),
        Scenario(
            "fig7_harmonic",
            "survival vs initial speed, harmonic motion from the trap centre",
            _SWEEP_COLUMNS,
            200,
            _run_harmonic,
            {"omega_T": DEFAULT_OMEGA_T},
            ("P_ode", "P_lz"),
        ),
        Scenario(
            "fig8_ensemble",
            "ensemble survival vs central speed v0 (columns z0, v0, P_numeric, P_analytic)",
            ("z0", "v0", "P_numeric", "P_analytic"),
            121,
            _run_ensemble,
            {"dv": ensemble.DEFAULT_DV, "z0": [0.25, 1.0 / 3.0, 5.0 / 12.0]},
            ("P_numeric", "P_analytic"),
        ),
        Scenario(
            "fig9_angle30",
            "survival vs speed on a line 30 deg off axis; P_1d_axial is the 1D curve at v cos(theta)",
            (*_SWEEP_COLUMNS, "P_1d_axial"),
            200,
            _run_line,
            {"theta_deg": 30.0},
            ("P_ode", "P_lz", "P_1d_axial"),
        ),
        Scenario(
            "fig10_angle60",
            "survival vs speed on a line 60 deg off axis",
            (*_SWEEP_COLUMNS, "P_1d_axial"),
            200,
            _run_line,
            {"theta_deg": 60.0},
            ("P_ode", "P_lz", "P_1d_axial"),
        ),
        Scenario(
            "appxA_detuning",
            "survival vs speed for detuning 0, 0.2 g0 and g0",
            _detuning_columns(_DETUNINGS),
            60,
            _run_detuning,
            {"delta_over_g0": list(_DETUNINGS)},
            tuple(f"P_delta_{f:g}g0" for f in _DETUNINGS),
        ),
        Scenario(
            "appxB_linearization",
            "relative error of sin(kz) ~ kz vs |sin(kz)| bound (columns bound, error)",
            ("bound", "error"),
            99,
            _run_linearization,
            plot=("error",),
        ),
        Scenario(
            "appxC_smallterm",
            "neglected-term amplitude S(x) on [-a, a] (columns x, S)",
            ("x", "S"),
            2001,
            _run_smallterm,
            {"v": 1.2e-2},
            ("S",),
        ),
        Scenario(
            "threshold_report",
            "adiabatic threshold check vs speed (columns v, passed, worst_exponent, nodes, above_speed_threshold)",
            ("v", "passed", "worst_exponent", "nodes", "above_speed_threshold"),
            200,
            _run_threshold,
            plot=("worst_exponent",),
        ),
    ]
}


def get(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


def run(
    name: str,
    params: PhysicalParams,
    points: int | None = None,
    tol: float = DEFAULT_RTOL,
    options: dict | None = None,
    map_fn: Callable[..., Iterable] = map,
) -> SweepResult:
    scenario = get(name)
    opts = dict(scenario.options)
    for key, value in (options or {}).items():
        if key not in opts:
            raise KeyError(f"scenario {name} has no option {key!r}")
        opts[key] = value
    points = scenario.default_points if points is None else points
    if points < 2:
        raise ValueError("points must be at least 2")
    if name == "appxA_detuning":
        columns = _detuning_columns(opts["delta_over_g0"])
    else:
        columns = scenario.columns
    ctx = RunContext(params, points, tol, opts, map_fn)
    rows = [tuple(_plain(x) for x in row) for row in scenario.runner(ctx)]
    return SweepResult(name, columns, rows, params, tol, opts)


def _plain(x):
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)
