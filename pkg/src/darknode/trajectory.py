"""Predetermined centre-of-mass trajectories and nodal-plane crossing detection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import Position, envelope
from .units import PhysicalParams

CONSTANT_V = "constant_v"
HARMONIC = "harmonic"
LINE_3D = "line3d"
KINDS = (CONSTANT_V, HARMONIC, LINE_3D)

BISECT_TOL = 1e-10

#: Trap angular frequency 1.32e6 rad/s divided by gamma = 1/30.70 ns.
#: Reading 1.32 MHz as a cyclic frequency instead gives 0.2548, whose
#: oscillation amplitude v/omega_T stays below the antinode-node distance
#: for every v <= 0.06, so no node would ever be crossed.
DEFAULT_OMEGA_T = 1.32e6 * 30.70e-9


@dataclass(frozen=True)
class Trajectory:
    """Classical path of the atom.

    ``constant_v``: z = z0 + s v t.
    ``harmonic``: z = z0 + s (v / omega_T) sin(omega_T t), starting at the
    trap centre ``z0`` with speed ``v``.
    ``line3d``: straight line at angle ``theta`` to the cavity axis,
    z = z0 + v cos(theta) t, rho = sqrt(rho0^2 + (v sin(theta) t)^2).

    ``s = direction`` is +1 or -1.
    """

    kind: str
    v: float
    z0: float = 0.25
    omega_T: float = 0.0
    theta: float = 0.0
    rho0: float = 0.0
    direction: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown trajectory kind {self.kind!r}")
        if self.v < 0:
            raise ValueError("v must be non-negative")
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        if self.kind == HARMONIC and self.omega_T <= 0:
            raise ValueError("harmonic trajectories need omega_T > 0")
        if self.kind == LINE_3D and not 0 <= self.theta < math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2)")
        if self.rho0 < 0:
            raise ValueError("rho0 must be non-negative")

    @classmethod
    def constant_v(cls, v: float, z0: float = 0.25, direction: int = 1) -> "Trajectory":
        return cls(CONSTANT_V, v, z0, direction=direction)

    @classmethod
    def harmonic(cls, v: float, omega_T: float, z0: float = 0.25, direction: int = 1) -> "Trajectory":
        return cls(HARMONIC, v, z0, omega_T=omega_T, direction=direction)

    @classmethod
    def line3d(cls, v: float, theta: float, z0: float = 0.25, rho0: float = 0.0) -> "Trajectory":
        return cls(LINE_3D, v, z0, theta=theta, rho0=rho0)

    @property
    def max_axial_speed(self) -> float:
        if self.kind == LINE_3D:
            return self.v * math.cos(self.theta)
        return self.v

    def z(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == CONSTANT_V:
            return self.z0 + self.direction * self.v * t
        if self.kind == HARMONIC:
            return self.z0 + self.direction * self.v / self.omega_T * np.sin(self.omega_T * t)
        return self.z0 + self.v * math.cos(self.theta) * t

    def z_dot(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == CONSTANT_V:
            return np.full_like(t, self.direction * self.v)
        if self.kind == HARMONIC:
            return self.direction * self.v * np.cos(self.omega_T * t)
        return np.full_like(t, self.v * math.cos(self.theta))

    def rho(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind != LINE_3D:
            return np.zeros_like(t)
        return np.hypot(self.rho0, self.v * math.sin(self.theta) * t)


def position(traj: Trajectory, t: float) -> Position:
    return Position(float(traj.z(t)), float(traj.rho(t)))


def axial_velocity(traj: Trajectory, t: float) -> float:
    """|dz/dt| at time ``t``."""
    return abs(float(traj.z_dot(t)))


@dataclass(frozen=True)
class CrossingEvent:
    t_star: float
    v_axial: float
    h_star: float
    p_i: float
    node: float  # axial position of the crossed node [lambda]
    g_local: float  # g0 times the transverse envelope at the crossing
    tangential: bool = False


def _bisect(fn, a: float, b: float, fa: float) -> float:
    while b - a > BISECT_TOL:
        m = 0.5 * (a + b)
        fm = fn(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def grid_step(traj: Trajectory, T0: float) -> float:
    """Scan step min(lambda / (100 max|z'|), T0 / 1000)."""
    vmax = traj.max_axial_speed
    if vmax == 0:
        return T0 / 1000.0
    return min(1.0 / (100.0 * vmax), T0 / 1000.0)


def find_node_crossings(
    traj: Trajectory,
    params: PhysicalParams,
    window: tuple[float, float] | None = None,
) -> list[CrossingEvent]:
    """All times in ``window`` where the axial coordinate passes a node z = n/2.

    Crossings are bracketed on a uniform scan grid by changes of the half-
    wavelength cell index ``floor(2 z)`` and refined by bisection. Each event
    carries the local crossing strength and its Landau-Zener survival factor.
    A turning point that touches a node is reported once with ``v_axial = 0``
    and ``tangential=True``.
    """
    from .landau_zener import crossing_strength, survival_single

    t0, t1 = window if window is not None else (0.0, params.protocol_end)
    if traj.max_axial_speed == 0 or t1 <= t0:
        return []
    dt = grid_step(traj, params.T0)
    n = max(int(math.ceil((t1 - t0) / dt)), 1)
    ts = np.linspace(t0, t1, n + 1)
    zs = traj.z(ts)
    cells = np.floor(2.0 * zs)

    roots: list[tuple[float, float, bool]] = []
    for i in np.nonzero(cells[1:] != cells[:-1])[0]:
        lo, hi = int(min(cells[i], cells[i + 1])), int(max(cells[i], cells[i + 1]))
        for node_index in range(lo + 1, hi + 1):
            node = 0.5 * node_index

            def offset(t, node=node):
                return float(traj.z(t)) - node

            roots.append((_bisect(offset, ts[i], ts[i + 1], offset(ts[i])), node, False))

    if traj.kind == HARMONIC:
        roots = _merge_turning_touches(traj, ts, roots)

    pulse = params.pulse
    events = []
    for t_star, node, tangential in sorted(roots):
        v_ax = 0.0 if tangential else axial_velocity(traj, t_star)
        g_local = params.g0
        if traj.kind == LINE_3D:
            g_local *= float(envelope(node, traj.rho(t_star), params.waist0))
        h_star = float(crossing_strength(t_star, pulse, params.r0))
        p_i = survival_single(h_star, v_ax, g_local)
        events.append(
            CrossingEvent(float(t_star), v_ax, h_star, p_i, node, g_local, tangential or v_ax == 0.0)
        )
    return events


def _merge_turning_touches(traj, ts, roots):
    """Replace crossings that only graze a node at a turning point by one tangential event."""
    zd = traj.z_dot(ts)
    touches = []
    for i in np.nonzero(np.sign(zd[1:]) != np.sign(zd[:-1]))[0]:

        def speed(t):
            return float(traj.z_dot(t))

        t_turn = _bisect(speed, ts[i], ts[i + 1], speed(ts[i]))
        z_turn = float(traj.z(t_turn))
        node = round(2.0 * z_turn) / 2.0
        if abs(z_turn - node) < 1e-9:
            touches.append((t_turn, node))
    if not touches:
        return roots
    kept = [
        r
        for r in roots
        if not any(r[1] == node and abs(r[0] - t_turn) < 1e-3 for t_turn, node in touches)
    ]
    return kept + [(t_turn, node, True) for t_turn, node in touches]
