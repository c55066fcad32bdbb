"""Landau-Zener survival of the dark state across nodal planes.

Near a node the gap ``eps(t) ≈ k v g0 sqrt(1 + alpha^2) (t - t*)`` is linear
and the dark state couples to the bright manifold with strength ``sqrt2 K``.
Freezing ``alpha`` and ``K`` at the crossing gives

    P = exp(-2 pi h(t*) / (k v g0)),   h = 2 K^2 / sqrt(1 + alpha^2),

and consecutive crossings are treated as independent, ``P ≈ prod_i P_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dressed import coupling_K
from .field import K_WAVE, alpha, alpha_dot
from .trajectory import CrossingEvent, Trajectory, find_node_crossings
from .units import PhysicalParams, PulseShape


def crossing_strength(t, pulse: PulseShape, r0: float = 1.0):
    """h(t) = 2 K(t)^2 / sqrt(1 + (r0 alpha)^2); equals ``dressed.lz_h`` for r0 = 1."""
    a = alpha(t, pulse)
    K = coupling_K(a, alpha_dot(t, pulse), r0)
    return 2.0 * K * K / np.sqrt(1.0 + (r0 * a) ** 2)


def survival_single(h_star: float, v_axial: float, g0: float) -> float:
    """Dark-state survival after one node crossing at axial speed ``v_axial``.

    Returns 0 for a zero-speed (tangential) touch, the limit of the formula.
    """
    if h_star < 0:
        raise ValueError("h_star must be non-negative")
    if v_axial <= 0:
        return 0.0
    return math.exp(-2.0 * math.pi * h_star / (K_WAVE * v_axial * g0))


def bright_population(h_star: float, v_axial: float, g0: float) -> float:
    """|C+(inf)|^2 = |C-(inf)|^2 = (1 - P) / 2 for one crossing."""
    return 0.5 * (1.0 - survival_single(h_star, v_axial, g0))


@dataclass(frozen=True)
class LzPrediction:
    p_total: float
    per_node: list[CrossingEvent] = field(default_factory=list)
    tangential_flag: bool = False
    overlap_flag: bool = False

    @property
    def n_nodes(self) -> int:
        return len(self.per_node)


def predict(
    traj: Trajectory,
    params: PhysicalParams,
    window: tuple[float, float] | None = None,
) -> LzPrediction:
    """Product of single-crossing survival factors along ``traj``.

    ``overlap_flag`` marks crossings closer in time than ``10 / eps_max``,
    where the independent-crossing product is questionable.
    """
    events = find_node_crossings(traj, params, window)
    p_total = 1.0
    for ev in events:
        p_total *= ev.p_i
    eps_max = params.g0 * math.sqrt(1.0 + (params.r0 * params.alpha0) ** 2)
    times = [ev.t_star for ev in events]
    overlap = any(b - a < 10.0 / eps_max for a, b in zip(times, times[1:]))
    return LzPrediction(
        p_total=p_total,
        per_node=events,
        tangential_flag=any(ev.tangential for ev in events),
        overlap_flag=overlap,
    )


def node_distances(z0: float, reach: float) -> np.ndarray:
    """Distances from ``z0`` to the nodes ahead (+z) up to ``reach`` wavelengths.

    A node exactly at ``z0`` is not counted.
    """
    first = math.floor(2.0 * z0) + 1
    last = math.floor(2.0 * (z0 + reach))
    return np.arange(first, last + 1) * 0.5 - z0


def lz_constant_v(v, z0: float, params: PhysicalParams) -> np.ndarray:
    """Vectorized :func:`predict` for on-axis constant-velocity motion along +z.

    Crossing times are ``d_j / v`` for the node distances ``d_j``, so no root
    finding is needed.
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    out = np.ones_like(v)
    if v.size == 0:
        return out
    T = params.protocol_end
    for d in node_distances(z0, float(v.max()) * T):
        reached = v * T >= d
        if not reached.any():
            continue
        vr = v[reached]
        h = crossing_strength(d / vr, params.pulse, params.r0)
        out[reached] *= np.exp(-2.0 * np.pi * h / (K_WAVE * vr * params.g0))
    return out
