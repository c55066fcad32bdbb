"""Survival probability averaged over a one-dimensional speed distribution.

The speed density is a Gaussian ``exp[-(v - v0)^2 / dv^2]`` truncated to
``v >= 0``. The average is split into segments whose end points are the
speeds at which one more node is reached within the protocol, so the
integrand is smooth on every segment; each segment is covered by
Gauss-Legendre panels no wider than the distribution width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .dynamics import DEFAULT_RTOL, survival
from .landau_zener import lz_constant_v, node_distances
from .trajectory import Trajectory
from .units import PhysicalParams

ANALYTIC = "analytic"
NUMERIC = "numeric"

DEFAULT_GAUSS_POINTS = 64
TAIL_WIDTHS = 8.0  # exp(-64) beyond this many widths
DEFAULT_DV = 1.2e-3


@dataclass(frozen=True)
class VelocityDistribution:
    v0: float
    dv: float

    def __post_init__(self):
        if self.dv <= 0:
            raise ValueError("dv must be positive")


def pdf_unnormalized(v, dist: VelocityDistribution):
    v = np.asarray(v, dtype=float)
    return np.where(v >= 0, np.exp(-((v - dist.v0) ** 2) / dist.dv**2), 0.0)


def normalization_A(dist: VelocityDistribution) -> float:
    """Integral of :func:`pdf_unnormalized` over ``[0, inf)``."""
    return 0.5 * math.sqrt(math.pi) * dist.dv * (1.0 + math.erf(dist.v0 / dist.dv))


def segment_boundaries(z0: float, v_hi: float, params: PhysicalParams) -> np.ndarray:
    """Speeds ``d_j / (2 T0)`` at which the j-th node ahead of ``z0`` is reached at the end."""
    T = params.protocol_end
    return node_distances(z0, v_hi * T) / T


def node_count(v: float, z0: float, params: PhysicalParams) -> int:
    """Nodes crossed by an atom moving from ``z0`` at constant speed ``v`` over the protocol."""
    return int(np.sum(node_distances(z0, v * params.protocol_end) <= v * params.protocol_end))


class SurvivalTable:
    """Numerically integrated P(v) on an adaptive grid, linearly interpolated.

    Intervals are bisected until the midpoint deviates from the linear
    interpolant by at most ``interp_tol``. Built once, then read-only.
    """

    def __init__(self, v: np.ndarray, p: np.ndarray, z0: float):
        self.v = np.asarray(v, dtype=float)
        self.p = np.asarray(p, dtype=float)
        self.z0 = z0

    def __call__(self, v):
        return np.interp(v, self.v, self.p)

    def __len__(self):
        return len(self.v)

    @classmethod
    def build(
        cls,
        z0: float,
        params: PhysicalParams,
        v_max: float,
        v_min: float = 0.0,
        interp_tol: float = 1e-3,
        initial_step: float = 5e-4,
        min_step: float = 1e-6,
        tol: float = DEFAULT_RTOL,
        map_fn: Callable[..., Iterable] = map,
    ) -> "SurvivalTable":
        def evaluate(vs):
            return list(map_fn(_survival_point, [(float(v), z0, params, tol) for v in vs]))

        n = max(int(math.ceil((v_max - v_min) / initial_step)), 2)
        grid = list(np.linspace(v_min, v_max, n + 1))
        values = evaluate(grid)
        table = dict(zip(grid, values))
        pending = list(zip(grid[:-1], grid[1:]))
        while pending:
            mids = [(a + b) / 2 for a, b in pending if b - a > 2 * min_step]
            if not mids:
                break
            for m, pm in zip(mids, evaluate(mids)):
                table[m] = pm
            nxt = []
            for a, b in pending:
                m = (a + b) / 2
                if m in table and abs(table[m] - 0.5 * (table[a] + table[b])) > interp_tol:
                    nxt += [(a, m), (m, b)]
            pending = nxt
        vs = sorted(table)
        return cls(np.array(vs), np.array([table[v] for v in vs]), z0)


def _survival_point(args) -> float:
    v, z0, params, tol = args
    return survival(Trajectory.constant_v(v, z0), params, tol=tol)


def ensemble_survival(
    dist: VelocityDistribution,
    params: PhysicalParams,
    z0: float = 0.25,
    mode: str = ANALYTIC,
    table: SurvivalTable | None = None,
    n_gauss: int = DEFAULT_GAUSS_POINTS,
) -> float:
    """Dark-state survival averaged over ``dist``, P(v0) = B(v0) / A(v0).

    ``mode="analytic"`` uses the Landau-Zener product for each speed;
    ``mode="numeric"`` interpolates ``table`` (built on demand if omitted).
    """
    lo = max(0.0, dist.v0 - TAIL_WIDTHS * dist.dv)
    hi = dist.v0 + TAIL_WIDTHS * dist.dv
    if hi <= 0:
        return 1.0
    if mode == ANALYTIC:
        p_of_v = lambda v: lz_constant_v(v, z0, params)  # noqa: E731
    elif mode == NUMERIC:
        if table is None:
            table = SurvivalTable.build(z0, params, hi, v_min=lo)
        elif table.z0 != z0 or table.v[0] > lo or table.v[-1] < hi:
            raise ValueError("survival table does not cover the requested speeds")
        p_of_v = table
    else:
        raise ValueError(f"unknown mode {mode!r}")

    cuts = [b for b in segment_boundaries(z0, hi, params) if lo < b < hi]
    edges = [lo, *cuts, hi]
    x, w = np.polynomial.legendre.leggauss(n_gauss)
    B = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        # panels no wider than dv; P(v) can drop steeply just past a boundary
        panels = np.linspace(a, b, int(math.ceil((b - a) / dist.dv)) + 1)
        for pa, pb in zip(panels[:-1], panels[1:]):
            v = 0.5 * (pb - pa) * x + 0.5 * (pb + pa)
            B += 0.5 * (pb - pa) * float(np.sum(w * pdf_unnormalized(v, dist) * p_of_v(v)))
    return B / normalization_A(dist)

