"""Validity checks for the Landau-Zener mapping and trap-frequency estimates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .field import K_WAVE
from .landau_zener import predict
from .trajectory import Trajectory
from .units import HBAR_SI, PhysicalParams

#: Worst-case pump parameter, taken where alpha' peaks.
WORST_ALPHA = 0.55
#: sqrt(1 + WORST_ALPHA^2) as rounded for the small-term estimate.
WORST_SQRT_FACTOR = 1.14
#: Phase k v u at the edge of the linear domain, arcsin(0.7) rounded.
EDGE_PHASE = 0.77
#: Speed above which an atom starting at an antinode can reach a node [lambda*gamma].
SPEED_THRESHOLD = 1.0 / 48.0
#: Largest single-crossing exponent 2 pi h / (k v g0) still called adiabatic.
EXPONENT_LIMIT = 0.1


@dataclass(frozen=True)
class SmallTermTrace:
    samples: list[tuple[float, float]]
    max_S: float
    lower_limit: float


def _scaling_frequency(v: float, params: PhysicalParams) -> float:
    return math.sqrt(K_WAVE * v * params.g0 * WORST_SQRT_FACTOR)


def small_term_lower_limit(v: float, params: PhysicalParams) -> float:
    """Start ``a`` of the rescaled integration domain, ``sqrt(k v g0 sqrt(1+a^2)) * 0.77 / (k v)``."""
    if v <= 0:
        raise ValueError("v must be positive")
    return _scaling_frequency(v, params) * EDGE_PHASE / (K_WAVE * v)


def small_term_S(x, v: float, params: PhysicalParams):
    """S(x) = 2 |int_{-a}^{x} exp(-i tau^2) tau dtau| = |exp(-i x^2) - exp(-i a^2)|."""
    a = small_term_lower_limit(v, params)
    x = np.asarray(x, dtype=float)
    return np.abs(np.exp(-1j * x**2) - cmath.exp(-1j * a * a))


def small_term_trace(v: float, params: PhysicalParams, x_max: float | None = None, points: int = 2001) -> SmallTermTrace:
    """Sampled S(x) on ``[-a, x_max]`` (default ``x_max = a``).

    ``max_S`` is the exact supremum on the interval rather than the sample
    maximum: with ``S = 2 |sin((x^2 - a^2) / 2)|`` it only depends on the
    range of ``x^2``.
    """
    a = small_term_lower_limit(v, params)
    x_max = a if x_max is None else x_max
    if x_max < -a:
        raise ValueError("x_max must not precede the lower limit -a")
    xs = np.linspace(-a, x_max, points)
    S = small_term_S(xs, v, params)
    u_lo = 0.0 if x_max >= 0 else x_max * x_max
    u_hi = max(a * a, x_max * x_max)
    return SmallTermTrace(list(zip(xs.tolist(), S.tolist())), _sup_S(u_lo, u_hi, a), a)


def _sup_S(u_lo: float, u_hi: float, a: float) -> float:
    """max of 2|sin((u - a^2)/2)| for u in [u_lo, u_hi]."""
    lo, hi = (u_lo - a * a) / 2, (u_hi - a * a) / 2
    # a peak of |sin| sits at pi/2 + n pi
    n = math.ceil((lo - math.pi / 2) / math.pi)
    if math.pi / 2 + n * math.pi <= hi:
        return 2.0
    return 2.0 * max(abs(math.sin(lo)), abs(math.sin(hi)))


def linearization_error(bound: float) -> float:
    """Largest relative error of sin(kz) ≈ kz over the domain |sin(kz)| <= bound."""
    if not 0 < bound < 1:
        raise ValueError("bound must lie in (0, 1)")
    phase = math.asin(bound)
    return (phase - bound) / bound


def recoil_frequency(params: PhysicalParams) -> float:
    """omega_R = hbar k^2 / (2 M) in units of gamma."""
    k_si = 2.0 * math.pi / params.lambda_si
    return HBAR_SI * k_si**2 / (2.0 * params.mass_si) / params.gamma_si


def trap_frequencies(params: PhysicalParams) -> tuple[float, float]:
    """Axial and radial oscillation frequencies in the deepest well [gamma].

    omega_z = sqrt(2 g0 omega_R), omega_rho = 2 sqrt(g0 omega_R) / (k w(0)).
    """
    omega_r = recoil_frequency(params)
    omega_z = math.sqrt(2.0 * params.g0 * omega_r)
    omega_rho = 2.0 * math.sqrt(params.g0 * omega_r) / (K_WAVE * params.waist0)
    return omega_z, omega_rho


@dataclass(frozen=True)
class ThresholdReport:
    passed: bool
    worst_exponent: float
    node_count: int
    travel: float  # axial distance covered during the protocol [lambda]
    above_speed_threshold: bool
    exponents: list[float] = field(default_factory=list)


def adiabatic_threshold_check(traj: Trajectory, params: PhysicalParams) -> ThresholdReport:
    """Check 2 pi h(t*) / (k v g0) << 1 at every crossing and that few nodes are crossed.

    Passes when the worst exponent is below :data:`EXPONENT_LIMIT` and at
    most one node is crossed.
    """
    prediction = predict(traj, params)
    exponents = [
        math.inf if ev.v_axial == 0 else 2.0 * math.pi * ev.h_star / (K_WAVE * ev.v_axial * ev.g_local)
        for ev in prediction.per_node
    ]
    worst = max(exponents, default=0.0)
    return ThresholdReport(
        passed=worst < EXPONENT_LIMIT and len(exponents) <= 1,
        worst_exponent=worst,
        node_count=len(exponents),
        travel=traj.max_axial_speed * params.protocol_end,
        above_speed_threshold=traj.max_axial_speed >= SPEED_THRESHOLD,
        exponents=exponents,
    )
