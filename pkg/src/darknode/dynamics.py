"""Direct integration of the adiabatic-frame amplitude equations.

The state is expanded on the instantaneous dressed basis ``{|D>, |B+>, |B->}``
with the adiabatic phases factored out. For a real pump parameter

    C0' = -K (e^{-i th+} C+ + e^{-i th-} C-)
    C±' =  K e^{i th±} C0 + i (delta/2) (C± + e^{±2i Phi} C∓)
    Phi' = eps(t) = chi(z(t)) g0 sqrt(1 + r0^2 alpha^2)

with ``th± = ±Phi + delta t``. The detuning terms vanish identically for
``delta = 0``. ``Phi`` is integrated alongside the amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .dressed import coupling_K
from .field import alpha, alpha_dot, chi, chi_1d
from .trajectory import CONSTANT_V, HARMONIC, LINE_3D, Trajectory, position
from .units import PhysicalParams

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
MAX_STEPS = 50_000_000

_KIND_CODE = {CONSTANT_V: 0, HARMONIC: 1, LINE_3D: 2}


class IntegrationError(RuntimeError):
    """Raised when the adaptive integration cannot meet its tolerance."""


@dataclass(frozen=True)
class AmplitudeState:
    c0: complex = 1.0 + 0.0j
    c_plus: complex = 0.0j
    c_minus: complex = 0.0j
    phi: float = 0.0

    @property
    def norm(self) -> float:
        return abs(self.c0) ** 2 + abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2

    @property
    def p_dark(self) -> float:
        return abs(self.c0) ** 2

    def to_array(self) -> np.ndarray:
        return np.array(
            [
                self.c0.real,
                self.c0.imag,
                self.c_plus.real,
                self.c_plus.imag,
                self.c_minus.real,
                self.c_minus.imag,
                self.phi,
            ]
        )

    @classmethod
    def from_array(cls, y) -> "AmplitudeState":
        return cls(complex(y[0], y[1]), complex(y[2], y[3]), complex(y[4], y[5]), float(y[6]))


@dataclass(frozen=True)
class IntegrationReport:
    final_state: AmplitudeState
    p_dark: float
    max_norm_drift: float
    steps: int
    rejected_steps: int
    backend: str = ""


def local_chi(traj: Trajectory, t: float, params: PhysicalParams) -> float:
    """Mode function seen by the atom: on-axis sin(kz) in 1D, full Gaussian mode in 3D."""
    if traj.kind == LINE_3D:
        return chi(position(traj, t), params.waist0)
    return float(chi_1d(traj.z(t)))


def gap(t: float, traj: Trajectory, params: PhysicalParams) -> float:
    """Signed bright-state energy eps(t) [gamma]."""
    a = float(alpha(t, params.pulse))
    return local_chi(traj, t, params) * params.g0 * math.sqrt(1.0 + (params.r0 * a) ** 2)


def _coupling(t: float, params: PhysicalParams) -> float:
    pulse = params.pulse
    return float(coupling_K(alpha(t, pulse), alpha_dot(t, pulse), params.r0))


def rhs_resonant(t: float, state: AmplitudeState, traj: Trajectory, params: PhysicalParams) -> AmplitudeState:
    """Time derivative of ``state`` for zero detuning."""
    K = _coupling(t, params)
    eps = gap(t, traj, params)
    ep = complex(math.cos(state.phi), math.sin(state.phi))
    em = ep.conjugate()
    return AmplitudeState(
        c0=-em * K * state.c_plus - ep * K * state.c_minus,
        c_plus=ep * K * state.c0,
        c_minus=em * K * state.c0,
        phi=eps,
    )


def rhs_detuned(t: float, state: AmplitudeState, traj: Trajectory, params: PhysicalParams) -> AmplitudeState:
    """Time derivative of ``state`` for arbitrary detuning.

    Returns exactly :func:`rhs_resonant` when ``params.delta == 0``.
    """
    if params.delta == 0:
        return rhs_resonant(t, state, traj, params)
    K = _coupling(t, params)
    eps = gap(t, traj, params)
    delta = params.delta
    ep = complex(math.cos(state.phi + delta * t), math.sin(state.phi + delta * t))
    em = complex(math.cos(-state.phi + delta * t), math.sin(-state.phi + delta * t))
    e2 = complex(math.cos(2.0 * state.phi), math.sin(2.0 * state.phi))
    half = 0.5j * delta
    return AmplitudeState(
        c0=-K * (state.c_plus / ep + state.c_minus / em),
        c_plus=K * state.c0 * ep + half * (state.c_minus * e2 + state.c_plus),
        c_minus=K * state.c0 * em + half * (state.c_plus / e2 + state.c_minus),
        phi=eps,
    )


def model_vector(traj: Trajectory, params: PhysicalParams) -> np.ndarray:
    """Flat float64 description of trajectory + physics consumed by the kernels."""
    return np.array(
        [
            _KIND_CODE[traj.kind],
            traj.z0,
            traj.v,
            traj.direction,
            traj.omega_T,
            math.cos(traj.theta),
            math.sin(traj.theta),
            traj.rho0,
            params.waist0,
            params.alpha0,
            params.T0,
            params.tW,
            params.r0,
            params.g0,
            params.delta,
        ],
        dtype=float,
    )


def max_step(params: PhysicalParams) -> float:
    """Step cap: a tenth of the fastest phase period, 2 pi / (max|eps| + |delta|)."""
    eps_max = params.g0 * math.sqrt(1.0 + (params.r0 * params.alpha0) ** 2)
    return 2.0 * math.pi / (eps_max + abs(params.delta)) / 10.0


def integrate(
    traj: Trajectory,
    params: PhysicalParams,
    t_span: tuple[float, float] | None = None,
    tol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    initial: AmplitudeState | None = None,
    backend: str | None = None,
) -> IntegrationReport:
    """Integrate the amplitude equations over ``t_span`` (default ``[0, 2 T0]``).

    The atom starts in the dark state unless ``initial`` is given. Raises
    :class:`IntegrationError` on step-size underflow or if the norm drifts by
    more than ``100 * tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    t0, t1 = t_span if t_span is not None else (0.0, params.protocol_end)
    kern, name = (_backend.kernel, _backend.BACKEND) if backend is None else _backend.load(backend)
    state = initial if initial is not None else AmplitudeState()
    hmax = max_step(params)
    y, steps, rejected, drift, status, t_reached = kern.integrate(
        state.to_array(), float(t0), float(t1), model_vector(traj, params),
        float(tol), float(atol), hmax, min(hmax, 1e-3), MAX_STEPS,
    )
    if status == 1:
        raise IntegrationError(f"step size underflow at t = {t_reached:.6g}")
    if status == 2:
        raise IntegrationError(f"step budget exhausted at t = {t_reached:.6g}")
    if drift > 100.0 * tol:
        raise IntegrationError(f"norm drift {drift:.3g} exceeds 100*tol")
    final = AmplitudeState.from_array(y)
    return IntegrationReport(final, final.p_dark, float(drift), int(steps), int(rejected), name)


def survival(traj: Trajectory, params: PhysicalParams, tol: float = DEFAULT_RTOL) -> float:
    """Final dark-state population for ``traj`` over the full protocol."""
    return integrate(traj, params, tol=tol).p_dark
