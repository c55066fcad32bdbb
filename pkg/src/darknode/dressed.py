"""Dressed-state spectrum and the nonadiabatic coupling between dressed states.

Bare basis ordering is ``(|e,0>, |g0,1>, |g1,0>)``. With a real pump
parameter the dark and bright states depend only on ``r0 * alpha``:

    |D>  = (|g1,0> - r0 a |g0,1>) / sqrt(1 + r0^2 a^2)
    |B>  = (|g0,1> + r0 a |g1,0>) / sqrt(1 + r0^2 a^2)
    |B±> = (|B> ± |e,0>) / sqrt(2)

and the position dependence sits entirely in the signed gap
``eps = chi * g0 * sqrt(1 + r0^2 a^2)`` with ``E± = ±eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .field import alpha, alpha_dot
from .units import PhysicalParams, PulseShape

SQRT2 = np.sqrt(2.0)


class BasisLabel(Enum):
    D = "D"
    B_PLUS = "B+"
    B_MINUS = "B-"


@dataclass(frozen=True)
class DressedSpectrum:
    e0: float
    e_plus: float
    e_minus: float
    epsilon: float  # signed gap of the resonant dressed basis


def hamiltonian_matrix(g, omega, delta=0.0) -> np.ndarray:
    """Interaction-picture Hamiltonian [[delta, g, Omega], [g*, 0, 0], [Omega*, 0, 0]]."""
    return np.array(
        [
            [delta, g, omega],
            [np.conj(g), 0.0, 0.0],
            [np.conj(omega), 0.0, 0.0],
        ],
        dtype=complex,
    )


def eigenvalues(g, omega, delta=0.0) -> tuple[float, float, float]:
    """Closed-form ``(E0, E+, E-)`` of :func:`hamiltonian_matrix`.

    For ``delta == 0`` the bright energies are ``±sqrt(|g|^2 + |Omega|^2)``
    with the sign of ``g`` carried by ``E+`` (real ``g`` only).
    """
    coupling2 = abs(g) ** 2 + abs(omega) ** 2
    if delta == 0:
        eps = np.sqrt(coupling2)
        if np.isrealobj(g) and g < 0:
            eps = -eps
        return 0.0, float(eps), float(-eps)
    root = np.sqrt(4.0 * coupling2 + delta**2)
    return 0.0, float(0.5 * (delta + root)), float(0.5 * (delta - root))


def dressed_energies(chi_val: float, alpha_val: float, params: PhysicalParams) -> DressedSpectrum:
    """Dressed energies at mode amplitude ``chi_val`` and pump parameter ``alpha_val``."""
    g = chi_val * params.g0
    omega = params.r0 * alpha_val * g
    epsilon = g * np.sqrt(1.0 + (params.r0 * alpha_val) ** 2)
    if params.delta == 0:
        return DressedSpectrum(0.0, float(epsilon), float(-epsilon), float(epsilon))
    e0, ep, em = eigenvalues(g, omega, params.delta)
    return DressedSpectrum(e0, ep, em, float(epsilon))


def dark_state(ra: float) -> np.ndarray:
    """Dark state for real ``ra = r0 * alpha``; no |e,0> component."""
    norm = np.sqrt(1.0 + ra * ra)
    return np.array([0.0, -ra / norm, 1.0 / norm])


def bright_states(ra: float) -> tuple[np.ndarray, np.ndarray]:
    """``(|B+>, |B->)`` for real ``ra = r0 * alpha``, phase factor set to one."""
    norm = np.sqrt(1.0 + ra * ra)
    b = np.array([0.0, 1.0 / norm, ra / norm])
    e = np.array([1.0, 0.0, 0.0])
    return (b + e) / SQRT2, (b - e) / SQRT2


def eigenvectors(g: float, omega: float, delta: float = 0.0) -> dict[str, np.ndarray]:
    """Normalized eigenvectors keyed ``"0"``, ``"+"``, ``"-"`` for real couplings.

    The bright states solve ``H v = E v`` directly, ``v ∝ (E, g, Omega)``,
    which is valid whenever ``E != 0``.
    """
    coupling = np.hypot(g, omega)
    if coupling == 0:
        raise ValueError("eigenvectors are degenerate when g = Omega = 0")
    out = {"0": np.array([0.0, -omega, g]) / coupling}
    _, ep, em = eigenvalues(g, omega, delta)
    for key, energy in (("+", ep), ("-", em)):
        vec = np.array([energy, g, omega], dtype=float)
        out[key] = vec / np.linalg.norm(vec)
    return out


def coupling_K(alpha_val, alpha_dot_val, r0: float = 1.0):
    """Nonadiabatic coupling <D|dB±/dt> = r0 alpha' / (sqrt2 (1 + r0^2 alpha^2)).

    Signed: it changes sign with ``alpha_dot`` at the pulse peak.
    """
    if np.iscomplexobj(alpha_val) or np.iscomplexobj(alpha_dot_val):
        raise TypeError("coupling_K requires a real pump parameter")
    ra = r0 * np.asarray(alpha_val, dtype=float)
    return r0 * np.asarray(alpha_dot_val, dtype=float) / (SQRT2 * (1.0 + ra * ra))


def adiabaticity_f(t, pulse: PulseShape, g0: float):
    """f(t) = |alpha'| / (sqrt2 g0 (1 + alpha^2)^{3/2}) for r0 = 1.

    |K / E±| = f(t) / |sin kz| on the cavity axis.
    """
    a = alpha(t, pulse)
    return np.abs(alpha_dot(t, pulse)) / (SQRT2 * g0 * (1.0 + a * a) ** 1.5)


def lz_h(t, pulse: PulseShape):
    """Crossing strength h(t) = alpha'^2 / (1 + alpha^2)^{5/2} for r0 = 1.

    Identical to ``2 K^2 / sqrt(1 + alpha^2)``.
    """
    a = alpha(t, pulse)
    return alpha_dot(t, pulse) ** 2 / (1.0 + a * a) ** 2.5
