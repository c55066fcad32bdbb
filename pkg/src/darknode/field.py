"""Cavity mode function and the Gaussian pump pulse matched to it.

Lengths are in wavelengths, so the wavenumber is exactly ``2*pi``: nodes sit
at ``z = n/2`` and antinodes at ``z = 1/4 + n/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import PhysicalParams, PulseShape

K_WAVE = 2.0 * np.pi


@dataclass(frozen=True)
class Position:
    """Axial coordinate ``z`` and radial distance ``rho`` from the axis, in wavelengths."""

    z: float
    rho: float = 0.0

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be non-negative")


def waist(z, waist0: float):
    """Beam radius w(z) = w0 * sqrt(1 + z^2 / z_R^2), Rayleigh range z_R = pi w0^2."""
    z_rayleigh = np.pi * waist0**2
    return waist0 * np.sqrt(1.0 + (np.asarray(z) / z_rayleigh) ** 2)


def envelope(z, rho, waist0: float):
    """Transverse/axial envelope (w0 / w(z)) * exp(-rho^2 / w(z)^2)."""
    w = waist(z, waist0)
    return waist0 / w * np.exp(-(np.asarray(rho) ** 2) / w**2)


def chi(pos: Position, waist0: float) -> float:
    """Signed standing-wave Gaussian mode function at ``pos``."""
    if waist0 <= 0:
        raise ValueError("waist0 must be positive")
    return float(envelope(pos.z, pos.rho, waist0) * np.sin(K_WAVE * pos.z))


def chi_1d(z):
    """On-axis mode function sin(2 pi z) used by the one-dimensional scenarios."""
    return np.sin(K_WAVE * np.asarray(z, dtype=float))


def alpha(t, pulse: PulseShape):
    """Pump parameter alpha(t) = alpha0 exp[-(t - T0)^2 / tW^2]."""
    t = np.asarray(t, dtype=float)
    return pulse.alpha0 * np.exp(-((t - pulse.T0) ** 2) / pulse.tW**2)


def alpha_dot(t, pulse: PulseShape):
    """Exact time derivative of :func:`alpha`."""
    t = np.asarray(t, dtype=float)
    return -2.0 * (t - pulse.T0) / pulse.tW**2 * alpha(t, pulse)


def cavity_coupling(pos: Position, params: PhysicalParams) -> float:
    """g(r) = g0 chi(r)."""
    return params.g0 * chi(pos, params.waist0)


def pump_rabi(pos: Position, t: float, params: PhysicalParams) -> float:
    """Pump Rabi frequency with the same spatial profile as the cavity mode.

    Omega(r, t) = r0 g0 alpha(t) chi(r), so Omega / g = r0 alpha(t) wherever
    chi does not vanish.
    """
    return params.r0 * float(alpha(t, params.pulse)) * cavity_coupling(pos, params)
