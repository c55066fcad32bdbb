"""Natural units and the default Cs / high-Q cavity parameter set.

All quantities exchanged between modules are in natural units:
hbar = 1, time in 1/gamma, length in lambda, velocity in lambda*gamma,
frequencies and energies in gamma. SI only appears at the conversion
boundary (:func:`to_natural` / :func:`to_si`).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

HBAR_SI = 1.054571817e-34  # J s

#: Kinds understood by :func:`to_natural` / :func:`to_si`.
KINDS = ("time", "length", "velocity", "frequency")


@dataclass(frozen=True)
class PulseShape:
    """Gaussian pump envelope ``alpha0 * exp(-(t - T0)**2 / tW**2)``."""

    alpha0: float
    T0: float
    tW: float

    def __post_init__(self):
        for name in ("alpha0", "T0", "tW"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise TypeError(f"{name} must be real, got {value!r}")
        if self.tW <= 0:
            raise ValueError("tW must be positive")
        if self.alpha0 < 0:
            raise ValueError("alpha0 must be non-negative")


@dataclass(frozen=True)
class PhysicalParams:
    """Physical constants of the atom-cavity system and the pump pulse.

    Attributes
    ----------
    g0 : float
        Peak vacuum Rabi coupling [gamma].
    r0 : float
        Pump-to-cavity amplitude ratio, Omega = r0 * alpha(t) * g.
    alpha0, T0, tW : float
        Pulse peak, centre [1/gamma] and width [1/gamma].
    delta : float
        Common detuning [gamma].
    lambda_si, gamma_si, mass_si : float
        Wavelength [m], decay rate [1/s], atomic mass [kg].
    waist0 : float
        Mode waist [lambda].
    """

    g0: float = 50.0 / 5.18
    r0: float = 1.0
    alpha0: float = 30.0
    T0: float = 10.0
    tW: float = 10.0 / 3.0
    delta: float = 0.0
    lambda_si: float = 852.35e-9
    gamma_si: float = 1.0 / 30.70e-9
    mass_si: float = 133 * 1.67e-27
    waist0: float = 30.0

    def __post_init__(self):
        for name, value in dataclasses.asdict(self).items():
            if isinstance(value, complex) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        if self.g0 <= 0:
            raise ValueError("g0 must be positive")
        if self.tW <= 0:
            raise ValueError("tW must be positive")
        if self.T0 <= 0:
            raise ValueError("T0 must be positive")
        if self.alpha0 < 0:
            raise ValueError("alpha0 must be non-negative")
        if self.waist0 <= 0:
            raise ValueError("waist0 must be positive")
        if min(self.lambda_si, self.gamma_si, self.mass_si) <= 0:
            raise ValueError("SI scales must be positive")

    @property
    def pulse(self) -> PulseShape:
        return PulseShape(self.alpha0, self.T0, self.tW)

    @property
    def protocol_end(self) -> float:
        """Duration of the transfer protocol, ``2 * T0``."""
        return 2.0 * self.T0

    @property
    def velocity_unit_si(self) -> float:
        """lambda * gamma in m/s."""
        return self.lambda_si * self.gamma_si

    def replace(self, **changes) -> "PhysicalParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def default_params() -> PhysicalParams:
    """Cs D2 line in a high-Q cavity: g0 = (2pi)50 MHz, alpha0 = 30, T0 = 10/gamma."""
    return PhysicalParams()


def _scale(kind: str, params: PhysicalParams) -> float:
    # SI value = natural value * scale
    if kind == "time":
        return 1.0 / params.gamma_si
    if kind == "length":
        return params.lambda_si
    if kind == "velocity":
        return params.lambda_si * params.gamma_si
    if kind == "frequency":
        return params.gamma_si
    raise ValueError(f"unknown unit kind {kind!r}; expected one of {KINDS}")


def to_natural(value, kind: str, params: PhysicalParams | None = None):
    """Convert an SI quantity (s, m, m/s or rad/s) to natural units."""
    return value / _scale(kind, params or default_params())


def to_si(value, kind: str, params: PhysicalParams | None = None):
    """Convert a natural-unit quantity back to SI."""
    return value * _scale(kind, params or default_params())
