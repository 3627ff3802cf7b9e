"""
Physical parameter records and frequency bookkeeping.

All rates and detunings are dimensionless multiples of the reference decay
rate ``gamma2`` (normally 1.0). The lower long-lived level ``|b>`` is the
energy zero. Detunings follow

    delta_a = omega_a - k
    delta1  = (omega_a - omega_f) - omega_L1
    delta2  = (omega_d - omega_f) - omega_L2

with ``v_g = hbar = 1`` so photon frequency and wave number coincide.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Mapping

from .errors import ParameterError

__all__ = [
    "SystemParams",
    "LevelDiagram",
    "InputPhoton",
    "validate",
    "output_frequency",
    "conversion_kind",
]


def _require_finite(name: str, value: float) -> None:
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise ParameterError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")


def _from_mapping(cls, data: Mapping[str, Any]):
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ParameterError(
            f"unknown field(s) for {cls.__name__}: {', '.join(unknown)}")
    return cls(**dict(data))


@dataclass(frozen=True)
class SystemParams:
    """Couplings, drives, detunings and intrinsic loss rates (units of gamma2).

    Parameters
    ----------
    gamma1, gamma2 : float
        Decay rates of ``|a>-|b>`` and ``|d>-|c>`` into the waveguide loop.
    omega1, omega2 : float
        Rabi frequencies of the drives on ``|a>-|f>`` and ``|d>-|f>``.
    delta1, delta2 : float
        Drive detunings.
    gamma_a, gamma_f, gamma_d : float
        Intrinsic (non-waveguide) decay rates of the excited levels.
    """

    gamma1: float = 1.0
    gamma2: float = 1.0
    omega1: float = 0.0
    omega2: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    gamma_a: float = 0.0
    gamma_f: float = 0.0
    gamma_d: float = 0.0

    def __post_init__(self):
        validate(self)

    @property
    def lossless(self) -> bool:
        return self.gamma_a == 0 and self.gamma_f == 0 and self.gamma_d == 0

    def with_dissipation(self, gamma: float) -> "SystemParams":
        """Return a copy with the same loss rate on ``|a>``, ``|f>`` and ``|d>``."""
        return replace(self, gamma_a=gamma, gamma_f=gamma, gamma_d=gamma)

    def without_dissipation(self) -> "SystemParams":
        return self.with_dissipation(0.0)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SystemParams":
        """Build from a mapping; field names must match exactly."""
        return _from_mapping(cls, data)

    @classmethod
    def from_json(cls, text: str) -> "SystemParams":
        return cls.from_dict(json.loads(text))


def validate(params: SystemParams) -> SystemParams:
    """Check every invariant of ``params`` and return it unchanged.

    Raises
    ------
    ParameterError
        Naming the first violated invariant.
    """
    for f in fields(params):
        _require_finite(f.name, getattr(params, f.name))
    if params.gamma1 <= 0:
        raise ParameterError("gamma1 must be positive")
    if params.gamma2 <= 0:
        raise ParameterError("gamma2 must be positive")
    if params.omega1 < 0:
        raise ParameterError("omega1 must be non-negative")
    if params.omega2 < 0:
        raise ParameterError("omega2 must be non-negative")
    for name in ("gamma_a", "gamma_f", "gamma_d"):
        if getattr(params, name) < 0:
            raise ParameterError(f"{name} must be non-negative")
    return params


@dataclass(frozen=True)
class InputPhoton:
    """Monochromatic input photon, described by its detuning from ``|a>``."""

    delta_a: float = 0.0

    def __post_init__(self):
        _require_finite("delta_a", self.delta_a)


@dataclass(frozen=True)
class LevelDiagram:
    """Bare level frequencies and drive-laser frequencies in absolute units."""

    omega_a: float
    omega_b: float
    omega_c: float
    omega_d: float
    omega_f: float
    omega_L1: float = 0.0
    omega_L2: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            _require_finite(f.name, getattr(self, f.name))

    @property
    def omega_cb(self) -> float:
        return self.omega_c - self.omega_b

    @property
    def laser_difference(self) -> float:
        return self.omega_L1 - self.omega_L2

    @property
    def frequency_shift(self) -> float:
        """Energy removed from the photon by inelastic scattering."""
        return self.omega_cb + self.laser_difference

    def dressed(self) -> dict:
        """Level frequencies in the frame rotating with the drives."""
        return {
            "omega_f": self.omega_f + self.omega_L1,
            "omega_d": self.omega_d + self.laser_difference,
            "omega_c": self.omega_c + self.laser_difference,
        }

    def detunings(self, omega_in: float) -> tuple[float, float, float]:
        """Return ``(delta_a, delta1, delta2)`` for an input photon at ``omega_in``."""
        delta_a = (self.omega_a - self.omega_b) - omega_in
        delta1 = (self.omega_a - self.omega_f) - self.omega_L1
        delta2 = (self.omega_d - self.omega_f) - self.omega_L2
        return delta_a, delta1, delta2

    def with_lasers(self, omega_L1: float, omega_L2: float) -> "LevelDiagram":
        return replace(self, omega_L1=omega_L1, omega_L2=omega_L2)

    def retrieval(self) -> "LevelDiagram":
        """Relabel for the reverse process: b<->c, a<->d, L1<->L2."""
        return LevelDiagram(
            omega_a=self.omega_d, omega_b=self.omega_c, omega_c=self.omega_b,
            omega_d=self.omega_a, omega_f=self.omega_f,
            omega_L1=self.omega_L2, omega_L2=self.omega_L1)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LevelDiagram":
        return _from_mapping(cls, data)

    @classmethod
    def from_json(cls, text: str) -> "LevelDiagram":
        return cls.from_dict(json.loads(text))


def output_frequency(omega_in: float, diagram: LevelDiagram) -> float:
    """Frequency of the inelastically scattered photon.

    ``omega_out = omega_in - [omega_cb + (omega_L1 - omega_L2)]``.
    """
    return omega_in - diagram.frequency_shift


def conversion_kind(omega_in: float, diagram: LevelDiagram) -> str:
    """Classify the conversion as ``"up"``, ``"down"`` or ``"degenerate"``."""
    out = output_frequency(omega_in, diagram)
    if out > omega_in:
        return "up"
    if out < omega_in:
        return "down"
    return "degenerate"
