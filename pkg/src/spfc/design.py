"""
Inverse design: drive strengths that cancel elastic scattering.

For fixed input and drive detunings, ``t1 = 0`` requires

    omega1^2 = G2 y (x^2 + G1^2) / (z G1 + x G2)
    omega2^2 = G1 y (z^2 + G2^2) / (z G1 + x G2)

with ``x = delta_a``, ``y = delta_a - delta1``, ``z = delta_a - delta1 + delta2``.
A setting is feasible only if both right-hand sides are strictly positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParameterError
from .params import LevelDiagram

__all__ = [
    "DENOMINATOR_TOL",
    "DesignSolution",
    "FeasibilityMap",
    "ConversionPlan",
    "rabi_for_unity",
    "resonant_rabi_ratio",
    "feasibility_map",
    "plan_conversion",
]

DENOMINATOR_TOL = 1e-12

SINGULAR = "denominator singular"
OMEGA1_BAD = "omega1_sq nonpositive"
OMEGA2_BAD = "omega2_sq nonpositive"


@dataclass(frozen=True)
class DesignSolution:
    """Required squared Rabi frequencies (units of gamma2**2) and feasibility.

    Squared frequencies are ``nan`` where the shared denominator is singular.
    """

    omega1_sq: float
    omega2_sq: float
    feasible: bool
    diagnostics: tuple = ()

    @property
    def omega1(self) -> Optional[float]:
        return math.sqrt(self.omega1_sq) if self.feasible else None

    @property
    def omega2(self) -> Optional[float]:
        return math.sqrt(self.omega2_sq) if self.feasible else None

    @property
    def diagnostic(self) -> str:
        return ";".join(self.diagnostics)

    def to_dict(self) -> dict:
        def finite(v):
            return None if math.isnan(v) else v
        return {"omega1_sq": finite(self.omega1_sq), "omega2_sq": finite(self.omega2_sq),
                "omega1": self.omega1, "omega2": self.omega2,
                "feasible": self.feasible, "diagnostics": list(self.diagnostics)}


def _rabi_arrays(delta_a, delta1, delta2, gamma1, gamma2):
    x = np.asarray(delta_a, dtype=float)
    y = x - np.asarray(delta1, dtype=float)
    z = y + np.asarray(delta2, dtype=float)
    den = z * gamma1 + x * gamma2
    singular = np.abs(den) < DENOMINATOR_TOL
    safe = np.where(singular, 1.0, den)
    o1 = np.where(singular, np.nan, gamma2 * y * (x * x + gamma1 ** 2) / safe)
    o2 = np.where(singular, np.nan, gamma1 * y * (z * z + gamma2 ** 2) / safe)
    return o1, o2, singular


def _diagnose(o1: float, o2: float, singular: bool) -> tuple:
    if singular:
        return (SINGULAR,)
    diag = []
    if not o1 > 0:
        diag.append(OMEGA1_BAD)
    if not o2 > 0:
        diag.append(OMEGA2_BAD)
    return tuple(diag)


def _check_gammas(gamma1, gamma2):
    if not (gamma1 > 0 and gamma2 > 0):
        raise ParameterError("gamma1 and gamma2 must be positive")


def rabi_for_unity(delta_a: float, delta1: float, delta2: float,
                   gamma1: float, gamma2: float = 1.0) -> DesignSolution:
    """Rabi frequencies that make the elastic amplitude vanish.

    Infeasibility is reported through ``feasible`` and ``diagnostics`` rather
    than raised.
    """
    _check_gammas(gamma1, gamma2)
    o1, o2, singular = _rabi_arrays(delta_a, delta1, delta2, gamma1, gamma2)
    o1, o2, singular = float(o1), float(o2), bool(singular)
    diag = _diagnose(o1, o2, singular)
    return DesignSolution(o1, o2, not diag, diag)


def resonant_rabi_ratio(gamma1: float, gamma2: float, omega2: float) -> float:
    """``omega1`` satisfying ``gamma1/gamma2 = omega1**2/omega2**2``."""
    if not (gamma1 > 0 and gamma2 > 0 and omega2 > 0):
        raise ParameterError("gamma1, gamma2 and omega2 must be positive")
    return omega2 * math.sqrt(gamma1 / gamma2)


@dataclass(frozen=True)
class FeasibilityMap:
    """Design solutions on a rectilinear ``(delta1, delta2)`` grid.

    Arrays are indexed ``[i, j]`` with ``i`` along ``delta1`` and ``j`` along
    ``delta2``. A 1-D slice is a map with a single ``delta1`` value.
    """

    delta1: np.ndarray
    delta2: np.ndarray
    omega1_sq: np.ndarray
    omega2_sq: np.ndarray
    feasible: np.ndarray
    diagnostics: np.ndarray
    delta_a: float
    gamma1: float
    gamma2: float

    @property
    def shape(self) -> tuple:
        return self.feasible.shape

    def cell(self, i: int, j: int) -> DesignSolution:
        diag = tuple(d for d in str(self.diagnostics[i, j]).split(";") if d)
        return DesignSolution(float(self.omega1_sq[i, j]), float(self.omega2_sq[i, j]),
                              bool(self.feasible[i, j]), diag)

    def rows(self):
        """Yield ``(delta1, delta2, DesignSolution)`` in grid order."""
        for i, d1 in enumerate(self.delta1):
            for j, d2 in enumerate(self.delta2):
                yield float(d1), float(d2), self.cell(i, j)

    @property
    def feasible_fraction(self) -> float:
        return float(np.mean(self.feasible))


def _grid(values, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError(f"{name} grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} grid must be finite")
    if arr.size > 1 and not np.all(np.diff(arr) > 0):
        raise ParameterError(f"{name} grid must be strictly increasing")
    return arr


def feasibility_map(delta1, delta2, gamma1: float, gamma2: float = 1.0,
                    delta_a: float = 3.0) -> FeasibilityMap:
    """Evaluate :func:`rabi_for_unity` over the outer product of two grids.

    Pass a scalar for ``delta1`` to get a 1-D slice against ``delta2``.
    """
    _check_gammas(gamma1, gamma2)
    d1 = _grid(delta1, "delta1")
    d2 = _grid(delta2, "delta2")
    D1, D2 = np.meshgrid(d1, d2, indexing="ij")
    o1, o2, singular = _rabi_arrays(delta_a, D1, D2, gamma1, gamma2)
    diagnostics = np.empty(D1.shape, dtype=object)
    feasible = np.zeros(D1.shape, dtype=bool)
    for idx in np.ndindex(D1.shape):
        diag = _diagnose(float(o1[idx]), float(o2[idx]), bool(singular[idx]))
        diagnostics[idx] = ";".join(diag)
        feasible[idx] = not diag
    return FeasibilityMap(d1, d2, o1, o2, feasible, diagnostics,
                          float(delta_a), float(gamma1), float(gamma2))


@dataclass(frozen=True)
class ConversionPlan:
    """Laser settings realising a target frequency shift with ``t1 = 0``."""

    feasible: bool
    shift: float
    delta_a: float
    delta1: Optional[float] = None
    delta2: Optional[float] = None
    omega_L1: Optional[float] = None
    omega_L2: Optional[float] = None
    solution: Optional[DesignSolution] = None
    candidates: int = 0
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible, "shift": self.shift, "delta_a": self.delta_a,
            "delta1": self.delta1, "delta2": self.delta2,
            "omega_L1": self.omega_L1, "omega_L2": self.omega_L2,
            "solution": None if self.solution is None else self.solution.to_dict(),
            "candidates": self.candidates, "notes": list(self.notes),
        }


def plan_conversion(shift: float, diagram: LevelDiagram, gamma1: float,
                    gamma2: float = 1.0, delta_a: float = 3.0,
                    delta1_range: tuple = (-10.0, 10.0),
                    points: int = 1001) -> ConversionPlan:
    """Choose drive-laser frequencies for a target shift ``omega_in - omega_out``.

    The shift fixes ``omega_L1 - omega_L2 = shift - omega_cb``, which ties
    ``delta2 = delta1 + (omega_d - omega_a) + (omega_L1 - omega_L2)``. The free
    knob ``delta1`` is scanned on ``linspace(*delta1_range, points)``; among
    feasible cells the one with the smallest ``omega1**2 + omega2**2`` wins,
    ties broken by the smallest ``|delta1|`` and then by grid order.

    The laser frequencies already stored in ``diagram`` are ignored.
    """
    _check_gammas(gamma1, gamma2)
    if points < 1:
        raise ParameterError("points must be positive")
    lo, hi = delta1_range
    if points > 1 and not lo < hi:
        raise ParameterError("delta1_range must be increasing")

    laser_diff = shift - diagram.omega_cb
    d1 = np.linspace(lo, hi, points)
    d2 = d1 + (diagram.omega_d - diagram.omega_a) + laser_diff
    o1, o2, singular = _rabi_arrays(delta_a, d1, d2, gamma1, gamma2)
    ok = (~singular) & (o1 > 0) & (o2 > 0)
    if not np.any(ok):
        return ConversionPlan(False, float(shift), float(delta_a),
                              notes=("no feasible drive detuning in range",))

    power = np.where(ok, o1 + o2, np.inf)
    best = np.flatnonzero(power == power.min())
    i = int(best[np.argmin(np.abs(d1[best]))])
    delta1, delta2 = float(d1[i]), float(d2[i])
    omega_L1 = (diagram.omega_a - diagram.omega_f) - delta1
    omega_L2 = omega_L1 - laser_diff
    return ConversionPlan(
        True, float(shift), float(delta_a), delta1, delta2, omega_L1, omega_L2,
        rabi_for_unity(delta_a, delta1, delta2, gamma1, gamma2),
        int(np.count_nonzero(ok)))
