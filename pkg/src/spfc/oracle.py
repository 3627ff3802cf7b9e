"""
Ground-truth amplitudes from the stationary Schrodinger equation.

Projecting ``H|psi> = E|psi>`` onto the one-excitation sector, with the
even-mode ansatz

    B(x) = [theta(-x) + t1 theta(x)] exp(ikx),   C(x) = t2 theta(x) exp(ik'x),

gives two jump conditions for the photon fields at the emitter and three
equations for the atomic amplitudes ``A, F, D`` (levels ``a, f, d``). Field
values at ``x = 0`` use the midpoint rule ``B(0) = (1 + t1)/2``,
``C(0) = t2/2``. Couplings are ``sqrt(2) g_m`` with ``g_m = sqrt(Gamma_m)``.

This module deliberately does not import :mod:`spfc.scattering`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateSystemError
from .params import InputPhoton, SystemParams

__all__ = [
    "UNKNOWNS",
    "CONDITION_LIMIT",
    "StationarySystem",
    "OracleSolution",
    "assemble",
    "assemble_retrieval",
    "solve",
    "solve_retrieval",
    "residual",
]

UNKNOWNS = ("t1", "t2", "A", "F", "D")
CONDITION_LIMIT = 1e14

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class StationarySystem:
    """Five linear equations ``matrix @ u = rhs`` over ``u = (t1, t2, A, F, D)``.

    Row order: photon-b jump, photon-c jump, level a, level f, level d.
    ``initial`` is the atomic state before scattering (``"b"`` or ``"c"``).
    For ``initial == "c"``, ``t1`` is the amplitude to stay in ``|c>``.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    params: SystemParams
    delta_a: float
    initial: str = "b"


@dataclass(frozen=True)
class OracleSolution:
    t1: complex
    t2: complex
    A: complex
    F: complex
    D: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.t1, self.t2, self.A, self.F, self.D])


def _photon_delta(photon) -> float:
    if isinstance(photon, InputPhoton):
        return photon.delta_a
    return InputPhoton(photon).delta_a


def _level_energies(params: SystemParams, delta_a: float):
    # (omega_j - i gamma_j / 2) - E for j = a, f, d with E = k and omega_b = 0
    ea = delta_a - 0.5j * params.gamma_a
    ef = (delta_a - params.delta1) - 0.5j * params.gamma_f
    ed = (delta_a - params.delta1 + params.delta2) - 0.5j * params.gamma_d
    return ea, ef, ed


def assemble(params: SystemParams, photon: Union[InputPhoton, float]) -> StationarySystem:
    """Build the linear system for a photon incident with the atom in ``|b>``."""
    delta_a = _photon_delta(photon)
    c1 = SQRT2 * np.sqrt(params.gamma1)
    c2 = SQRT2 * np.sqrt(params.gamma2)
    ea, ef, ed = _level_energies(params, delta_a)

    m = np.zeros((5, 5), dtype=complex)
    rhs = np.zeros(5, dtype=complex)
    # -i [B(0+) - B(0-)] + c1 A = 0
    m[0, 0] = -1j
    m[0, 2] = c1
    rhs[0] = -1j
    # -i C(0+) + c2 D = 0
    m[1, 1] = -1j
    m[1, 4] = c2
    # ea A + c1 (1 + t1)/2 + O1 F = 0
    m[2, 0] = c1 / 2
    m[2, 2] = ea
    m[2, 3] = params.omega1
    rhs[2] = -c1 / 2
    # ef F + O1 A + O2 D = 0
    m[3, 2] = params.omega1
    m[3, 3] = ef
    m[3, 4] = params.omega2
    # ed D + c2 t2/2 + O2 F = 0
    m[4, 1] = c2 / 2
    m[4, 3] = params.omega2
    m[4, 4] = ed
    return StationarySystem(m, rhs, params, delta_a, "b")


def assemble_retrieval(params: SystemParams,
                       photon: Union[InputPhoton, float]) -> StationarySystem:
    """Build the reverse problem: atom in ``|c>``, photon in the ``k'`` channel.

    ``photon`` is the *forward* input detuning; the retrieval photon carries the
    same total energy, so the three level energies are unchanged. The incident
    channel now couples through ``|d>`` and the outgoing converted channel
    through ``|a>``.
    """
    delta_a = _photon_delta(photon)
    c1 = SQRT2 * np.sqrt(params.gamma1)
    c2 = SQRT2 * np.sqrt(params.gamma2)
    ea, ef, ed = _level_energies(params, delta_a)

    m = np.zeros((5, 5), dtype=complex)
    rhs = np.zeros(5, dtype=complex)
    # outgoing b-channel: -i t2 + c1 A = 0
    m[0, 1] = -1j
    m[0, 2] = c1
    # incoming c-channel: -i (t1 - 1) + c2 D = 0
    m[1, 0] = -1j
    m[1, 4] = c2
    rhs[1] = -1j
    m[2, 1] = c1 / 2
    m[2, 2] = ea
    m[2, 3] = params.omega1
    m[3, 2] = params.omega1
    m[3, 3] = ef
    m[3, 4] = params.omega2
    m[4, 0] = c2 / 2
    m[4, 3] = params.omega2
    m[4, 4] = ed
    rhs[4] = -c2 / 2
    return StationarySystem(m, rhs, params, delta_a, "c")


def solve(system: StationarySystem) -> OracleSolution:
    """Dense LU solve (partial pivoting) of an assembled system.

    Raises
    ------
    DegenerateSystemError
        When the 2-norm condition number exceeds ``CONDITION_LIMIT``.
    """
    cond = np.linalg.cond(system.matrix)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise DegenerateSystemError(
            f"stationary system is singular (condition number {cond:.3g})")
    u = np.linalg.solve(system.matrix, system.rhs)
    return OracleSolution(*(complex(v) for v in u))


def solve_retrieval(params: SystemParams,
                    photon: Union[InputPhoton, float]) -> OracleSolution:
    return solve(assemble_retrieval(params, photon))


def residual(system: StationarySystem, solution: OracleSolution) -> float:
    """Max-norm of ``matrix @ u - rhs``."""
    return float(np.max(np.abs(system.matrix @ solution.vector - system.rhs)))
