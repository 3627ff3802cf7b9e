"""
Closed-form single-photon transport amplitudes of the driven five-level emitter.

The even waveguide mode scatters elastically (atom back in ``|b>``, amplitude
``t1``) or inelastically (atom left in ``|c>``, amplitude ``t2``)::

    t1 = A / B,    t2 = 2i sqrt(gamma1 gamma2) omega1 omega2 / B

``A`` and ``B`` are cubic polynomials in the three one-excitation detunings

    x = delta_a,   y = delta_a - delta1,   z = delta_a - delta1 + delta2

Intrinsic loss enters by shifting each of them by ``-i gamma_j / 2``
(``j = a, f, d``), the complex-energy form of the non-Hermitian term.

Everything here is vectorised over numpy broadcasting; the scalar helpers
wrap the array kernel so both paths share the same arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterError, PoleError, UndefinedFidelityError
from .params import InputPhoton, SystemParams

__all__ = [
    "AmplitudePair",
    "ConversionMetrics",
    "POLE_THRESHOLD",
    "closed_form",
    "amplitudes",
    "amplitude_arrays",
    "amplitudes_two_level_limit",
    "amplitudes_lambda_limit",
    "symmetric_t1",
    "symmetric_unity_detunings",
    "metrics",
    "probability",
    "retrieval_map",
]

POLE_THRESHOLD = 1e-300

PhotonLike = Union[InputPhoton, float]


def probability(t):
    """``|t|**2`` as ``re**2 + im**2``; identical for scalars and arrays."""
    return t.real * t.real + t.imag * t.imag


@dataclass(frozen=True)
class AmplitudePair:
    """Elastic (``t1``) and inelastic (``t2``) even-mode amplitudes."""

    t1: complex
    t2: complex

    @property
    def survival(self) -> float:
        return probability(self.t1) + probability(self.t2)


@dataclass(frozen=True)
class ConversionMetrics:
    p_elastic: float
    p_inelastic: float
    survival: float
    fidelity_f: float


def _detuning_triplet(delta1, delta2, delta_a, gamma_a, gamma_f, gamma_d):
    x = delta_a - 0.5j * gamma_a
    y = (delta_a - delta1) - 0.5j * gamma_f
    z = (delta_a - delta1 + delta2) - 0.5j * gamma_d
    return x, y, z


def closed_form(gamma1, gamma2, omega1, omega2, delta1, delta2, delta_a,
                gamma_a=0.0, gamma_f=0.0, gamma_d=0.0):
    """Array kernel: return ``(t1, t2)`` for broadcastable parameter arrays.

    Raises
    ------
    PoleError
        If ``|B| < 1e-300`` anywhere.
    """
    x, y, z = _detuning_triplet(
        np.asarray(delta1, dtype=float), np.asarray(delta2, dtype=float),
        np.asarray(delta_a, dtype=float), gamma_a, gamma_f, gamma_d)
    o1sq = np.square(omega1)
    o2sq = np.square(omega2)
    g12 = np.multiply(gamma1, gamma2)

    common = x * y * z - o2sq * x - o1sq * z
    num = (common + g12 * y
           + 1j * (gamma1 * y * z - gamma2 * y * x - o2sq * gamma1 + o1sq * gamma2))
    den = (common - g12 * y
           - 1j * (gamma1 * y * z + gamma2 * y * x - o2sq * gamma1 - o1sq * gamma2))

    if np.any(np.abs(den) < POLE_THRESHOLD):
        raise PoleError("amplitude denominator vanishes (non-physical parameters)")
    t1 = num / den
    t2 = 2j * np.sqrt(g12) * np.multiply(omega1, omega2) / den
    return t1, t2


def _delta_a(photon: PhotonLike) -> float:
    if isinstance(photon, InputPhoton):
        return photon.delta_a
    return InputPhoton(photon).delta_a


def _kernel_args(params: SystemParams) -> dict:
    return dict(gamma1=params.gamma1, gamma2=params.gamma2,
                omega1=params.omega1, omega2=params.omega2,
                delta1=params.delta1, delta2=params.delta2,
                gamma_a=params.gamma_a, gamma_f=params.gamma_f,
                gamma_d=params.gamma_d)


def amplitudes(params: SystemParams, photon: PhotonLike) -> AmplitudePair:
    """Transport amplitudes at a single input detuning.

    Parameters
    ----------
    params : SystemParams
    photon : InputPhoton or float
        Input photon, or directly its detuning ``delta_a``.

    Returns
    -------
    AmplitudePair
    """
    t1, t2 = closed_form(delta_a=_delta_a(photon), **_kernel_args(params))
    return AmplitudePair(complex(t1), complex(t2))


def amplitude_arrays(params: SystemParams, delta_a) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``amplitudes`` over an array of input detunings."""
    delta_a = np.asarray(delta_a, dtype=float)
    if not np.all(np.isfinite(delta_a)):
        raise ParameterError("delta_a must be finite")
    return closed_form(delta_a=delta_a, **_kernel_args(params))


def amplitudes_two_level_limit(gamma1: float, delta_a: float) -> complex:
    """Elastic amplitude with the first drive off: ``(x + i G1) / (x - i G1)``."""
    return (delta_a + 1j * gamma1) / (delta_a - 1j * gamma1)


def amplitudes_lambda_limit(gamma1: float, omega1: float, delta1: float,
                            delta_a: float) -> complex:
    """Elastic amplitude with the second drive off (three-level lambda system)."""
    y = delta_a - delta1
    real = delta_a * y - omega1 ** 2
    den = real - 1j * y * gamma1
    if abs(den) < POLE_THRESHOLD:
        raise PoleError("lambda-limit denominator vanishes")
    return (real + 1j * y * gamma1) / den


def symmetric_t1(gamma: float, omega: float, delta_a: float) -> complex:
    """Elastic amplitude for equal couplings, equal drives and resonant lasers."""
    x = delta_a
    num = x * (x * x - 2 * omega ** 2 + gamma ** 2)
    den = x ** 3 - 2 * omega ** 2 * x - gamma ** 2 * x - 2j * (gamma * x * x - gamma * omega ** 2)
    if abs(den) < POLE_THRESHOLD:
        raise PoleError("symmetric-case denominator vanishes")
    return num / den


def symmetric_unity_detunings(gamma: float, omega: float) -> tuple[float, ...]:
    """Input detunings where ``t1 = 0`` in the symmetric resonant-drive case.

    Only ``0`` when ``gamma**2 >= 2 omega**2``; otherwise also
    ``+-sqrt(2 omega**2 - gamma**2)``.
    """
    disc = 2 * omega ** 2 - gamma ** 2
    if disc <= 0:
        return (0.0,)
    root = math.sqrt(disc)
    return (-root, 0.0, root)


def metrics(pair: AmplitudePair) -> ConversionMetrics:
    """Elastic/inelastic probabilities, survival and conditional conversion."""
    p1 = probability(complex(pair.t1))
    p2 = probability(complex(pair.t2))
    survival = p1 + p2
    if survival < POLE_THRESHOLD:
        raise UndefinedFidelityError("no surviving amplitude; fidelity undefined")
    return ConversionMetrics(p1, p2, survival, p2 / survival)


def retrieval_map(params: SystemParams, photon: PhotonLike
                  ) -> tuple[SystemParams, InputPhoton]:
    """Map the forward problem onto the reverse (``|c>``-initial) problem.

    The involution swaps the roles of the two waveguide transitions and the two
    drives; the new input detuning is the forward ``delta_a - delta1 + delta2``
    so the total energy is unchanged.
    """
    delta_a = _delta_a(photon)
    swapped = SystemParams(
        gamma1=params.gamma2, gamma2=params.gamma1,
        omega1=params.omega2, omega2=params.omega1,
        delta1=params.delta2, delta2=params.delta1,
        gamma_a=params.gamma_d, gamma_f=params.gamma_f, gamma_d=params.gamma_a)
    return swapped, InputPhoton(delta_a - params.delta1 + params.delta2)
