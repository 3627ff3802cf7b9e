"""
Sagnac-loop composition of the emitter amplitudes.

The loop is described in the clockwise/counterclockwise basis of its two
coupler arms. A photon launched into arm ``j`` is even/odd decomposed at the
emitter; only the even half scatters (``t1``, ``t2``), the odd half passes.
Per frequency channel this gives a 2x2 arm-to-arm matrix:

    elastic   :  S_l @ [[tau, rho], [rho, tau]],  tau = (t1+1)/2, rho = (t1-1)/2
    inelastic :  (t2/2) [[1, 1], [1, 1]]

The interferometer output is ``S_c @ M @ P(theta) @ S_c @ e_1`` per channel,
with ``P(theta) = diag(1, exp(i theta))`` the relative phase of the
counterclockwise component. Propagation phases around the loop are zero.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

__all__ = [
    "OutputEntry",
    "OutputState",
    "LoopMatrices",
    "coupler_matrix",
    "exchange_matrix",
    "loop_matrices",
    "interferometer_output",
    "single_direction_output",
]

ELASTIC = "k"
INELASTIC = "k'"
_ATOM = {ELASTIC: "b", INELASTIC: "c"}
_TINY = 1e-300


class OutputEntry(NamedTuple):
    atom: str
    channel: str
    port: int
    amplitude: complex


@dataclass(frozen=True)
class OutputState:
    """Labeled output amplitudes over (atom, photon channel, port).

    ``phase`` is the relative phase of the converted component against the
    elastic reference amplitude, or ``None`` when either vanishes.
    """

    entries: tuple
    phase: Optional[float] = None

    def amplitude(self, atom: str, channel: str, port: int) -> complex:
        for e in self.entries:
            if (e.atom, e.channel, e.port) == (atom, channel, port):
                return e.amplitude
        return 0j

    def probability(self, *, atom: Optional[str] = None,
                    channel: Optional[str] = None,
                    port: Optional[int] = None) -> float:
        total = 0.0
        for e in self.entries:
            if atom is not None and e.atom != atom:
                continue
            if channel is not None and e.channel != channel:
                continue
            if port is not None and e.port != port:
                continue
            total += abs(e.amplitude) ** 2
        return total

    @property
    def norm(self) -> float:
        return self.probability()

    @property
    def conversion_probability(self) -> float:
        return self.probability(channel=INELASTIC)

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"atom": e.atom, "channel": e.channel, "port": e.port,
                 "re": e.amplitude.real, "im": e.amplitude.imag}
                for e in self.entries],
            "conversion_probability": self.conversion_probability,
            "norm": self.norm,
            "phase": self.phase,
        }


@dataclass(frozen=True)
class LoopMatrices:
    elastic: np.ndarray
    inelastic: np.ndarray

    def block(self) -> np.ndarray:
        """Stack both channels into a 4x2 map from input arms to outputs."""
        return np.vstack([self.elastic, self.inelastic])


def coupler_matrix() -> np.ndarray:
    """50:50 coupler ``(1/sqrt 2) [[1, 1], [1, -1]]``."""
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def exchange_matrix() -> np.ndarray:
    """Loop traversal: a photon leaves by the other arm."""
    return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def loop_matrices(pair) -> LoopMatrices:
    """Arm-to-arm loop matrices for the elastic and converted channels."""
    t1 = complex(pair.t1)
    t2 = complex(pair.t2)
    tau = (t1 + 1) / 2
    rho = (t1 - 1) / 2
    elastic = exchange_matrix() @ np.array([[tau, rho], [rho, tau]])
    inelastic = (t2 / 2) * np.ones((2, 2), dtype=complex)
    return LoopMatrices(elastic, inelastic)


def _relative_phase(converted: complex, reference: complex) -> Optional[float]:
    if abs(converted) < _TINY or abs(reference) < _TINY:
        return None
    return cmath.phase(converted) - cmath.phase(reference)


def _entries(outputs: dict) -> tuple:
    entries = []
    for channel, vec in outputs.items():
        for port, amp in enumerate(vec, start=1):
            entries.append(OutputEntry(_ATOM[channel], channel, port, complex(amp)))
    return tuple(entries)


def interferometer_output(pair, theta: float = 0.0) -> OutputState:
    """Full-interferometer output for a photon entering coupler port 1.

    With ``theta = 0`` every amplitude returns to port 1 and the state is
    ``t1 |b, k> + t2 |c, k'>``; ``theta = pi`` prepares the odd mode and
    suppresses conversion.
    """
    sc = coupler_matrix()
    loop = loop_matrices(pair)
    inject = np.diag([1.0, cmath.exp(1j * theta)]) @ sc @ np.array([1.0, 0.0])
    outputs = {ELASTIC: sc @ loop.elastic @ inject,
               INELASTIC: sc @ loop.inelastic @ inject}
    phase = _relative_phase(complex(pair.t2), complex(pair.t1))
    return OutputState(_entries(outputs), phase)


def single_direction_output(pair) -> OutputState:
    """Output for a photon launched clockwise straight into the loop.

    Ports are loop arms: 1 is back toward the launch side (reflected), 2 is
    onward (transmitted). At most half of the photon is converted.
    """
    loop = loop_matrices(pair)
    launch = np.array([1.0, 0.0])
    outputs = {ELASTIC: loop.elastic @ launch, INELASTIC: loop.inelastic @ launch}
    phase = _relative_phase(complex(pair.t2), (complex(pair.t1) + 1) / 2)
    return OutputState(_entries(outputs), phase)
