"""
Differential check of the closed forms against the linear-system oracle.

Draws (seeded, numpy ``default_rng``):

    gamma1 ~ log-uniform [0.1, 10]     gamma2 = 1
    omega1, omega2 ~ U[0, 10]          delta1, delta2 ~ U[-10, 10]
    gamma_a, gamma_f, gamma_d ~ U[0, 1]  delta_a ~ U[-20, 20]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .params import SystemParams
from .scattering import amplitudes

__all__ = ["DEFAULT_SEED", "DEFAULT_DRAWS", "DEFAULT_TOLERANCE",
           "Draw", "random_draws", "VerifyReport", "differential_check"]

DEFAULT_SEED = 20140915
DEFAULT_DRAWS = 10_000
DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Draw:
    params: SystemParams
    delta_a: float


def random_draws(n: int, seed: int = DEFAULT_SEED, lossless: bool = False) -> list:
    """``n`` reproducible parameter draws; ``lossless`` zeroes the loss rates."""
    rng = np.random.default_rng(seed)
    gamma1 = 10.0 ** rng.uniform(-1.0, 1.0, n)
    omega = rng.uniform(0.0, 10.0, (n, 2))
    delta = rng.uniform(-10.0, 10.0, (n, 2))
    loss = rng.uniform(0.0, 1.0, (n, 3))
    delta_a = rng.uniform(-20.0, 20.0, n)
    if lossless:
        loss = np.zeros_like(loss)
    draws = []
    for i in range(n):
        p = SystemParams(
            gamma1=float(gamma1[i]), gamma2=1.0,
            omega1=float(omega[i, 0]), omega2=float(omega[i, 1]),
            delta1=float(delta[i, 0]), delta2=float(delta[i, 1]),
            gamma_a=float(loss[i, 0]), gamma_f=float(loss[i, 1]),
            gamma_d=float(loss[i, 2]))
        draws.append(Draw(p, float(delta_a[i])))
    return draws


@dataclass(frozen=True)
class VerifyReport:
    draws: int
    seed: int
    tolerance: float
    max_dev_t1: float
    max_dev_t2: float
    max_unitarity_dev: float
    max_residual: float
    violations: int

    @property
    def max_deviation(self) -> float:
        return max(self.max_dev_t1, self.max_dev_t2)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        cmp = "<" if self.max_deviation < self.tolerance else ">="
        return "\n".join([
            f"draws: {self.draws}",
            f"seed: {self.seed}",
            f"max |t1 closed - t1 oracle|: {self.max_dev_t1:.3e}",
            f"max |t2 closed - t2 oracle|: {self.max_dev_t2:.3e}",
            f"max lossless unitarity deviation (oracle): {self.max_unitarity_dev:.3e}",
            f"max relative residual: {self.max_residual:.3e}",
            f"violations: {self.violations}",
            f"{verdict}: max deviation {self.max_deviation:.3e} {cmp} {self.tolerance:g}",
        ])


def differential_check(n: int = DEFAULT_DRAWS, seed: int = DEFAULT_SEED,
                       tolerance: float = DEFAULT_TOLERANCE) -> VerifyReport:
    """Compare closed form and oracle on ``n`` lossy and ``n`` lossless draws."""
    dev1 = dev2 = unit = resid = 0.0
    violations = 0
    for lossless in (False, True):
        for d in random_draws(n, seed, lossless=lossless):
            system = oracle.assemble(d.params, d.delta_a)
            sol = oracle.solve(system)
            closed = amplitudes(d.params, d.delta_a)
            e1 = abs(closed.t1 - sol.t1)
            e2 = abs(closed.t2 - sol.t2)
            dev1, dev2 = max(dev1, e1), max(dev2, e2)
            r = oracle.residual(system, sol) / np.linalg.norm(system.matrix, 2)
            resid = max(resid, r)
            if lossless:
                unit = max(unit, abs(abs(sol.t1) ** 2 + abs(sol.t2) ** 2 - 1.0))
            if e1 >= tolerance or e2 >= tolerance:
                violations += 1
    return VerifyReport(n, seed, tolerance, dev1, dev2, unit, resid, violations)
