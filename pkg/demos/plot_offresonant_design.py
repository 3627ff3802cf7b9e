"""
Designing drives for an off-resonant photon
===========================================

Pick the detunings, then solve for the Rabi frequencies that cancel the
elastic amplitude.
"""

import numpy as np

from spfc import SystemParams, amplitudes
from spfc.design import feasibility_map, rabi_for_unity

###############################################################################
# A photon at delta_a = 3 with gamma1 = 2 and both drives detuned by -4.
sol = rabi_for_unity(3.0, -4.0, -4.0, gamma1=2.0)
print(sol)
print("omega1^2 * 9 =", sol.omega1_sq * 9, " omega2^2 * 9 =", sol.omega2_sq * 9)

p = SystemParams(gamma1=2.0, omega1=sol.omega1, omega2=sol.omega2, delta1=-4.0, delta2=-4.0)
pair = amplitudes(p, 3.0)
print("|t1| =", abs(pair.t1), " |t2| =", abs(pair.t2))

###############################################################################
# Not every choice of detunings works. Map where both squared frequencies
# come out positive.
fmap = feasibility_map(np.linspace(-10, 10, 41), np.linspace(-10, 10, 41), gamma1=2.0)
print(f"feasible fraction: {fmap.feasible_fraction:.3f}")
rows = np.where(fmap.feasible, "#", ".")
print("\n".join("".join(r) for r in rows[::4]))
