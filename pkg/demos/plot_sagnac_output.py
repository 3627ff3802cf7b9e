"""
Output ports of the Sagnac loop
===============================

The loop splits the photon into two counter-propagating halves. Their
recombination decides where the converted photon exits.
"""

import numpy as np

from spfc import SystemParams, amplitudes
from spfc.sagnac import interferometer_output, single_direction_output

p = SystemParams(gamma1=1.0, omega1=1.0, omega2=1.0)
pair = amplitudes(p, 0.5)

###############################################################################
# With the loop closed, all conversion leaves one port.
state = interferometer_output(pair)
for e in state.entries:
    print(e.atom, e.channel, e.port, f"{abs(e.amplitude) ** 2:.6f}")
print("conversion:", state.conversion_probability, " |t2|^2:", abs(pair.t2) ** 2)

###############################################################################
# A phase between the two arms steers it away. At theta = pi it vanishes.
for theta in np.linspace(0, np.pi, 5):
    print(f"theta {theta:.3f}  conversion {interferometer_output(pair, theta).conversion_probability:.6f}")

###############################################################################
# Without the loop a single pass converts at most half the photon.
print("single direction:", single_direction_output(amplitudes(p, 0.0)).conversion_probability)
