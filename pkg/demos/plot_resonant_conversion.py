"""
Resonant frequency conversion
=============================

A photon on resonance with the emitter leaves in the other frequency channel
with unit probability when the drives are balanced.
"""

import numpy as np

from spfc import SystemParams, amplitudes
from spfc.scattering import amplitude_arrays

###############################################################################
# Equal couplings, equal drives, every detuning zero.
p = SystemParams(gamma1=1.0, gamma2=1.0, omega1=1.0, omega2=1.0)
pair = amplitudes(p, 0.0)
print("t1 =", pair.t1, " t2 =", pair.t2)
print("|t2|^2 =", abs(pair.t2) ** 2)

###############################################################################
# Away from resonance the elastic channel takes over. A coarse spectrum:
delta_a = np.linspace(-6, 6, 13)
t1, t2 = amplitude_arrays(p, delta_a)
for x, a, b in zip(delta_a, np.abs(t1) ** 2, np.abs(t2) ** 2):
    print(f"{x:+5.1f}  elastic {a:.4f}  converted {b:.4f}")

###############################################################################
# Unequal couplings need drives in the same ratio, gamma1/gamma2 = omega1^2/omega2^2.
from spfc.design import resonant_rabi_ratio

q = SystemParams(gamma1=2.0, omega2=1.0, omega1=resonant_rabi_ratio(2.0, 1.0, 1.0))
print("gamma1 = 2:  |t2|^2 =", abs(amplitudes(q, 0.0).t2) ** 2)
