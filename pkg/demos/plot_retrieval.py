"""
Retrieval and the oracle
========================

Running the process backwards with the atom starting in the other ground
state converts the photon back. The linear-system solver gives an
independent answer to compare against.
"""

from spfc import SystemParams, amplitudes, oracle
from spfc.scattering import retrieval_map
from spfc.verify import differential_check

p = SystemParams(gamma1=2.0, omega1=(91 / 9) ** 0.5, omega2=(140 / 9) ** 0.5,
                 delta1=-4.0, delta2=-4.0)
q, photon = retrieval_map(p, 3.0)
print("forward  |t2| =", abs(amplitudes(p, 3.0).t2))
print("backward |t2| =", abs(amplitudes(q, photon).t2))
print("oracle   |t2| =", abs(oracle.solve_retrieval(p, 3.0).t2))

###############################################################################
# The same comparison over many random parameter sets.
print(differential_check(1000).summary())
