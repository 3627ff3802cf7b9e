"""
Conversion with lossy levels
============================

Intrinsic loss on the excited levels lets some of the photon escape, and the
fidelity measures what fraction of the survivors got converted.
"""

import numpy as np

from spfc.sweep import figure_preset, run_sweep

for name in ("fig4a", "fig4b", "fig4c"):
    res = run_sweep(figure_preset(name))
    f = res.column("fidelity_f")
    i = int(np.nanargmax(f))
    print(f"{name}: best F = {f[i]:.5f} at delta_a = {res.column('delta_a')[i]:+.2f}, "
          f"survival there {res.column('survival')[i]:.4f}")
