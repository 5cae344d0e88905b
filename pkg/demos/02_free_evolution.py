"""
Free spreading of a wave packet in time
=======================================

A Gaussian test function in coordinate time spreads under clock time just
as a spatial packet spreads in space.  We compare the closed form with a
split-step propagation on a lattice and with a direct real-space kernel sum.
"""

import numpy as np

from tqm_disp.freeprop import evolve_gtf
from tqm_disp.numgrid import (GridSpec, convergence_study, grid_for, propagate,
                              real_space_step, sample_packet)
from tqm_disp.wavepacket import GaussianPacket

# Natural units: m = 1, one dispersion time is m sigma^2
m, sigma, E0 = 1.0, 1.0, 1.0
p = GaussianPacket(center=0.0, carrier=E0, sigma=sigma, domain="time")

for tau in (0.0, 0.5, 1.0, 2.0, 5.0):
    ev = evolve_gtf(p, m, tau)
    print(f"tau = {tau:3.1f}: centre {ev.center:5.2f}, width {np.sqrt(ev.spread()):6.3f}, "
          f"f = {ev.f_tau:.3f}")

# Split-step: every free slice is an exact phase in energy space
tau = m * sigma**2
g = grid_for(p, m, tau)
s, drifts = propagate(sample_packet(p, g), m, tau, 8)
err = np.max(np.abs(s.density - evolve_gtf(p, m, tau).density(g.times)))
print(f"lattice n = {g.n}, max density error {err:.2e}, max norm drift {max(drifts):.2e}")

# So the slice count does not matter, only the lattice does
print(convergence_study(p, m, tau, [1, 2, 4, 8, 16]).to_csv())
print(convergence_study(GaussianPacket(0.0, 3.0, 0.5), m, 0.5, [64, 128, 256, 512],
                        vary="grid").to_csv())

# Second oracle: the real-space kernel with its Fresnel normalisation
q = GaussianPacket(0.0, 0.0, 1.0)
lat = GridSpec.centered(0.0, 40.0, 2048)
s = sample_packet(q, lat)
for _ in range(4):
    s = real_space_step(s, m, 1.5)
print(f"real-space kernel, 4 slices: max error "
      f"{np.max(np.abs(s.samples - evolve_gtf(q, m, 6.0)(lat.times))):.2e}")
