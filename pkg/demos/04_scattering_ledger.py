"""
Following the dispersion through a scattering chain
===================================================

Absorbing a photon convolves two Gaussians, so dispersions add; emitting
one subtracts.  What happens in between depends on how fast the atom relaxes,
which is modelled here by an exponential with a free rate.
"""

from tqm_disp.bound import lho_sigma
from tqm_disp.constants import CONSTANTS
from tqm_disp.scatter import (DispersionLedger, NegativeVarianceError, RelaxationPolicy,
                              parse_chain, run_chain)

# Start from the ground-state dispersion of hydrogen
s1 = lho_sigma(CONSTANTS.a0_pm)
led = DispersionLedger(s1).absorb(0.02).emit(0.01)
print(led.to_csv("absorb then emit, as^2"))

# Resonant scattering: no time to relax, so the two steps just compose
same = DispersionLedger(s1).resonant(0.02, 0.02)
print(f"same photon in and out: {same.current:.6f} (start {s1:.6f})")

# With a long dwell the atom relaxes in between and the event becomes
# ordinary absorption followed by emission
pol = RelaxationPolicy(s1, "exponential", rate=10.0)
for dwell in (0.0, 0.05, 0.2, 1.0, 10.0):
    out = DispersionLedger(s1).resonant(0.02, 0.01, dwell, pol)
    print(f"dwell {dwell:5.2f} as -> final sigma^2 {out.current:.6f}")

# Emitting more dispersion than the atom carries is flagged, not clamped
try:
    DispersionLedger(0.01).emit(0.02)
except NegativeVarianceError as exc:
    print("rejected:", exc)

# The same chain as the command line takes it, replayed from the start
chain = run_chain(1.0, parse_chain("absorb:0.5,relax:exp:2:0.3,emit:0.3,resonant:0.2:0.1:1", 1.0))
print(chain.to_csv())
print("replay identical:", chain.replay().current == chain.current)
