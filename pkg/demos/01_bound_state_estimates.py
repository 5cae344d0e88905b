"""
How wide is a hydrogen atom in time?
====================================

Four estimates of the time dispersion of a bound electron, from the crude
light-travel time across the atom to the local harmonic oscillator, and
how they scale up to Rydberg states.
"""

import math

from tqm_disp.bound import (CESIUM, HYDROGEN, cesium_report, entropic_estimate, gho_estimate,
                            lho_estimate, lho_sigma, naive_estimate, rydberg_scaling)
from tqm_disp.constants import CONSTANTS

# The Bohr radius as a light-travel time sets the natural scale
print(f"a0 = {CONSTANTS.a0_pm:.4f} pm  ->  {CONSTANTS.a0_as:.5f} as")

# Each estimate carries both sigma_t^2 and delta_t = sqrt(sigma_t^2 / 2)
for est in (naive_estimate(HYDROGEN), entropic_estimate(HYDROGEN),
            gho_estimate(HYDROGEN), lho_estimate(HYDROGEN)):
    print(f"{est.method:>9}: sigma_t^2 = {est.sigma_t2:.5g} as^2, delta_t = {est.delta_t:.4f} as")

# The entropic estimate is an order of magnitude larger: its energy spread
# is the full ground-state spread alpha^2 m
ent = entropic_estimate(HYDROGEN)
print(f"entropic energy spread: {ent.extras['delta_E_eV']:.3f} eV")

# The local oscillator gives sigma^2 = sqrt(a0 r^3 / mu); at r = a0 it
# coincides with the global oscillator, which is how mu = 1 is fixed
print(f"lho(a0) / gho = {lho_sigma(CONSTANTS.a0_pm) / gho_estimate(HYDROGEN).sigma_t2:.15f}")

# Rydberg states: r = n^2 a0, so sigma grows like n^(3/2)
for n in (1, 10, 30, 100):
    s = math.sqrt(lho_sigma(n * n * CONSTANTS.a0_pm))
    print(f"n = {n:3d}: lho sigma_t = {s:9.3f} as, "
          f"naive delta_t x n^1.5 = {rydberg_scaling(n, naive_estimate(HYDROGEN)).delta_t:9.3f} as")

# Cesium: three ways of scaling the Bohr time, none of which gives the
# quoted 3 as on its own
rep = cesium_report()
print(f"cesium r = {CESIUM.radius_pm} pm, claimed {rep['claimed_as']} as")
print(f"  r/c          {rep['symmetric_as']:.3f} as")
print(f"  (r/a0)^3/4   {rep['r34_as']:.3f} as")
print(f"  n^3/2, n = 6 {rep['n32_as']:.3f} as")
