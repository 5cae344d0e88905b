"""
Photon propagators with a time coordinate
=========================================

The retarded frequency integral, the Bessel form of the propagator in
relative time, and the quadratic-time form whose width is fixed by the
average photon momentum mu / r.
"""

import numpy as np

from tqm_disp.constants import CONSTANTS
from tqm_disp.photon import (ProtonSource, bessel_greens, evaluate_greens, expansion_bound,
                             photon_dispersion, pseudo_euclidean_potential,
                             pseudo_euclidean_quadratic, residue_check)

# Contour integral against the residue result -(2 pi / kappa) sin(kappa tau)
for kappa, tau in [(1.0, 1.0), (2.0, 0.25), (5.0, 3.0)]:
    num, ana = residue_check(kappa, tau)
    print(f"kappa={kappa}, tau={tau}: numeric {num.real:+.12f}, analytic {ana.real:+.12f}")

# Bessel form: at zero relative time it oscillates like J0(kappa tau);
# before t_tau = -tau/2 it vanishes
tau, kappa = 1.0, 3.0
for t_tau in (-0.6, -0.5, 0.0, 0.5, 2.0):
    print(f"t_tau = {t_tau:+.1f}: G = {complex(bessel_greens(tau + t_tau, kappa, tau)):.5f}")

# With relative time as a fourth axis the Coulomb potential becomes
# 1/sqrt(t^2 + r^2); the quadratic expansion is good to 3 t^4 / 8 r^5
r = 1.0
t = np.linspace(0, r / 2, 6)
err = np.abs(pseudo_euclidean_potential(t, r) - pseudo_euclidean_quadratic(t, r))
for ti, e, b in zip(t, err, expansion_bound(t, r)):
    print(f"t = {ti:.1f} r: error {e:.3e} <= bound {b:.3e}")

# Quadratic-time form at the Bohr radius: its width is a0^2, the GHO value
a0 = CONSTANTS.a0_as
print(f"photon dispersion at a0: {photon_dispersion(a0):.6f} as^2 (a0^2 = {a0**2:.6f})")
g = evaluate_greens("quadratic", a0, None, np.linspace(-0.3, 0.3, 7))
print("constant modulus:", np.round(np.abs(g.value), 6))

# The proton as source: radius 0.841 fm
src = ProtonSource()
print(f"proton: sigma_q = {src.sigma_q_MeV:.2f} MeV, delta_q = {src.delta_q_MeV:.2f} MeV, "
      f"r/c = {src.sigma_t_ys:.3f} ys")
