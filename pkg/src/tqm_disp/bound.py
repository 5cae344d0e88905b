"""Time dispersion of bound atomic states.

Four estimates are provided, all reported as both the dispersion
``sigma_t2`` (as^2) and the uncertainty ``delta_t = sqrt(sigma_t2 / 2)`` (as):

naive     light-travel time across the atomic radius
entropic  maximum-entropy packet from the ground-state energy spread alpha^2 m
gho       global harmonic oscillator in time, Omega = alpha^2 m
lho       local harmonic oscillator, sigma_r^2 = sqrt(a0 r^3 / mu)
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .constants import CONSTANTS, C_PM_PER_AS
from .photon import photon_dispersion

__all__ = [
    "AtomSpec",
    "DispersionEstimate",
    "MomentumMoments",
    "QuadratureError",
    "HYDROGEN",
    "CESIUM",
    "atom",
    "naive_estimate",
    "hydrogen_momentum_wavefunction",
    "hydrogen_momentum_moments",
    "entropic_estimate",
    "gho_estimate",
    "lho_sigma",
    "lho_estimate",
    "rydberg_scaling",
    "lho_wavefunction",
    "estimate",
    "cesium_report",
    "reduced_mass",
    "PROTON_MASS_EV",
]

PROTON_MASS_EV = 938_272_088.16


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class AtomSpec:
    label: str
    radius_pm: float
    n: int = 1
    mass: float = CONSTANTS.m_e
    hydrogenic: bool = False
    Z: int = 1  # carried for reporting only; a0 -> a0/Z is not modelled

    def __post_init__(self):
        if not self.radius_pm > 0:
            raise ValueError("radius must be positive")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def radius_as(self):
        return self.radius_pm / C_PM_PER_AS

    @classmethod
    def hydrogen(cls, n=1, use_reduced_mass=False, constants=CONSTANTS):
        m = reduced_mass(constants.m_e, PROTON_MASS_EV) if use_reduced_mass else constants.m_e
        a0_pm = constants.hbar_c_eV_pm / (constants.alpha * m)
        return cls("hydrogen", n * n * a0_pm, n=n, mass=m, hydrogenic=True)


def reduced_mass(m1, m2):
    return m1 * m2 / (m1 + m2)


HYDROGEN = AtomSpec.hydrogen()
CESIUM = AtomSpec("cesium", 265.0, n=6, Z=55)

_ATOMS = {"hydrogen": HYDROGEN, "cesium": CESIUM}


def atom(name):
    try:
        return _ATOMS[name]
    except KeyError:
        raise ValueError(f"unknown atom {name!r}; choose from {sorted(_ATOMS)}") from None


@dataclass(frozen=True)
class DispersionEstimate:
    method: str
    sigma_t2: float
    delta_t: float
    approximate: bool = False
    extras: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_sigma2(cls, method, sigma_t2, **kw):
        return cls(method, float(sigma_t2), float(np.sqrt(sigma_t2 / 2.0)), **kw)

    @classmethod
    def from_delta_t(cls, method, delta_t, **kw):
        return cls(method, float(2.0 * delta_t**2), float(delta_t), **kw)

    @property
    def sigma_t(self):
        return float(np.sqrt(self.sigma_t2))

    def to_dict(self):
        d = {"method": self.method, "sigma_t2_as2": self.sigma_t2,
             "sigma_t_as": self.sigma_t, "delta_t_as": self.delta_t,
             "approximate": self.approximate}
        d.update(self.extras)
        return d


def naive_estimate(a, constants=CONSTANTS):
    """Time equivalent of the atomic radius, ``delta_t = r / c``."""
    return DispersionEstimate.from_delta_t("naive", a.radius_as,
                                           extras={"radius_pm": a.radius_pm})


def hydrogen_momentum_wavefunction(p, a0=1.0):
    """Ground-state radial momentum amplitude, normalised with measure ``p^2 dp``."""
    p = np.asarray(p, dtype=float)
    return np.sqrt(32.0 / np.pi) * a0**1.5 / (p * p * a0 * a0 + 1.0) ** 2


class MomentumMoments(NamedTuple):
    norm: float
    p2: float
    p4: float


def hydrogen_momentum_moments(tol=1e-10):
    """``<1>``, ``<p^2>`` and ``<p^4>`` of the ground state, in units of 1/a0.

    Raises
    ------
    QuadratureError
        If an error estimate exceeds ``tol``.
    """
    out = []
    for k in (0, 2, 4):
        val, err = integrate.quad(
            lambda p: hydrogen_momentum_wavefunction(p) ** 2 * p ** (2 + k),
            0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=500)
        if err > tol:
            raise QuadratureError(f"<p^{k}> quadrature error {err:.2e} > {tol:.1e}")
        out.append(val)
    return MomentumMoments(*out)


def entropic_estimate(a, constants=CONSTANTS, moments=None):
    """Energy spread ``(1/2m) sqrt(<p^4> - <p^2>^2)`` turned into a time spread.

    Exact only for the hydrogen ground state (moments from quadrature); other
    atoms fall back to ``alpha^2 m`` and are flagged approximate.
    """
    m = a.mass
    exact = a.hydrogenic and a.n == 1
    if exact:
        mom = moments or hydrogen_momentum_moments()
        p_unit = constants.alpha * m  # 1/a0 in eV
        dE = p_unit**2 / (2 * m) * np.sqrt(mom.p4 - mom.p2**2)
    else:
        dE = constants.alpha**2 * m
    dt = constants.hbar_eV_as / (2 * dE)
    return DispersionEstimate.from_delta_t(
        "entropic", dt, approximate=not exact,
        extras={"delta_E_eV": float(dE), "sigma_E_eV": float(np.sqrt(2) * dE)})


def gho_estimate(a, constants=CONSTANTS):
    """Global oscillator: ``Omega = alpha^2 m``, ``sigma_t^2 = 1/(m Omega)``."""
    m = a.mass
    omega = constants.alpha**2 * m  # eV
    sigma2 = constants.hbar_eV_as**2 / (m * omega)
    return DispersionEstimate.from_sigma2("gho", sigma2, extras={"Omega_eV": float(omega)})


def lho_sigma(r_pm, mu=1.0, a=HYDROGEN, constants=CONSTANTS):
    """Local oscillator dispersion at radius ``r_pm``, in as^2.

    Matches ``m Omega^2 / 2`` against ``alpha / (2 r sbar^2)`` with the
    photon dispersion ``sbar^2 = r^2/mu``, then ``sigma^2 = 1/(m Omega)``.
    Equivalent to ``sqrt(a0 r^3 / mu)``.
    """
    if not (r_pm > 0 and mu > 0):
        raise ValueError("r and mu must be positive")
    r = r_pm / C_PM_PER_AS
    m = a.mass / constants.hbar_eV_as  # 1/as
    sbar2 = photon_dispersion(r, mu)
    omega = np.sqrt(constants.alpha / (m * r * sbar2))
    return float(1.0 / (m * omega))


def lho_estimate(a, mu=1.0, constants=CONSTANTS):
    return DispersionEstimate.from_sigma2(
        "lho", lho_sigma(a.radius_pm, mu, a, constants), extras={"mu": mu})


def rydberg_scaling(n, base):
    """Scale an n = 1 estimate to principal number ``n``: sigma grows as n^(3/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return base
    return DispersionEstimate(
        method=base.method, sigma_t2=base.sigma_t2 * n**3,
        delta_t=base.delta_t * n**1.5, approximate=base.approximate,
        extras={**base.extras, "n": n})


def lho_wavefunction(t, r_pm, mu=1.0, a=HYDROGEN, constants=CONSTANTS):
    """Ground state in relative time at fixed radius, normalised in ``t`` (as)."""
    s2 = lho_sigma(r_pm, mu, a, constants)
    t = np.asarray(t, dtype=float)
    return (np.pi * s2) ** -0.25 * np.exp(-(t**2) / (2 * s2))


_METHODS = {
    "naive": lambda a, mu, c: naive_estimate(a, c),
    "entropic": lambda a, mu, c: entropic_estimate(a, c),
    "gho": lambda a, mu, c: gho_estimate(a, c),
    "lho": lambda a, mu, c: lho_estimate(a, mu, c),
}


def estimate(atom_name, method, n=None, mu=1.0, constants=CONSTANTS):
    """Dispatch used by the command line; ``n`` applies Rydberg scaling."""
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_METHODS)}")
    a = atom(atom_name)
    est = _METHODS[method](a, mu, constants)
    if n is not None and n != 1:
        est = rydberg_scaling(n, est)
        if not a.hydrogenic:
            est = DispersionEstimate(est.method, est.sigma_t2, est.delta_t, True, est.extras)
    return est


def cesium_report(constants=CONSTANTS):
    """Candidate cesium time scales next to the quoted 3 as.

    All candidates scale the Bohr time: by the radius ratio (symmetric),
    by the ratio to the 3/4 power, and by n^(3/2) for the valence n = 6.
    """
    bt = constants.a0_as
    ratio = CESIUM.radius_pm / constants.a0_pm
    return {
        "claimed_as": 3.0,
        "symmetric_as": float(CESIUM.radius_as),
        "r34_as": float(bt * ratio**0.75),
        "n32_as": float(bt * CESIUM.n**1.5),
        "radius_pm": CESIUM.radius_pm,
        "valence_n": CESIUM.n,
    }
