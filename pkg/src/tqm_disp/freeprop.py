"""Free FS/T propagation with clock time tau.

Natural units throughout: pass energies and masses in the reciprocal of
whatever time unit ``tau`` and ``t`` use.

The time part of the free kernel is the complex conjugate of the familiar
Schroedinger space kernel,

    K_tau(t2; t1) = sqrt(i m / (2 pi tau)) exp(-i m (t2 - t1)^2 / (2 tau)),

so a time-domain GTF with carrier E0 evolves with the complex dilation
``f = 1 - i tau/(m sigma^2)`` and drifts forward by ``E0 tau / m``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .wavepacket import GaussianPacket

__all__ = [
    "FourMomentum",
    "FstKernel",
    "EvolvedPacket",
    "SingularityError",
    "clock_frequency",
    "kernel_momentum",
    "kernel_time",
    "kernel_space",
    "kernel_4d",
    "evolve_gtf",
    "density_spread",
    "CollimatedKernel",
    "collimated_kernel",
    "COLLIMATION_BOUND",
]

COLLIMATION_BOUND = 0.3


class SingularityError(ZeroDivisionError):
    """Formula evaluated at a singular point (E = 0, tau = 0, ...)."""


@dataclass(frozen=True)
class FourMomentum:
    E: float
    p: tuple = (0.0, 0.0, 0.0)

    @property
    def p2(self):
        return float(np.dot(self.p, self.p))

    @classmethod
    def on_shell(cls, m, p=(0.0, 0.0, 0.0)):
        return cls(float(np.sqrt(m**2 + np.dot(p, p))), tuple(p))


@dataclass(frozen=True)
class FstKernel:
    """Free kernel for inertia ``mass_or_energy`` over clock time ``tau``."""

    mass_or_energy: float
    tau: float

    def __post_init__(self):
        if not self.mass_or_energy > 0:
            raise ValueError("mass_or_energy must be positive")
        if self.tau < 0:
            raise ValueError("tau must be >= 0")

    def momentum(self, k):
        return kernel_momentum(k, self.mass_or_energy, self.tau)

    def time(self, t2, t1):
        return kernel_time(t2, t1, self.mass_or_energy, self.tau)


def clock_frequency(k, m):
    """``-(E^2 - p^2 - m^2) / 2E``; zero on-shell."""
    if k.E == 0:
        raise SingularityError("clock frequency is singular at E = 0")
    return -(k.E**2 - k.p2 - m**2) / (2.0 * k.E)


def kernel_momentum(k, m, tau):
    """Diagonal momentum-space kernel ``exp(-i w_p tau) theta(tau)``.

    ``tau == 0`` is the identity, negative tau gives 0 (retarded).
    """
    if tau < 0:
        return 0j
    if tau == 0:
        return 1 + 0j
    return np.exp(-1j * clock_frequency(k, m) * tau)


def kernel_time(t2, t1, m, tau):
    """Time-only non-relativistic kernel ``K_tau(t2; t1)``.

    Raises
    ------
    SingularityError
        At ``tau == 0`` where the kernel degenerates to a delta function;
        callers should use the identity there.
    """
    if tau == 0:
        raise SingularityError("kernel_time at tau = 0 is a delta function")
    if tau < 0:
        return np.zeros_like(np.asarray(t2 - t1, dtype=complex))
    d = np.asarray(t2, dtype=float) - np.asarray(t1, dtype=float)
    pref = np.sqrt(1j * m / (2 * np.pi * tau))
    return pref * np.exp(-1j * m * d**2 / (2 * tau))


def kernel_space(x2, x1, m, tau):
    """Ordinary one-dimensional Schroedinger kernel, one factor per space axis."""
    if tau == 0:
        raise SingularityError("kernel_space at tau = 0 is a delta function")
    d = np.asarray(x2, dtype=float) - np.asarray(x1, dtype=float)
    return np.sqrt(m / (2j * np.pi * tau)) * np.exp(1j * m * d**2 / (2 * tau))


def kernel_4d(x2, x1, m, tau):
    """Coordinate-space kernel for 4-vectors ``(t, x, y, z)``.

    Separable product of the time kernel, three space kernels and the rest
    mass phase ``exp(-i m tau / 2)``.
    """
    if tau < 0:
        return 0j
    x2 = np.asarray(x2, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    out = kernel_time(x2[0], x1[0], m, tau)
    for i in range(1, 4):
        out = out * kernel_space(x2[i], x1[i], m, tau)
    return out * np.exp(-0.5j * m * tau)


@dataclass(frozen=True)
class EvolvedPacket:
    """Time-domain GTF after free evolution for clock time ``tau``.

    The carrier of ``base`` is E0.  Evolving again simply adds clock time.
    """

    base: GaussianPacket
    m: float
    tau: float = 0.0

    def __post_init__(self):
        if self.base.domain != "time":
            raise ValueError("evolution is defined for time-domain packets")
        if not self.m > 0:
            raise ValueError("m must be positive")

    @property
    def E0(self):
        return self.base.carrier

    @property
    def f_tau(self):
        return 1.0 - 1j * self.tau / (self.m * self.base.sigma**2)

    @property
    def drift(self):
        return self.E0 * self.tau / self.m

    @property
    def center(self):
        return self.base.center + self.drift

    @property
    def phase(self):
        return np.exp(0.5j * self.E0**2 * self.tau / self.m)

    def spread(self, inertia=None):
        """Dispersion^2 of ``|psi|^2``; see :func:`density_spread`."""
        return density_spread(self.base.sigma, self.tau, self.m if inertia is None else inertia)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        s2, f = self.base.sigma**2, self.f_tau
        return (self.base.norm_factor / np.sqrt(f) * self.phase
                * np.exp(-1j * self.E0 * t - (t - self.center) ** 2 / (2 * s2 * f)))

    def density(self, t):
        t = np.asarray(t, dtype=float)
        w2 = self.spread()
        return np.exp(-((t - self.center) ** 2) / w2) / np.sqrt(np.pi * w2)


def density_spread(sigma, tau, inertia):
    """``sigma^2 (1 + tau^2 / (inertia^2 sigma^4))``.

    With ``inertia = m`` this is ``sigma^2 |f_tau|^2`` exactly; with
    ``inertia = E0`` it is the form quoted for the non-relativistic regime
    where E0 ~ m.
    """
    return sigma**2 * (1.0 + tau**2 / (inertia**2 * sigma**4))


def evolve_gtf(p, m, tau, E0=None):
    """Evolve a time-domain GTF (or an already evolved one) by ``tau``.

    ``E0`` defaults to the packet carrier; passing a different value is an
    error because the carrier *is* E0 for a GTF in time.
    """
    if isinstance(p, EvolvedPacket):
        if p.m != m:
            raise ValueError("cannot continue evolution with a different mass")
        base, tau0 = p.base, p.tau
    else:
        base, tau0 = p, 0.0
    if E0 is not None and E0 != base.carrier:
        raise ValueError(f"E0={E0} differs from packet carrier {base.carrier}")
    return EvolvedPacket(base=base, m=m, tau=tau0 + tau)


class CollimatedKernel(NamedTuple):
    value: complex
    collimated: bool


def collimated_kernel(k, m, mean_E, tau):
    """Well-collimated relativistic kernel, kept to second order in dE = E - mean_E.

    Only ``k.E`` enters.  ``collimated`` is False when ``|dE| >= 0.3 mean_E``,
    outside the range where the truncated expansion is meaningful.
    """
    if tau < 0:
        return CollimatedKernel(0j, True)
    Eb = float(mean_E)
    dE = k.E - Eb
    rate = ((Eb**2 - m**2) / (2 * Eb)
            + dE * (Eb**2 + m**2) / (2 * Eb**2)
            - dE**2 * m**2 / (2 * Eb**3))
    return CollimatedKernel(np.exp(1j * rate * tau), abs(dE) < COLLIMATION_BOUND * Eb)
