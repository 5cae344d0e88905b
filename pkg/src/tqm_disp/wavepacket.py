"""Gaussian test functions (GTFs) in one dimension.

A packet is stored by its parameters, never by samples:

    time:      (pi s^2)^(-1/4) exp(-i E0 t - (t - t0)^2 / 2 s^2)
    energy:    (pi s^2)^(-1/4) exp(+i (E - E0) t0 - (E - E0)^2 / 2 s^2)
    space:     (pi s^2)^(-1/4) exp(+i p0 x - (x - x0)^2 / 2 s^2)
    momentum:  (pi s^2)^(-1/4) exp(-i (p - p0) x0 - (p - p0)^2 / 2 s^2)

``center`` is the location in the packet's own domain and ``carrier`` is the
location in the conjugate domain (E0 for a time packet, t0 for an energy
packet, and so on).  Time/energy transforms use

    f(t) = (2 pi)^(-1/2) int dw exp(-i w t) f^(w)

and space/momentum the opposite sign, so each pair above is an exact
Fourier pair with ``sigma_conjugate = 1/sigma``.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GaussianPacket",
    "EntropicConstraints",
    "DegeneratePacketError",
    "fourier_pair",
    "uncertainty",
    "entropic_packet",
    "convolve_dispersions",
    "CONJUGATE",
]

CONJUGATE = {"time": "energy", "energy": "time", "space": "momentum", "momentum": "space"}

# sign s of the linear phase: psi ~ exp(i s * carrier * (x - center_shift))
_PHASE_SIGN = {"time": -1.0, "energy": +1.0, "space": +1.0, "momentum": -1.0}


class DegeneratePacketError(ValueError):
    """A packet with zero (or negative) dispersion was requested."""


@dataclass(frozen=True)
class GaussianPacket:
    center: float
    carrier: float
    sigma: float
    domain: str = "time"

    def __post_init__(self):
        if self.domain not in CONJUGATE:
            raise ValueError(f"unknown domain {self.domain!r}")
        if not (self.sigma > 0) or not np.isfinite(self.sigma):
            raise DegeneratePacketError(f"sigma must be positive and finite, got {self.sigma}")

    @property
    def norm_factor(self):
        return (np.pi * self.sigma**2) ** -0.25

    @property
    def uncertainty(self):
        return self.sigma / np.sqrt(2.0)

    def __call__(self, x):
        """Evaluate the (complex) amplitude at ``x``."""
        x = np.asarray(x, dtype=float)
        s = _PHASE_SIGN[self.domain]
        gauss = np.exp(-((x - self.center) ** 2) / (2 * self.sigma**2))
        if self.domain in ("time", "space"):
            phase = np.exp(1j * s * self.carrier * x)
        else:
            phase = np.exp(1j * s * (x - self.center) * self.carrier)
        return self.norm_factor * phase * gauss

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return self.norm_factor**2 * np.exp(-((x - self.center) ** 2) / self.sigma**2)

    def to_dict(self):
        return {"domain": self.domain, "center": self.center,
                "carrier": self.carrier, "sigma": self.sigma}

    @classmethod
    def from_dict(cls, d):
        return cls(center=float(d["center"]), carrier=float(d["carrier"]),
                   sigma=float(d["sigma"]), domain=d["domain"])


def fourier_pair(p):
    """Conjugate-domain packet: centre and carrier swap, sigma -> 1/sigma."""
    return GaussianPacket(center=p.carrier, carrier=p.center, sigma=1.0 / p.sigma,
                          domain=CONJUGATE[p.domain])


def uncertainty(p):
    """Root-mean-square spread of ``|psi|^2``, i.e. ``sigma/sqrt(2)``."""
    return p.uncertainty


@dataclass(frozen=True)
class EntropicConstraints:
    """First and second energy moments a maximum-entropy packet must honour."""

    mean_energy: float
    energy_second_moment: float

    @classmethod
    def from_uncertainty(cls, mean_energy, delta_energy):
        return cls(mean_energy, mean_energy**2 + delta_energy**2)

    @property
    def variance(self):
        return self.energy_second_moment - self.mean_energy**2

    @property
    def delta_energy(self):
        return float(np.sqrt(self.variance)) if self.variance > 0 else 0.0


def entropic_packet(c):
    """Maximum-entropy energy packet for the given moments.

    The carrier (time offset) is zero; ``sigma_E = sqrt(2) * dE`` so the
    time-domain partner has ``sigma_t = 1/sigma_E`` and ``dt = 1/(2 dE)``.
    """
    var = c.variance
    if not var > 0:
        raise DegeneratePacketError(
            f"energy variance must be positive (got {var}); delta-function limit is not modelled")
    return GaussianPacket(center=c.mean_energy, carrier=0.0,
                          sigma=float(np.sqrt(2.0 * var)), domain="energy")


def convolve_dispersions(sigma_a2, sigma_b2):
    """Dispersion (sigma^2) of the convolution of two Gaussians."""
    if sigma_a2 < 0 or sigma_b2 < 0:
        raise ValueError("dispersions must be non-negative")
    return sigma_a2 + sigma_b2
