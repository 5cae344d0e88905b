"""Photon Green's functions and the effective potential they induce.

Conventions: radii are given as light-travel times (so ``r`` and ``tau`` share
a unit) and ``kappa`` is in the reciprocal unit.  In the quadratic form the
clock time defaults to ``tau = r``.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .constants import CONSTANTS, C_FM_PER_YS
from .wavepacket import GaussianPacket

__all__ = [
    "ContourError",
    "residue_check",
    "residue_analytic",
    "retarded_shell",
    "shell_smear",
    "bessel_greens",
    "bessel_b",
    "pseudo_euclidean_potential",
    "pseudo_euclidean_quadratic",
    "expansion_bound",
    "photon_dispersion",
    "kappa_bar",
    "quadratic_greens",
    "PhotonGreens",
    "evaluate_greens",
    "ProtonSource",
    "initial_photon_amplitude",
    "initial_photon_packet",
    "regularized_space_form",
]


class ContourError(RuntimeError):
    """Quadrature along the contour did not reach the requested accuracy."""


def residue_analytic(kappa, tau):
    return -2 * np.pi / kappa * np.sin(kappa * tau)


def residue_check(kappa, tau, tol=1e-9):
    """Retarded frequency integral of ``exp(-i w tau) / (w^2 - kappa^2)``.

    The retarded contour passes above both poles.  Since the integrand is
    analytic above the real axis, the contour may be lifted to the line
    ``Im w = h`` for any ``h > 0`` without changing the value; on that line
    the integrand is smooth, so ordinary adaptive quadrature applies (QAWF
    for the oscillatory tails).  ``h`` scales with the problem so that
    neither the pole peaks (~1/h) nor the growth ``exp(h tau)`` dominate.

    Returns
    -------
    (numeric, analytic) : complex, complex
        ``analytic = -(2 pi / kappa) sin(kappa tau)``.

    Raises
    ------
    ContourError
        If the summed quadrature error estimate exceeds ``tol * 2 pi/kappa``.
    """
    if not (kappa > 0 and tau > 0):
        raise ValueError("kappa and tau must be positive")
    h = 0.5 * min(kappa, 1.0 / tau)
    A = 2.0 * kappa + 4.0 / tau + 1.0

    def R(x):
        z = x + 1j * h
        return 1.0 / (z * z - kappa * kappa)

    scale = 2 * np.pi / kappa
    opts = dict(epsabs=1e-13 * scale, epsrel=1e-12, limit=2000)
    errs = []
    notes = []

    def q(fn, a, b, **kw):
        val, err, info, *msg = integrate.quad(fn, a, b, full_output=1, **opts, **kw)
        errs.append(err)
        notes.extend(msg[:1])
        return val

    # core: exp(-i x tau) R(x) on [-A, A]
    pts = [-kappa, kappa]
    core_re = q(lambda x: (np.exp(-1j * x * tau) * R(x)).real, -A, A, points=pts)
    core_im = q(lambda x: (np.exp(-1j * x * tau) * R(x)).imag, -A, A, points=pts)

    # tails: int_A^inf [cos(x tau)(R(x)+R(-x)) - i sin(x tau)(R(x)-R(-x))] dx.
    # R(-x) = conj(R(x)) on this line, so the sum is real and the difference imaginary.
    tail_opts = dict(epsabs=1e-13 * scale, limlst=200)

    def qf(fn, weight):
        val, err, info, *msg = integrate.quad(fn, A, np.inf, weight=weight, wvar=tau,
                                              full_output=1, **tail_opts)
        errs.append(err)
        notes.extend(msg[:1])
        return val

    tail = (qf(lambda x: 2.0 * R(x).real, "cos")
            + qf(lambda x: 2.0 * R(x).imag, "sin"))

    numeric = np.exp(h * tau) * (core_re + 1j * core_im + tail)
    err = np.exp(h * tau) * sum(errs)
    if not np.isfinite(numeric) or err > tol * scale:
        raise ContourError(
            f"contour quadrature error {err:.3e} exceeds {tol * scale:.3e} "
            f"(kappa={kappa}, tau={tau}, h={h}, A={A}); quadpack: {notes}")
    return complex(numeric), complex(residue_analytic(kappa, tau))


def retarded_shell(r, tau, width=None):
    """``theta(tau) delta(tau - r) / (4 pi r)`` with the delta smeared to a Gaussian.

    ``width`` defaults to ``r/1000``.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    w = r / 1000.0 if width is None else width
    tau = np.asarray(tau, dtype=float)
    g = np.exp(-((tau - r) ** 2) / (2 * w * w)) / (np.sqrt(2 * np.pi) * w)
    return np.where(tau >= 0, g / (4 * np.pi * r), 0.0)


def shell_smear(r, g, width=None):
    """``int dtau retarded_shell(r, tau) g(tau)``; tends to g(r)/(4 pi r)."""
    w = r / 1000.0 if width is None else width
    lo, hi = max(0.0, r - 12 * w), r + 12 * w
    val, _ = integrate.quad(lambda t: retarded_shell(r, t, w) * g(t), lo, hi,
                            points=[r], epsabs=0, epsrel=1e-12, limit=200)
    return val


def bessel_b(t_tau, tau):
    """Bessel argument scale ``tau sqrt|1 + 2 t_tau/tau|``; equals tau at t_tau = 0."""
    return tau * np.sqrt(np.abs(1.0 + 2.0 * np.asarray(t_tau, dtype=float) / tau))


def bessel_greens(t, kappa, tau):
    """TQM photon Green's function in coordinate time, ``a J0(kappa b)``.

    ``t_tau = t - tau``, ``a = -i sqrt(pi/2) theta(tau + 2 t_tau)``.  The
    theta support is evaluated as written (theta(0) = 1).
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    t_tau = np.asarray(t, dtype=float) - tau
    a = -1j * np.sqrt(np.pi / 2) * np.heaviside(tau + 2 * t_tau, 1.0)
    return a * special.j0(kappa * bessel_b(t_tau, tau))


def pseudo_euclidean_potential(t, r):
    """``1/sqrt(t^2 + r^2)``: the Coulomb ``1/r`` with relative time as a fourth axis."""
    if np.any(np.asarray(r) == 0):
        raise ZeroDivisionError("pseudo-Euclidean potential is singular at r = 0")
    t = np.asarray(t, dtype=float)
    return 1.0 / np.hypot(t, r)


def pseudo_euclidean_quadratic(t, r):
    t = np.asarray(t, dtype=float)
    return 1.0 / r - 0.5 * t**2 / r**3


def expansion_bound(t, r):
    """Next Taylor term ``3 t^4 / (8 r^5)``; bounds the quadratic error for |t| < r."""
    t = np.asarray(t, dtype=float)
    return 0.375 * t**4 / r**5


def kappa_bar(r, mu=1.0):
    """Average photon momentum at radius ``r``: ``mu / r``."""
    if not r > 0:
        raise ValueError("r must be positive")
    return mu / r


def photon_dispersion(r, mu=1.0, tau=None):
    """``tau / kappa_bar``; with ``tau = r`` this is ``r^2 / mu``."""
    tau = r if tau is None else tau
    return tau / kappa_bar(r, mu)


def quadratic_greens(dt, r, tau=None, mu=1.0):
    """Quadratic-time photon Green's function.

    ``exp(-i kbar dt) sqrt(i kbar / (2 pi tau)) exp(i dt^2 / (2 sbar^2))`` with
    ``kbar = mu/r`` and ``sbar^2 = tau/kbar``.  The modulus is constant.
    """
    tau = r if tau is None else tau
    if not (tau > 0 and mu > 0):
        raise ValueError("tau and mu must be positive")
    kb = kappa_bar(r, mu)
    s2 = tau / kb
    dt = np.asarray(dt, dtype=float)
    pref = np.sqrt(1j * kb / (2 * np.pi * tau))
    return pref * np.exp(-1j * kb * dt + 1j * dt**2 / (2 * s2))


@dataclass(frozen=True)
class PhotonGreens:
    form: str
    t_tau: np.ndarray
    r: float
    tau: float
    kappa_bar: float
    value: np.ndarray


def evaluate_greens(form, r, tau=None, t_values=(), mu=1.0, kappa=None, width=None):
    """Tabulate one of the three forms over ``t_values``.

    * ``quadratic``: ``t_values`` are relative-time offsets.
    * ``bessel``: ``t_values`` are relative times ``t_tau``; ``kappa`` defaults
      to ``mu/r``.
    * ``shell``: ``t_values`` are clock times; the value is the regularised
      shell at radius ``r``.
    """
    tau = r if tau is None else tau
    t = np.asarray(t_values, dtype=float)
    kb = kappa_bar(r, mu)
    if form == "quadratic":
        val = quadratic_greens(t, r, tau, mu)
    elif form == "bessel":
        k = kb if kappa is None else kappa
        val = bessel_greens(t + tau, k, tau)
        kb = k
    elif form == "shell":
        val = retarded_shell(r, t, width).astype(complex)
    else:
        raise ValueError(f"unknown form {form!r}")
    return PhotonGreens(form, t, float(r), float(tau), float(kb), np.asarray(val, dtype=complex))


@dataclass(frozen=True)
class ProtonSource:
    """Proton treated as a GTF whose dispersion in space is its charge radius.

    ``sigma_q = hbar c / radius`` and ``sigma_t = radius / c``.
    ``delta_q`` is the momentum uncertainty ``hbar c / (2 radius)``.
    """

    radius_fm: float = CONSTANTS.proton_radius_fm

    def __post_init__(self):
        if not self.radius_fm > 0:
            raise ValueError("radius must be positive")

    @property
    def hbar_c_MeV_fm(self):
        return CONSTANTS.hbar_c_eV_pm * 1e-3  # 1 eV*pm = 1e-6 MeV * 1e3 fm

    @property
    def sigma_q_MeV(self):
        return self.hbar_c_MeV_fm / self.radius_fm

    @property
    def delta_q_MeV(self):
        return self.hbar_c_MeV_fm / (2 * self.radius_fm)

    @property
    def sigma_E_MeV(self):
        return self.sigma_q_MeV

    @property
    def sigma_t_ys(self):
        return self.radius_fm / C_FM_PER_YS


def initial_photon_amplitude(w, src=ProtonSource()):
    """Unnormalised photon energy profile ``exp(-w^2 / (4 sigma_E^2))`` (w in MeV)."""
    w = np.asarray(w, dtype=float)
    return np.exp(-(w**2) / (4 * src.sigma_E_MeV**2))


def initial_photon_packet(src=ProtonSource()):
    """Normalised energy-domain packet (MeV) with ``sigma_w = sqrt(2) sigma_E``."""
    return GaussianPacket(center=0.0, carrier=0.0, sigma=np.sqrt(2.0) * src.sigma_E_MeV,
                          domain="energy")


def regularized_space_form(t, r, tau, reg_sigma, n_sigma=12.0):
    """``-2 pi i / r int kappa sin(kappa r) G_tau(t, kappa) g(kappa) dkappa``.

    The bare integral diverges; ``g`` is a Gaussian regulator
    ``exp(-kappa^2 / (2 reg_sigma^2))`` supplied by the caller's packet width.
    """
    if not (r > 0 and reg_sigma > 0):
        raise ValueError("r and reg_sigma must be positive")

    def integrand(k, part):
        v = k * np.sin(k * r) * bessel_greens(t, k, tau) * np.exp(-k * k / (2 * reg_sigma**2))
        return getattr(v, part)

    upper = n_sigma * reg_sigma
    re = integrate.quad(integrand, 0, upper, args=("real",), limit=1000)[0]
    im = integrate.quad(integrand, 0, upper, args=("imag",), limit=1000)[0]
    return -2j * np.pi / r * (re + 1j * im)
