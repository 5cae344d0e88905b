"""Slice-by-slice propagation of sampled packets on a uniform time lattice.

The free step is done in the energy basis: forward transform, multiply each
bin by its exact phase ``exp(+i E^2 eps / 2m)`` (the coordinate-time part of
``exp(-i w_p eps)``), transform back.  With no potential this is exact per
step, so the only error sources are the finite span (wrap-around) and the
finite bandwidth of the lattice.

Energy bins follow the package Fourier convention, ``psi(t) ~ sum_E
exp(-i E t) psi^(E)``, so the forward transform is ``ifft`` and
``E_k = 2 pi fftfreq(n, dt)``.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .constants import CONSTANTS
from .freeprop import EvolvedPacket, evolve_gtf, kernel_time
from .wavepacket import GaussianPacket

__all__ = [
    "GridSpec",
    "GridState",
    "ConvergenceReport",
    "TruncationError",
    "grid_for",
    "sample_packet",
    "energies",
    "spectrum",
    "step_once",
    "propagate",
    "real_space_step",
    "fit_moments",
    "convergence_study",
    "suppression_scale",
    "suppression_phase",
    "suppression_factor",
    "DEFAULT_MATRIX",
    "propagation_case",
]

ALIAS_THRESHOLD = 1e-6


class TruncationError(ValueError):
    """The lattice does not cover enough of the packet."""


@dataclass(frozen=True)
class GridSpec:
    t_min: float
    dt: float
    n: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"grid step must be positive, got {self.dt}")
        if self.n < 16 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 16, got {self.n}")

    @property
    def t_max(self):
        return self.t_min + (self.n - 1) * self.dt

    @property
    def times(self):
        return self.t_min + self.dt * np.arange(self.n)

    @classmethod
    def centered(cls, center, half_span, n):
        dt = 2.0 * half_span / n
        return cls(center - half_span, dt, n)


@dataclass(frozen=True)
class GridState:
    """Immutable snapshot of sampled amplitudes.  ``aliased`` records a step warning."""

    samples: np.ndarray
    t_min: float
    dt: float
    aliased: bool = False
    notes: tuple = field(default=())

    def __post_init__(self):
        GridSpec(self.t_min, self.dt, len(self.samples))  # validates
        arr = np.array(self.samples, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self):
        return len(self.samples)

    @property
    def spec(self):
        return GridSpec(self.t_min, self.dt, self.n)

    @property
    def times(self):
        return self.spec.times

    @property
    def density(self):
        return np.abs(self.samples) ** 2

    @property
    def norm(self):
        return float(np.sqrt(np.sum(self.density) * self.dt))


def _next_pow2(x):
    return 1 << max(4, int(np.ceil(np.log2(max(x, 16)))))


def grid_for(p, m, tau, n_min=16):
    """Lattice wide and fine enough to carry ``p`` through clock time ``tau``.

    Span is at least +-(8 sigma + 8 |drift| + 8 spread(tau)) about the
    midpoint of the path; the step keeps the carrier below a quarter of
    Nyquist and the energy envelope well inside the band.
    """
    ev = evolve_gtf(p, m, tau)
    sigma = p.sigma
    width = np.sqrt(ev.spread())
    half = 8 * sigma + 8 * abs(ev.drift) + 8 * width
    mid = p.center + ev.drift / 2
    e_max = max(4 * abs(p.carrier), abs(p.carrier) + 10.0 / sigma)
    dt_max = np.pi / e_max
    n = max(n_min, _next_pow2(2 * half / dt_max))
    return GridSpec.centered(mid, half, n)


def sample_packet(p, grid, span_sigmas=8.0):
    """Evaluate ``p`` on ``grid``.

    ``p`` may be a GaussianPacket or an EvolvedPacket.  The grid must cover
    ``center +- span_sigmas * width``.
    """
    if isinstance(p, EvolvedPacket):
        center, width = p.center, np.sqrt(p.spread())
    else:
        center, width = p.center, p.sigma
    lo, hi = center - span_sigmas * width, center + span_sigmas * width
    if grid.t_min > lo or grid.t_max < hi:
        raise TruncationError(
            f"grid [{grid.t_min:g}, {grid.t_max:g}] does not cover [{lo:g}, {hi:g}]")
    return GridState(p(grid.times), grid.t_min, grid.dt)


def energies(n, dt):
    return 2 * np.pi * np.fft.fftfreq(n, dt)


def spectrum(state):
    """``(E_k, psi^(E_k))`` on the discrete energy grid, continuum normalised.

    ``psi^(E) = (2 pi)^(-1/2) int dt exp(+i E t) psi(t)``.
    """
    E = energies(state.n, state.dt)
    amp = (state.dt / np.sqrt(2 * np.pi) * np.exp(1j * E * state.t_min)
           * state.n * np.fft.ifft(state.samples))
    return E, amp


def _alias_fraction(spec_coeffs):
    n = len(spec_coeffs)
    power = np.abs(spec_coeffs) ** 2
    total = power.sum()
    if total == 0:
        return 0.0
    # bins n/2-2 .. n/2+1 sit within two bins of Nyquist
    edge = power[n // 2 - 2: n // 2 + 2].sum()
    return float(edge / total)


def _edge_fraction(samples):
    power = np.abs(samples) ** 2
    total = power.sum()
    return float((power[:2].sum() + power[-2:].sum()) / total) if total else 0.0


def step_once(s, m, epsilon):
    """One free slice of clock time ``epsilon``.

    The returned state has ``aliased=True`` if more than 1e-6 of the spectral
    power sits within two bins of Nyquist, or of the density within two
    samples of the lattice edge (wrap-around).
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not m > 0:
        raise ValueError("m must be positive")
    E = energies(s.n, s.dt)
    coeffs = np.fft.ifft(s.samples)
    coeffs = coeffs * np.exp(0.5j * E**2 * epsilon / m)
    out = np.fft.fft(coeffs)
    notes = list(s.notes)
    if _alias_fraction(coeffs) > ALIAS_THRESHOLD:
        notes.append("spectral power near Nyquist")
    if _edge_fraction(out) > ALIAS_THRESHOLD:
        notes.append("density at lattice edge")
    return GridState(out, s.t_min, s.dt, aliased=bool(notes), notes=tuple(dict.fromkeys(notes)))


def propagate(s, m, tau, n_steps):
    """``n_steps`` slices of width ``tau/n_steps``; returns (state, per-step norm drifts)."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    eps = tau / n_steps
    drifts = []
    for _ in range(n_steps):
        before = s.norm
        s = step_once(s, m, eps)
        drifts.append(abs(s.norm - before))
    return s, drifts


def real_space_step(s, m, epsilon):
    """Slow oracle: convolve directly with the real-space time kernel.

    O(n^2).  The lattice must resolve the kernel's chirp across the whole
    span, otherwise a ValueError is raised.
    """
    t = s.times
    span = t[-1] - t[0]
    E = energies(s.n, s.dt)
    _, amp = spectrum(s)
    p = np.abs(amp) ** 2
    e_max = np.max(np.abs(E[p > 1e-12 * p.max()]))
    if m * span / epsilon + e_max > 0.8 * np.pi / s.dt:
        raise ValueError("lattice too coarse to resolve the real-space kernel")
    K = kernel_time(t[:, None], t[None, :], m, epsilon)
    return GridState(K @ s.samples * s.dt, s.t_min, s.dt)


def fit_moments(s):
    """``(center, sigma)`` of ``|psi|^2`` from its first two moments."""
    rho = s.density
    t = s.times
    w = rho.sum()
    mean = float((t * rho).sum() / w)
    var = float(((t - mean) ** 2 * rho).sum() / w)
    return mean, float(np.sqrt(2 * var))


@dataclass
class ConvergenceReport:
    steps: list
    order_estimate: float
    vary: str = "steps"

    def __post_init__(self):
        if any(e < 0 for _, e in self.steps):
            raise ValueError("errors must be non-negative")

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# convergence vary={self.vary} order_estimate={self.order_estimate:.12e}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "max_error"])
        for n, e in self.steps:
            w.writerow([n, f"{e:.11e}"])
        return buf.getvalue()


def _order(steps):
    ns = np.array([n for n, _ in steps], dtype=float)
    es = np.array([max(e, 1e-300) for _, e in steps])
    if len(ns) < 2:
        return float("nan")
    slope = np.polyfit(np.log(ns), np.log(es), 1)[0]
    return float(-slope)


def convergence_study(p, m, tau, N_list, vary="steps", grid=None):
    """Max pointwise density error against the closed form, over a sweep.

    ``vary="steps"`` sweeps the slice count N at a fixed lattice;
    ``vary="grid"`` sweeps the lattice size n at a fixed span with one slice.
    """
    N_list = list(N_list)
    if not N_list:
        raise ValueError("N_list is empty")
    if N_list != sorted(N_list):
        raise ValueError("N_list must be ascending")
    exact = evolve_gtf(p, m, tau)
    base = grid or grid_for(p, m, tau)
    rows = []
    for N in N_list:
        if vary == "steps":
            g, n_steps = base, N
        elif vary == "grid":
            half = (base.t_max - base.t_min + base.dt) / 2
            g, n_steps = GridSpec.centered(base.t_min + half, half, N), 1
        else:
            raise ValueError(f"unknown vary={vary!r}")
        s0 = GridState(p(g.times), g.t_min, g.dt)
        s, _ = propagate(s0, m, tau, n_steps)
        rows.append((N, float(np.max(np.abs(s.density - exact.density(g.times))))))
    return ConvergenceReport(rows, _order(rows), vary)


DEFAULT_MATRIX = [
    {"sigma_t": s, "tau_factor": f, "m": 1.0, "E0": 1.0, "n_steps": 8}
    for s in (0.5, 1.0, 2.0) for f in (0.1, 1.0, 5.0)
]


def propagation_case(sigma_t, tau_factor, m=1.0, E0=1.0, n_steps=8):
    """Run one cell of the propagation matrix; returns a JSON-ready dict."""
    tau = tau_factor * m * sigma_t**2
    p = GaussianPacket(center=0.0, carrier=E0, sigma=sigma_t, domain="time")
    g = grid_for(p, m, tau)
    s0 = sample_packet(p, g)
    s, drifts = propagate(s0, m, tau, n_steps)
    exact = evolve_gtf(p, m, tau).density(g.times)
    err = float(np.max(np.abs(s.density - exact)))
    drift = float(max(drifts))
    return {
        "case": f"sigma_t={sigma_t:g},tau={tau_factor:g}*m*sigma_t^2,m={m:g},E0={E0:g},N={n_steps}",
        "max_error": err,
        "norm_drift": drift,
        "n_grid": g.n,
        "aliased": s.aliased,
        "passed": err < 1e-6 and drift < 1e-9 and not s.aliased,
    }


def suppression_scale(tau, constants=CONSTANTS):
    """``hbar / tau`` in eV for ``tau`` in attoseconds."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    return constants.hbar_eV_as / tau


def suppression_phase(delta_w, kappa, tau, constants=CONSTANTS):
    """Exact ``w tau`` (radians) for an off-shell shift ``delta_w`` (eV) around ``kappa`` (eV).

    ``w = ((kappa + delta_w)^2 - kappa^2) / (2 kappa)``; for small shifts this
    is ``delta_w * tau / hbar``.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    w = ((kappa + delta_w) ** 2 - kappa**2) / (2 * kappa)
    return w * tau / constants.hbar_eV_as


def suppression_factor(delta_w, kappa, tau, constants=CONSTANTS):
    return np.exp(-1j * suppression_phase(delta_w, kappa, tau, constants))


