"""Bookkeeping of time dispersion through absorption, emission and relaxation.

Absorption convolves the atomic and photon Gaussians, so dispersions add;
emission leaves the atom with the remainder.  How a perturbed dispersion
relaxes back to its stable value is not known; the exponential policy here
is a phenomenological stand-in with a free rate.
"""

import csv
import io
import math
from dataclasses import dataclass, field, replace

__all__ = [
    "NegativeVarianceError",
    "RelaxationPolicy",
    "LedgerEntry",
    "DispersionLedger",
    "absorb",
    "emit",
    "relax",
    "resonant",
    "parse_chain",
    "run_chain",
]


class NegativeVarianceError(ValueError):
    """An emission would leave the atom with negative dispersion."""


@dataclass(frozen=True)
class RelaxationPolicy:
    target_sigma2: float
    mode: str = "instant"
    rate: float = None

    def __post_init__(self):
        if self.mode not in ("instant", "exponential"):
            raise ValueError(f"unknown relaxation mode {self.mode!r}")
        if self.mode == "exponential" and not (self.rate is not None and self.rate > 0):
            raise ValueError("exponential relaxation needs a positive rate")
        if self.target_sigma2 < 0:
            raise ValueError("target dispersion must be non-negative")

    def apply(self, sigma2, elapsed):
        if self.mode == "instant":
            return self.target_sigma2
        return self.target_sigma2 + (sigma2 - self.target_sigma2) * math.exp(-self.rate * elapsed)

    def describe(self):
        if self.mode == "instant":
            return f"instant->{self.target_sigma2:g}"
        return f"exp(rate={self.rate:g})->{self.target_sigma2:g}"


@dataclass(frozen=True)
class LedgerEntry:
    event: str
    sigma2_in: float
    sigma2_out: float
    photon_sigma2: float = None
    params: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class DispersionLedger:
    """Ordered, immutable record of dispersion changes.  Transitions return new ledgers."""

    initial: float
    entries: tuple = ()

    def __post_init__(self):
        if self.initial < 0:
            raise ValueError("initial dispersion must be non-negative")

    @property
    def current(self):
        return self.entries[-1].sigma2_out if self.entries else self.initial

    def _append(self, entry):
        if entry.sigma2_out < 0:
            raise NegativeVarianceError(f"dispersion would become {entry.sigma2_out}")
        return replace(self, entries=self.entries + (entry,))

    def absorb(self, photon_sigma2):
        return absorb(self, photon_sigma2)

    def emit(self, photon_sigma2):
        return emit(self, photon_sigma2)

    def relax(self, policy, elapsed=0.0):
        return relax(self, policy, elapsed)

    def resonant(self, sigma_gamma_in2, sigma_gamma_out2, dwell=0.0, policy=None):
        return resonant(self, sigma_gamma_in2, sigma_gamma_out2, dwell, policy)

    def replay(self):
        """Re-apply every recorded transition from ``initial``."""
        led = DispersionLedger(self.initial)
        for e in self.entries:
            p = e.params
            if e.event == "absorb":
                led = absorb(led, e.photon_sigma2)
            elif e.event == "emit":
                led = emit(led, e.photon_sigma2)
            elif e.event == "relax":
                led = relax(led, p["policy"], p["elapsed"])
            elif e.event == "resonant":
                led = resonant(led, p["sigma_gamma_in2"], p["sigma_gamma_out2"],
                               p["dwell"], p["policy"])
            else:
                raise ValueError(f"unknown event {e.event!r}")
        return led

    def to_csv(self, header=None):
        buf = io.StringIO()
        if header:
            for line in header.splitlines():
                buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "event", "sigma2_in", "sigma2_out", "photon_sigma2"])
        for i, e in enumerate(self.entries, 1):
            ph = "" if e.photon_sigma2 is None else f"{e.photon_sigma2:.11e}"
            w.writerow([i, e.event, f"{e.sigma2_in:.11e}", f"{e.sigma2_out:.11e}", ph])
        return buf.getvalue()


def absorb(ledger, photon_sigma2):
    if photon_sigma2 < 0:
        raise ValueError("photon dispersion must be non-negative")
    cur = ledger.current
    return ledger._append(LedgerEntry("absorb", cur, cur + photon_sigma2, photon_sigma2))


def emit(ledger, photon_sigma2):
    if photon_sigma2 < 0:
        raise ValueError("photon dispersion must be non-negative")
    cur = ledger.current
    if photon_sigma2 > cur:
        raise NegativeVarianceError(
            f"cannot emit sigma^2={photon_sigma2} from a state with sigma^2={cur}")
    return ledger._append(LedgerEntry("emit", cur, cur - photon_sigma2, photon_sigma2))


def relax(ledger, policy, elapsed=0.0):
    if elapsed < 0:
        raise ValueError("elapsed time must be non-negative")
    cur = ledger.current
    out = policy.apply(cur, elapsed)
    return ledger._append(LedgerEntry("relax", cur, out, None,
                                      {"policy": policy, "elapsed": elapsed}))


def resonant(ledger, sigma_gamma_in2, sigma_gamma_out2, dwell=0.0, policy=None):
    """Absorb, relax for ``dwell`` (skipped if zero or no policy), then emit.

    Recorded as a single ``resonant`` entry.
    """
    tmp = DispersionLedger(ledger.current).absorb(sigma_gamma_in2)
    if policy is not None and dwell > 0:
        tmp = tmp.relax(policy, dwell)
    tmp = tmp.emit(sigma_gamma_out2)
    params = {"sigma_gamma_in2": sigma_gamma_in2, "sigma_gamma_out2": sigma_gamma_out2,
              "dwell": dwell, "policy": policy,
              "intermediate": tuple(e.sigma2_out for e in tmp.entries)}
    return ledger._append(LedgerEntry("resonant", ledger.current, tmp.current,
                                      sigma_gamma_out2, params))


def parse_chain(text, target_sigma2):
    """Parse ``"absorb:0.5,relax:instant,emit:0.3"`` into callables on a ledger.

    Grammar (comma separated):
    ``absorb:S``, ``emit:S``, ``relax:instant``, ``relax:exp:RATE:ELAPSED``,
    ``resonant:S_IN:S_OUT[:DWELL[:RATE]]`` (no RATE means instant relaxation
    when DWELL > 0).  ``target_sigma2`` is the relaxation target.
    """
    ops = []
    for raw in filter(None, (t.strip() for t in text.split(","))):
        parts = raw.split(":")
        kind, args = parts[0], parts[1:]
        try:
            if kind in ("absorb", "emit") and len(args) == 1:
                val = float(args[0])
                ops.append((kind, (val,)))
            elif kind == "relax" and args == ["instant"]:
                ops.append(("relax", (RelaxationPolicy(target_sigma2), 0.0)))
            elif kind == "relax" and len(args) == 3 and args[0] in ("exp", "exponential"):
                pol = RelaxationPolicy(target_sigma2, "exponential", float(args[1]))
                ops.append(("relax", (pol, float(args[2]))))
            elif kind == "resonant" and 2 <= len(args) <= 4:
                s_in, s_out = float(args[0]), float(args[1])
                dwell = float(args[2]) if len(args) > 2 else 0.0
                pol = (RelaxationPolicy(target_sigma2, "exponential", float(args[3]))
                       if len(args) > 3 else RelaxationPolicy(target_sigma2))
                ops.append(("resonant", (s_in, s_out, dwell, pol)))
            else:
                raise ValueError
        except ValueError as exc:
            raise ValueError(f"cannot parse chain element {raw!r}") from exc
    return ops


_DISPATCH = {"absorb": absorb, "emit": emit, "relax": relax, "resonant": resonant}


def run_chain(initial, ops):
    led = DispersionLedger(initial)
    for kind, args in ops:
        led = _DISPATCH[kind](led, *args)
    return led
