"""Oracle suite: every closed form checked against an independent computation.

Each case is reported as ``{group, case, max_error, tolerance, passed}``.
"""

import numpy as np

from .bound import HYDROGEN, gho_estimate, hydrogen_momentum_moments, lho_sigma
from .constants import CONSTANTS
from .numgrid import DEFAULT_MATRIX, propagation_case
from .photon import (expansion_bound, pseudo_euclidean_potential,
                     pseudo_euclidean_quadratic, residue_check)
from .sweep import sweep

__all__ = [
    "RESIDUE_TAUS",
    "RESIDUE_KAPPAS",
    "TAYLOR_RADII",
    "SUITES",
    "residue_cases",
    "moment_cases",
    "propagation_cases",
    "taylor_cases",
    "mu_calibration_cases",
    "validate_all",
]

RESIDUE_TAUS = (0.1, 0.5, 1.0, 2.0, 3.0)
RESIDUE_KAPPAS = (0.5, 1.0, 2.0, 5.0)
TAYLOR_RADII = (0.1, 1.0, 52.9, 1000.0)


def _case(group, case, err, tol, **extra):
    d = {"group": group, "case": case, "max_error": float(err), "tolerance": tol,
         "passed": bool(np.isfinite(err) and err <= tol)}
    d.update(extra)
    return d


def _one_residue(kt, tol=1e-6):
    kappa, tau = kt
    num, ana = residue_check(kappa, tau)
    # relative to the amplitude 2 pi/kappa; sin(kappa tau) itself may be ~0
    err = abs(num - ana) / (2 * np.pi / kappa)
    return _case("residues", f"kappa={kappa:g},tau={tau:g}", err, tol)


def residue_cases(threads=None):
    pts = [(k, t) for t in RESIDUE_TAUS for k in RESIDUE_KAPPAS]
    return sweep(_one_residue, pts, threads)


def moment_cases(tol=1e-4):
    mom = hydrogen_momentum_moments()
    return [
        _case("moments", "norm=1", abs(mom.norm - 1.0), tol),
        _case("moments", "<p^2>=1/a0^2", abs(mom.p2 - 1.0), tol),
        _case("moments", "<p^4>=5/a0^4", abs(mom.p4 - 5.0) / 5.0, tol),
    ]


def propagation_cases(matrix=None, threads=None):
    matrix = DEFAULT_MATRIX if matrix is None else matrix

    def run(c):
        r = propagation_case(**c)
        return {"group": "propagation", "case": r["case"], "max_error": r["max_error"],
                "tolerance": 1e-6, "norm_drift": r["norm_drift"], "n_grid": r["n_grid"],
                "aliased": r["aliased"], "passed": r["passed"]}

    return sweep(run, matrix, threads)


def taylor_cases(n_points=50):
    """``|exact - quadratic| <= 3 t^4 / (8 r^5)`` on ``t in [0, r/2]``.

    ``max_error`` is the largest ratio of the actual error to the bound; the
    case passes when it does not exceed 1.
    """
    out = []
    for r in TAYLOR_RADII:
        t = np.linspace(0.0, r / 2, n_points)
        err = np.abs(pseudo_euclidean_potential(t, r) - pseudo_euclidean_quadratic(t, r))
        bound = expansion_bound(t, r)
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(bound > 0, err / bound, np.where(err > 0, np.inf, 0.0))
        out.append(_case("taylor", f"r={r:g},t in [0,r/2],n={n_points}",
                         float(ratio.max()), 1.0))
    return out


def mu_calibration_cases(mu=1.0, constants=CONSTANTS, tol=1e-12):
    target = gho_estimate(HYDROGEN, constants).sigma_t2
    got = lho_sigma(constants.a0_pm, mu, HYDROGEN, constants)
    return [_case("mu_calibration", f"lho_sigma(a0, mu={mu:g}) == gho sigma^2",
                  abs(got - target) / target, tol)]


SUITES = ("residues", "moments", "propagation", "taylor", "mu_calibration")


def validate_all(suites=SUITES, mu=1.0, matrix=None, threads=None):
    """Run the selected suites; returns ``{"cases": [...], "passed": bool}``."""
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}; choose from {list(SUITES)}")
    runners = {
        "residues": lambda: residue_cases(threads),
        "moments": moment_cases,
        "propagation": lambda: propagation_cases(matrix, threads),
        "taylor": taylor_cases,
        "mu_calibration": lambda: mu_calibration_cases(mu),
    }
    cases = []
    for s in SUITES:
        if s in suites:
            cases.extend(runners[s]())
    return {"cases": cases, "passed": all(c["passed"] for c in cases)}
