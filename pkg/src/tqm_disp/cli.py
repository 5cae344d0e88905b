"""Command-line entry point ``tqm-disp``.

Exit status: 0 on success, 1 on a computation error (a JSON object is written
to stderr), 2 on a usage error.
"""

import argparse
import json
import sys

import numpy as np

from . import bound, scatter, validate
from .constants import CONSTANTS, UNITS
from .freeprop import evolve_gtf
from .numgrid import DEFAULT_MATRIX
from .photon import evaluate_greens
from .wavepacket import GaussianPacket

__all__ = ["main", "build_parser", "fmt_float"]


def fmt_float(x):
    """Fixed scientific notation, 12 significant digits."""
    return f"{float(x):.11e}"


class UsageError(Exception):
    pass


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _csv(header_lines, columns, rows):
    out = [f"# {h}" for h in header_lines]
    out.append(",".join(columns))
    for r in rows:
        out.append(",".join(v if isinstance(v, str) else fmt_float(v) for v in r))
    return "\n".join(out) + "\n"


def _table(header_lines, pairs):
    w = max((len(k) for k, _ in pairs), default=0)
    out = [f"# {h}" for h in header_lines]
    out += [f"{k:<{w}}  {v}" for k, v in pairs]
    return "\n".join(out) + "\n"


def _config_line(cfg):
    return "config: " + json.dumps(cfg, sort_keys=True)


# -- subcommands --------------------------------------------------------------

def cmd_constants(args, cfg):
    d = CONSTANTS.as_dict()
    if args.format == "json":
        return _dumps({"config": cfg,
                       "constants": {k: {"value": v, "unit": UNITS[k]} for k, v in d.items()}})
    rows = [(k, f"{v!r} {UNITS[k]}".rstrip()) for k, v in d.items()]
    if args.format == "csv":
        return _csv([_config_line(cfg)], ["name", "value", "unit"],
                    [(k, fmt_float(v), UNITS[k]) for k, v in d.items()])
    return _table([_config_line(cfg)], rows)


def _cesium_lines(rep):
    return {
        "claimed_as": rep["claimed_as"],
        "candidate_symmetric_as": rep["symmetric_as"],
        "candidate_r34_as": rep["r34_as"],
        "candidate_n32_as": rep["n32_as"],
    }


def cmd_estimate(args, cfg):
    est = bound.estimate(args.atom, args.method, n=args.n, mu=args.mu)
    rec = est.to_dict()
    if args.atom == "cesium":
        rec["cesium_report"] = _cesium_lines(bound.cesium_report())
    if args.format == "json":
        return _dumps({"config": cfg, **rec})
    flat = {k: v for k, v in rec.items() if k != "cesium_report"}
    flat.update(rec.get("cesium_report", {}))
    if args.format == "csv":
        return _csv([_config_line(cfg)], ["name", "value"],
                    [(k, v if isinstance(v, (int, float)) and not isinstance(v, bool) else str(v))
                     for k, v in flat.items()])
    return _table([_config_line(cfg)], [(k, repr(v)) for k, v in flat.items()])


def cmd_propagate(args, cfg):
    if not (args.m > 0 and args.sigma_t > 0):
        raise ValueError("--m and --sigma-t must be positive")
    hbar = CONSTANTS.hbar_eV_as
    m_nat, E0_nat = args.m / hbar, args.E0 / hbar  # 1/as
    p = GaussianPacket(center=args.t0, carrier=E0_nat, sigma=args.sigma_t, domain="time")
    ev = evolve_gtf(p, m_nat, args.tau)
    w = float(np.sqrt(ev.spread()))
    params = {
        "center_as": float(ev.center),
        "drift_as": float(ev.drift),
        "sigma_tau_as": w,
        "delta_t_as": w / np.sqrt(2.0),
        "f_tau_re": float(ev.f_tau.real),
        "f_tau_im": float(ev.f_tau.imag),
        "phase_rad": float(np.angle(ev.phase)),
    }
    t = np.linspace(ev.center - args.span * w, ev.center + args.span * w, args.points)
    dens = ev.density(t)
    if args.format == "json":
        return _dumps({"config": cfg, "evolved": params,
                       "t_as": t.tolist(), "density_per_as": dens.tolist()})
    head = [_config_line(cfg)] + [f"{k} = {fmt_float(v)}" for k, v in params.items()]
    return _csv(head, ["t_as", "density_per_as"], zip(t, dens))


def _parse_range(text):
    try:
        a, b, n = text.split(",")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"--t-range expects 'start,stop,n', got {text!r}") from None
    if n < 1:
        raise UsageError("--t-range needs n >= 1")
    return a, b, n


def cmd_photon_greens(args, cfg):
    a, b, n = _parse_range(args.t_range)
    g = evaluate_greens(args.form, args.r, args.tau, np.linspace(a, b, n), mu=args.mu,
                        kappa=args.kappa, width=args.width)
    if args.format == "json":
        return _dumps({"config": cfg, "kappa_bar_per_as": g.kappa_bar, "t_as": g.t_tau.tolist(),
                       "re": g.value.real.tolist(), "im": g.value.imag.tolist(),
                       "abs": np.abs(g.value).tolist()})
    head = [_config_line(cfg), f"kappa_bar_per_as = {fmt_float(g.kappa_bar)}"]
    rows = zip(g.t_tau, g.value.real, g.value.imag, np.abs(g.value))
    return _csv(head, ["t_as", "re", "im", "abs"], rows)


def cmd_scatter(args, cfg):
    if args.init is None:
        raise UsageError("scatter needs --init (flag or config)")
    if args.chain is None:
        raise UsageError("scatter needs --chain (flag or config)")
    if args.target_from_lho is not None:
        target = bound.lho_sigma(args.target_from_lho, args.mu)
    else:
        target = args.init if args.target is None else args.target
    try:
        ops = scatter.parse_chain(args.chain, target)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    led = scatter.run_chain(args.init, ops)
    if args.format == "json":
        ents = [{"step": i, "event": e.event, "sigma2_in_as2": e.sigma2_in,
                 "sigma2_out_as2": e.sigma2_out, "photon_sigma2_as2": e.photon_sigma2}
                for i, e in enumerate(led.entries, 1)]
        return _dumps({"config": cfg, "target_sigma2_as2": target, "entries": ents,
                       "current_sigma2_as2": led.current})
    head = [_config_line(cfg), "units: as^2", f"target_sigma2 = {fmt_float(target)}"]
    return led.to_csv("\n".join(head))


def cmd_validate(args, cfg):
    if args.matrix != "default":
        raise UsageError(f"unknown matrix {args.matrix!r}; only 'default' is defined")
    suites = validate.SUITES if args.suite == "all" else (args.suite,)
    rep = validate.validate_all(suites, mu=args.mu, matrix=DEFAULT_MATRIX)
    text = _dumps({"config": cfg, **rep})
    return text, (0 if rep["passed"] else 1)


# -- parser -------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("table", "csv", "json"), default=None,
                   help="output format (default depends on the subcommand)")
    p.add_argument("--output", default=None, help="write output to this file")
    p.add_argument("--config", default=None, help="JSON file of option values; flags win")
    p.add_argument("--seed", type=int, default=0, help="reserved; all runs are deterministic")
    return p


_DEFAULT_FORMAT = {"constants": "table", "estimate": "json", "propagate": "csv",
                   "photon-greens": "csv", "scatter": "csv", "validate": "json"}

_HANDLERS = {"constants": cmd_constants, "estimate": cmd_estimate,
             "propagate": cmd_propagate, "photon-greens": cmd_photon_greens,
             "scatter": cmd_scatter, "validate": cmd_validate}


def build_parser():
    parser = argparse.ArgumentParser(prog="tqm-disp",
                                     description="Dispersion in time: estimates and oracles.")
    sub = parser.add_subparsers(dest="command", required=True)
    c = _common()

    sub.add_parser("constants", parents=[c], help="physical constants with units")

    p = sub.add_parser("estimate", parents=[c], help="bound-state time dispersion")
    p.add_argument("--atom", choices=("hydrogen", "cesium"), default="hydrogen")
    p.add_argument("--method", choices=("naive", "entropic", "gho", "lho"), default="lho")
    p.add_argument("--n", type=int, default=None, help="principal quantum number (Rydberg scaling)")
    p.add_argument("--mu", type=float, default=1.0, help="photon momentum calibration")

    p = sub.add_parser("propagate", parents=[c], help="free evolution of a GTF in time")
    p.add_argument("--m", type=float, default=CONSTANTS.m_e, help="mass, eV")
    p.add_argument("--sigma-t", type=float, default=1.0, help="initial dispersion, as")
    p.add_argument("--E0", type=float, default=None, help="carrier energy, eV (default m)")
    p.add_argument("--tau", type=float, default=1.0, help="clock time, as")
    p.add_argument("--t0", type=float, default=0.0, help="initial centre, as")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--span", type=float, default=4.0, help="half-width in evolved sigmas")

    p = sub.add_parser("photon-greens", parents=[c], help="tabulate a photon Green's function")
    p.add_argument("--form", choices=("quadratic", "bessel", "shell"), default="quadratic")
    p.add_argument("--r", type=float, default=CONSTANTS.a0_as, help="radius as light time, as")
    p.add_argument("--tau", type=float, default=None, help="clock time, as (default r)")
    p.add_argument("--t-range", default="-1,1,21", help="start,stop,n in as; write --t-range=-1,1,21 for a negative start")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=None, help="photon momentum, 1/as (bessel)")
    p.add_argument("--width", type=float, default=None, help="shell regulator width, as")

    p = sub.add_parser("scatter", parents=[c], help="dispersion ledger through a chain of events")
    p.add_argument("--init", type=float, default=None, help="initial sigma^2, as^2")
    p.add_argument("--chain", default=None,
                   help="e.g. 'absorb:0.5,relax:instant,emit:0.3'; also relax:exp:RATE:ELAPSED, "
                        "resonant:IN:OUT[:DWELL[:RATE]]")
    p.add_argument("--target", type=float, default=None,
                   help="relaxation target sigma^2, as^2 (default --init)")
    p.add_argument("--target-from-lho", type=float, default=None, metavar="R_PM",
                   help="take the target from the local oscillator at radius R_PM")
    p.add_argument("--mu", type=float, default=1.0)

    p = sub.add_parser("validate", parents=[c], help="run the oracle suite")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + validate.SUITES)
    p.add_argument("--matrix", default="default")
    p.add_argument("--mu", type=float, default=1.0,
                   help="override the photon momentum calibration (breaks mu_calibration if != 1)")
    return parser


def _resolve(parser, argv):
    args = parser.parse_args(argv)
    if args.config:
        try:
            with open(args.config) as fh:
                conf = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config!r}: {exc}")
        if not isinstance(conf, dict):
            parser.error("config file must hold a JSON object")
        known = set(vars(args)) - {"command", "config"}
        conf = {k.replace("-", "_"): v for k, v in conf.items()}
        bad = sorted(set(conf) - known)
        if bad:
            parser.error(f"unknown config keys: {bad}")
        sub = parser._subparsers._group_actions[0].choices[args.command]
        sub.set_defaults(**conf)
        args = parser.parse_args(argv)
    if args.format is None:
        args.format = _DEFAULT_FORMAT[args.command]
    if getattr(args, "E0", "unset") is None:
        args.E0 = args.m
    return args


def main(argv=None):
    parser = build_parser()
    args = _resolve(parser, argv)
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("config", "output")}
    try:
        out = _HANDLERS[args.command](args, cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    status = 0
    if isinstance(out, tuple):
        out, status = out
    if not out.endswith("\n"):
        out += "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
