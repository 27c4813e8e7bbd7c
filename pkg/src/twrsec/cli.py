"""Command-line interface.

Subcommands: ``solve`` (single-instance optimization), the sweep runners
(``sweep-beta``, ``compare-alloc``, ``sweep-epsilon``, ``monte-carlo``), and
``verify`` (SGP vs brute-force oracle on the same instance).

Powers are given in dB relative to N0 and converted once at this boundary;
everything below works in linear units.  Options may come from a flat
``key = value`` config file; command-line flags override file values.

Exit codes: 0 ok, 2 usage error, 3 solver failure, 4 verification gap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from . import experiments, oracle, sgp
from .experiments import (BETA_SWEEP_CHANNELS, DEFAULT_CSI_CASES,
                          EPSILON_SWEEP_CHANNELS, ExperimentPlan, FadingSpec,
                          PlanKind, db_to_linear)
from .model import ChannelRealization, ContractError, CsiErrorBounds, SystemParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_GAP = 4

# Keys accepted in config files, with the same meaning as the flags.
CONFIG_KEYS = ("p_db", "eta", "n0", "gains", "eps", "known", "seed",
               "restarts", "delta", "format", "out")


def read_config(path: str) -> dict[str, str]:
    """Parse a flat key = value config file ('#' starts a comment)."""
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = val
    return values


def write_config(values: dict, path) -> None:
    with open(path, "w") as fh:
        for key, val in values.items():
            fh.write(f"{key} = {val}\n")


def _parse_triple(text: str, name: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"{name} needs three comma-separated values")
    return tuple(float(p) for p in parts)


def _parse_mask(text: str) -> tuple[bool, bool, bool]:
    if len(text) != 3 or any(c not in "01" for c in text):
        raise argparse.ArgumentTypeError("mask must be three 0/1 characters (h1,h2,hJ)")
    return tuple(c == "1" for c in text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twrsec",
        description="Secrecy-rate optimization for an energy-harvesting "
                    "untrusted two-way relay with a friendly jammer.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="write results to this path")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--p-db", type=float, default=None,
                       help="power budget in dB relative to N0")
        p.add_argument("--eta", type=float, default=None)
        p.add_argument("--n0", type=float, default=None)
        p.add_argument("--gains", type=str, default=None,
                       help="g1,g2,gJ power gains (estimated gains when --eps is set)")
        p.add_argument("--eps", type=str, default=None,
                       help="e1,e2,eJ worst-case amplitude error bounds")
        p.add_argument("--known", type=str, default=None,
                       help="3-char 0/1 mask of perfectly known links")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--restarts", type=int, default=None)
        p.add_argument("--delta", type=float, default=None)

    for name in ("solve", "sweep-beta", "compare-alloc", "sweep-epsilon",
                 "monte-carlo", "verify"):
        common(sub.add_parser(name))
    sub.choices["monte-carlo"].add_argument("--trials", type=int, default=100)
    return parser


_DEFAULTS = {"p_db": 20.0, "eta": 0.5, "n0": 1.0, "gains": None, "eps": None,
             "known": "000", "seed": 0, "restarts": 5, "delta": 1e-4,
             "format": "csv", "out": None}

_CASTS = {"p_db": float, "eta": float, "n0": float, "seed": int,
          "restarts": int, "delta": float}


def effective_options(args) -> dict:
    """Defaults, overridden by config file, overridden by explicit flags."""
    opts = dict(_DEFAULTS)
    if args.config:
        for key, raw in read_config(args.config).items():
            opts[key] = _CASTS.get(key, str)(raw)
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            opts[key] = flag
    return opts


def _instance(opts, default_gains):
    gains = (_parse_triple(opts["gains"], "--gains") if opts["gains"]
             else default_gains.gains)
    ch = ChannelRealization(*gains)
    sys_ = SystemParams(P=db_to_linear(opts["p_db"], opts["n0"]),
                        eta=opts["eta"], N0=opts["n0"])
    err = None
    if opts["eps"]:
        err = CsiErrorBounds(*_parse_triple(opts["eps"], "--eps"),
                             known_mask=_parse_mask(opts["known"]))
    cfg = sgp.SgpConfig(delta=opts["delta"], restarts=opts["restarts"],
                        seed=opts["seed"])
    return ch, sys_, err, cfg


def _emit(rows, plan, opts):
    meta = experiments.metadata(plan)
    if opts["out"]:
        if opts["format"] == "json":
            experiments.write_json(rows, meta, opts["out"])
        else:
            experiments.write_csv(rows, opts["out"])
    else:
        for row in rows:
            print(f"P={row.p_db:g}dB eps={row.epsilon:g} case={row.csi_case} "
                  f"{row.label}: C_S={row.c_sum:.6f} "
                  f"P1={row.p1:.4f} P2={row.p2:.4f} PJ={row.pj:.4f} beta={row.beta:.4f}")


def _plan(kind: PlanKind, opts, args) -> ExperimentPlan:
    if kind is PlanKind.BETA_SWEEP:
        channels, p_grid = BETA_SWEEP_CHANNELS, tuple(range(10, 31, 2))
        eps_grid = (0.0,)
    elif kind is PlanKind.ALLOC_COMPARE:
        channels, p_grid = BETA_SWEEP_CHANNELS, tuple(range(10, 31, 2))
        eps_grid = (0.0, 0.05, 0.1)
    elif kind is PlanKind.EPSILON_SWEEP:
        channels, p_grid = EPSILON_SWEEP_CHANNELS, (30.0,)
        eps_grid = tuple(round(0.01 * i, 2) for i in range(0, 11))
    else:
        channels, p_grid, eps_grid = FadingSpec(), (opts["p_db"],), (0.0,)
    if opts["gains"]:
        channels = ChannelRealization(*_parse_triple(opts["gains"], "--gains"))
    if opts["p_db"] != _DEFAULTS["p_db"]:
        p_grid = (opts["p_db"],)
    return ExperimentPlan(kind=kind, power_grid_db=tuple(float(p) for p in p_grid),
                          epsilon_grid=eps_grid, channels=channels,
                          trials=getattr(args, "trials", 1), seed=opts["seed"],
                          eta=opts["eta"], n0=opts["n0"], restarts=opts["restarts"])


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = effective_options(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE

    cmd = args.subcommand
    try:
        if cmd == "solve":
            ch, sys_, err, cfg = _instance(opts, BETA_SWEEP_CHANNELS)
            res = sgp.optimize(ch, sys_, err, cfg)
            payload = {
                "c_sum": res.c_sum, "case": res.best_case.value,
                "p1": res.best_alloc.p1, "p2": res.best_alloc.p2,
                "pj": res.best_alloc.pj, "beta": res.best_alloc.beta,
                "iterations": res.iterations, "converged": res.converged,
            }
            text = json.dumps(payload, indent=1)
            if opts["out"]:
                with open(opts["out"], "w") as fh:
                    fh.write(text + "\n")
            print(text)
            return EXIT_OK

        if cmd == "verify":
            ch, sys_, err, cfg = _instance(opts, BETA_SWEEP_CHANNELS)
            res = sgp.optimize(ch, sys_, err, cfg)
            ref = oracle.grid_search(ch, sys_, err)
            gap = abs(res.c_sum - ref.c_sum)
            threshold = max(0.02 * ref.c_sum, 5e-3)
            print(f"sgp:    C_S = {res.c_sum:.6f}")
            print(f"oracle: C_S = {ref.c_sum:.6f}")
            print(f"gap = {gap:.6f} (threshold {threshold:.6f})")
            return EXIT_OK if gap <= threshold else EXIT_GAP

        kind = {"sweep-beta": PlanKind.BETA_SWEEP,
                "compare-alloc": PlanKind.ALLOC_COMPARE,
                "sweep-epsilon": PlanKind.EPSILON_SWEEP,
                "monte-carlo": PlanKind.MONTE_CARLO}[cmd]
        plan = _plan(kind, opts, args)
        runner = {PlanKind.BETA_SWEEP: experiments.run_beta_sweep,
                  PlanKind.ALLOC_COMPARE: experiments.run_alloc_compare,
                  PlanKind.EPSILON_SWEEP: experiments.run_epsilon_sweep,
                  PlanKind.MONTE_CARLO: experiments.run_monte_carlo}[kind]
        rows = runner(plan)
        _emit(rows, plan, opts)
        return EXIT_OK
    except ContractError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # solver or I/O failure
        print(f"solver failure: {exc}", file=_sys.stderr)
        return EXIT_SOLVER


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
