"""Command-line entry points for the reproduction runs."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness
from .config import RunConfig, SweepSpec, apply_overrides, parse_config, serialize_config

_TABLE_VALUES = (0.01, 0.1, 1.0)


def _load_config(args) -> RunConfig:
    if args.config:
        with open(args.config) as fh:
            config = parse_config(fh.read())
    else:
        config = RunConfig()
    if args.set:
        config = apply_overrides(config, args.set)
    return config


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="path to a key = value config file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override one config key (repeatable)")
    p.add_argument("--out", help="output directory (default from config)")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="morsedeph",
        description="Pure-dephasing dynamics of a Morse oscillator in an Ohmic bath",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="dump bound-state energy levels")
    p.add_argument("--kind", choices=("morse", "harmonic"), default="morse")
    _add_common(p)

    p = sub.add_parser("kernels", help="dump the eta/gamma kernel table")
    _add_common(p)

    p = sub.add_parser("measures", help="survival/purity/entropy/coherence series")
    p.add_argument("--kind", choices=("morse", "harmonic"), default="morse")
    _add_common(p)

    p = sub.add_parser("elements", help="decay of the density-matrix elements rho_m1")
    p.add_argument("--kind", choices=("morse", "harmonic"), default="morse")
    _add_common(p)

    p = sub.add_parser("tau", help="decoherence-time tables (kT and coupling sweeps)")
    p.add_argument("--sweep", choices=("kT", "coupling", "both"), default="both")
    p.add_argument("--values", help="comma-separated sweep values (default 0.01,0.1,1.0)")
    _add_common(p)

    p = sub.add_parser("wavefunction", help="position density of the initial state")
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.add_argument("--xcount", type=int, default=2201)
    _add_common(p)

    p = sub.add_parser("compare", help="Morse vs harmonic measures side by side")
    _add_common(p)

    p = sub.add_parser("config", help="print the effective configuration")
    _add_common(p)

    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        return _dispatch(args, config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, config: RunConfig) -> int:
    out = args.out
    if args.command == "spectrum":
        path = harness.run_spectrum(config, args.kind, out)
        print(path)
    elif args.command == "kernels":
        path = harness.run_kernels(config, out)
        print(path)
    elif args.command == "measures":
        _, mpath, epath = harness.run_measures(config, args.kind, out)
        print(mpath)
        print(epath)
    elif args.command == "elements":
        _, _, epath = harness.run_measures(config, args.kind, out)
        print(epath)
    elif args.command == "tau":
        values = tuple(float(v) for v in args.values.split(",")) if args.values else _TABLE_VALUES
        sweeps = []
        if args.sweep in ("kT", "both"):
            sweeps.append(SweepSpec(parameter="kT", values=values, base=config))
        if args.sweep in ("coupling", "both"):
            sweeps.append(SweepSpec(parameter="coupling", values=values, base=config))
        for sweep in sweeps:
            rows, csv_path, txt_path = harness.run_tau_sweep(sweep, out)
            print(csv_path)
            print(txt_path)
            for r in rows:
                conv = "" if (r.converged_morse and r.converged_harmonic) else "  [not converged]"
                print(f"  {sweep.parameter}={r.value:<8g} morse={r.tau_morse:<12.6g} "
                      f"harmonic={r.tau_harmonic:<12.6g}{conv}")
    elif args.command == "wavefunction":
        x = None
        if args.xmin is not None and args.xmax is not None:
            x = np.linspace(args.xmin, args.xmax, args.xcount)
        path = harness.run_wavefunction(config, x, out)
        print(path)
    elif args.command == "compare":
        path = harness.run_compare(config, out)
        print(path)
    elif args.command == "config":
        sys.stdout.write(serialize_config(config))
    return 0


if __name__ == "__main__":
    sys.exit(main())
