"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .config import SweepConfig, default_config, load_config, with_overrides
from .errors import ConfigError, DomainError, NumericalError
from .sweep import run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SUBCOMMANDS = {
    "resonant": "bare-converter efficiency and capacity versus cooperativity",
    "grid": "capacity over the (G, G') plane",
    "slice": "capacity along G' at fixed G, or along G at fixed G'",
    "bandwidth": "capacity spectra of bare and assisted converters",
    "boundary": "Q_LB > 0 boundary in G' for each G",
    "oracle-check": "analytic vs numerical pipelines on random draws",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eotransducer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="INI-style sweep configuration")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--temp", type=float, help="bath temperature in K")
        p.add_argument("--zeta-m", type=float, help="microwave coupling ratio")
        p.add_argument("--zeta-a", type=float, help="optical coupling ratio")
        p.add_argument("--eta", type=float, help="fix the bare resonant efficiency")
        p.add_argument("--g-db", type=float, help="squeezer strength in dB (slice, bandwidth)")
        p.add_argument("--gprime", type=float, help="anti-squeezer gain (slice, bandwidth)")
        p.add_argument("--rdp-tol", type=float, help="|tau - 1| below which the channel is RDP")
        p.add_argument("--thermal-probe", action="store_true", default=None,
                       help="thermalise probe and ancilla with the microwave bath")
        p.add_argument("--oracle", action="store_true", default=None,
                       help="cross-validate every row against the numerical oracle")
        if name == "oracle-check":
            p.add_argument("--draws", type=int)
            p.add_argument("--seed", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    mode = args.command
    cfg = load_config(args.config, mode=mode) if args.config else default_config(mode)
    overrides = dict(
        eta=args.eta, zeta_m=args.zeta_m, zeta_a=args.zeta_a, temperature=args.temp,
        rdp_tol=args.rdp_tol, thermal_probe=args.thermal_probe, oracle=args.oracle, out=args.out,
    )
    if mode == "slice":
        if args.g_db is not None or args.gprime is not None:
            # command-line choice of the fixed squeezer replaces the config's
            cfg = replace(cfg, slice_G_db=args.g_db, slice_G_prime=args.gprime)
        elif cfg.slice_G_db is None and cfg.slice_G_prime is None:
            cfg = replace(cfg, slice_G_db=20.0)
    elif mode == "bandwidth":
        overrides.update(bandwidth_G_db=args.g_db, bandwidth_G_prime=args.gprime)
    elif mode == "oracle-check":
        overrides.update(draws=args.draws, seed=args.seed)
    return with_overrides(cfg, **overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        table = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = table.to_csv()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.mode == "oracle-check" and not all(r["pass"] for r in table.rows):
        print("oracle-check: analytic and numerical pipelines disagree", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
