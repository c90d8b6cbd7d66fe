"""Command-line front end.

Subcommands::

    relaymimo sweep <config-file> [--workers W] [--out PATH]
    relaymimo asymptote <config-file | fig2..fig5> [--out PATH]
    relaymimo reproduce <fig2|fig3|fig4|fig5> [--trials T] [--seed S]
                        [--n N1,N2,...] [--workers W] [--out PATH]
    relaymimo check

Exit codes: 0 success, 1 property failure, 2 invalid input, 3 infeasible
computation. CSV goes to ``--out`` (or the config's ``output`` key, or
stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .asymptotics import UnsupportedCaseError, asym_report
from .config import (PRESETS, ConfigError, ExperimentConfig, load_config,
                     preset)
from .montecarlo import NonFiniteTrialError, sweep
from .relaying import ZFInfeasibleError
from .selfcheck import FAULTS, fig3_note, run_check

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3

SWEEP_HEADER = ("scheme,case,N,trials,sum_rate_mean,sum_rate_stderr,"
                "asymptote")
ASYMPTOTE_HEADER = "scheme,k,eta1,eta2,sinr,rate"


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.6g}"


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def sweep_csv(cfg: ExperimentConfig, workers: int = 1) -> str:
    result = sweep(cfg.sweep_spec(), workers=workers)
    buf = io.StringIO()
    if cfg.note:
        buf.write(f"# {cfg.note}\n")
    buf.write(SWEEP_HEADER + "\n")
    for row in result.rows:
        est = row.estimate
        buf.write(",".join([row.scheme.value, cfg.case, str(row.N),
                            str(est.trials), _fmt(est.mean),
                            _fmt(est.stderr), _fmt(row.asymptote)]) + "\n")
    return buf.getvalue()


def asymptote_csv(cfg: ExperimentConfig) -> str:
    case, profile, N0 = cfg.scaling_case(), cfg.profile(), cfg.N0.linear
    buf = io.StringIO()
    if cfg.note:
        buf.write(f"# {cfg.note}\n")
    buf.write(ASYMPTOTE_HEADER + "\n")
    for scheme in cfg.scheme_objs():
        rep = asym_report(scheme, case, profile, N0)
        for k, (s, r) in enumerate(zip(rep.per_user_sinr, rep.per_user_rate)):
            buf.write(f"{scheme.value},{k},{_fmt(profile.eta1[k])},"
                      f"{_fmt(profile.eta2[k])},{_fmt(s)},{_fmt(r)}\n")
        buf.write(f"{scheme.value},sum,,,,{_fmt(rep.sum_rate)}\n")
    return buf.getvalue()


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve(source: str) -> ExperimentConfig:
    if source in PRESETS and not os.path.exists(source):
        return preset(source)
    return load_config(source)


def run_sweep(cfg: ExperimentConfig, out: Optional[str] = None,
              workers: int = 1) -> int:
    try:
        text = sweep_csv(cfg, workers)
    except ZFInfeasibleError as exc:
        _err(f"error: infeasible: {exc}")
        return EXIT_INFEASIBLE
    except NonFiniteTrialError as exc:
        _err(f"error: non-finite SINR in {exc}")
        return EXIT_INFEASIBLE
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT
    _emit(text, out or cfg.output)
    return EXIT_OK


def run_asymptote(cfg: ExperimentConfig, out: Optional[str] = None) -> int:
    try:
        text = asymptote_csv(cfg)
    except UnsupportedCaseError as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT
    _emit(text, out or cfg.output)
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(f"{self.prog}: error: {message}")
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relaymimo", description=(
        "Multi-pair amplify-and-forward relaying with a large relay array: "
        "Monte Carlo sum rates and large-N limits."))
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("sweep", help="Monte Carlo sweep from a config file")
    p.add_argument("config")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("asymptote", help="closed-form large-N rates")
    p.add_argument("config", help="config file or preset name")
    p.add_argument("--out")

    p = sub.add_parser("reproduce", help="run a figure preset")
    p.add_argument("figure", choices=sorted(PRESETS))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=_int_list, help="override antenna counts")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("check", help="run the invariant self-check")
    p.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return run_sweep(load_config(args.config), args.out, args.workers)
        if args.command == "asymptote":
            return run_asymptote(_resolve(args.config), args.out)
        if args.command == "reproduce":
            overrides = {}
            if args.trials is not None:
                overrides["trials"] = args.trials
            if args.seed is not None:
                overrides["seed"] = args.seed
            if args.n is not None:
                overrides["n_values"] = args.n
            cfg = replace(preset(args.figure), **overrides)
            if args.figure == "fig3":
                _err(f"INFO {fig3_note()}")
            return run_sweep(cfg, args.out, args.workers)
        return run_check(args.inject_fault)
    except ConfigError as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT
    except ZFInfeasibleError as exc:
        _err(f"error: infeasible: {exc}")
        return EXIT_INFEASIBLE
    except OSError as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
