"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 computation error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from ..errors import ConfigError, PowerFreeError
from ..exact import count_power_free, format_occupancy
from ..saddle import asymptotic_count, log_asymptotic, solve_beta
from ..semigroup import SemigroupParams
from ..zeta import log_zeta
from .config import RunConfig, fig1_config, ksweep_config, load_config, parse_grid, parse_k_set
from .output import emit_csv, emit_json, emit_plot, rows_to_csv, rows_to_json
from .sweep import build_model, run_sweep

log = logging.getLogger("powerfree")

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2


def _common(p):
    p.add_argument("--config", help="key = value run configuration file")
    p.add_argument("--rho", help="prime-count prefactor (comma list for sweeps)")
    p.add_argument("--k", help="occupancy bound: integer >= 2 or 'inf' (list or a:b for sweeps)")
    p.add_argument("--x", help="degree budget (comma list for sweeps)")
    p.add_argument("--x-grid", dest="x_grid", help="a:b:step grid of x values")
    p.add_argument("--tol", type=float)
    p.add_argument("--max-primes", dest="max_primes", type=int)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--plot", help="SVG path stem for the comparison panels")
    p.add_argument("--threads", type=int)
    p.add_argument("--kind", choices=("log", "explicit"))
    p.add_argument("--degrees", help="explicit prime degrees, comma separated")
    p.add_argument("--gamma", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerfree",
        description="Exact and asymptotic counts of k-th power-free elements.",
        epilog=(
            "Degrees equal to x are counted (<= x) using exact floating-point "
            "comparison. For the log model such ties only happen for a measure-zero "
            "set of x; use `exact --slack` to probe sensitivity."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("exact", "exact count N_k(x)"),
        ("zeta", "ln zeta_k(sigma) and its derivatives"),
        ("beta", "saddle point beta(x)"),
        ("asymptotic", "saddle-point estimate of N_k(x)"),
        ("entropy", "logarithmic asymptotics of N(x)"),
        ("sweep", "grid sweep of exact vs asymptotic counts"),
        ("fig1", "preset sweep: rho in {0.5,1,2}, k in {2,inf}, x = 1..7"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if name == "zeta":
            p.add_argument("--sigma", type=float, required=True)
        if name == "exact":
            p.add_argument("--slack", type=float, default=0.0)
    return parser


def resolve_config(args, base: RunConfig) -> RunConfig:
    cfg = base
    if args.config:
        cfg = load_config(args.config, cfg)
    try:
        overrides = dict(
            kind=args.kind,
            rho_values=tuple(float(r) for r in args.rho.split(",")) if args.rho else None,
            gamma=args.gamma,
            delta=args.delta,
            degrees=parse_grid(args.degrees) if args.degrees else None,
            k_set=parse_k_set(args.k) if args.k else None,
            x_grid=parse_grid(args.x_grid) if args.x_grid else (
                parse_grid(args.x) if args.x else None),
            tol=args.tol,
            max_primes=args.max_primes,
            out=args.out,
            format=args.format,
            plot=args.plot,
            threads=args.threads,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg.update(**overrides)


def _single(cfg: RunConfig, need_x=True):
    if len(cfg.rho_values) != 1 or len(cfg.k_set) != 1:
        raise ConfigError("this command takes a single rho and k")
    if need_x and len(cfg.x_grid) != 1:
        raise ConfigError("this command takes a single x")
    try:
        model = build_model(cfg, cfg.rho_values[0])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return model, cfg.k_set[0], (cfg.x_grid[0] if cfg.x_grid else None)


def _emit_record(cfg: RunConfig, record: dict) -> None:
    if cfg.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        keys = list(record)
        text = ",".join(keys) + "\n" + ",".join(
            "" if record[k] is None else (repr(record[k]) if isinstance(record[k], float) else str(record[k]))
            for k in keys
        ) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(cfg: RunConfig, rows) -> None:
    if cfg.out:
        (emit_json if cfg.format == "json" else emit_csv)(rows, cfg.out)
    else:
        sys.stdout.write(rows_to_json(rows) if cfg.format == "json" else rows_to_csv(rows))


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cmd = args.command
    try:
        base = fig1_config() if cmd == "fig1" else RunConfig()
        cfg = resolve_config(args, base)
        if cmd in ("sweep", "fig1"):
            cfg.validate()
        elif cmd != "entropy":
            if cmd != "zeta":
                cfg.validate()
            elif not cfg.k_set or not cfg.rho_values:
                raise ConfigError("zeta needs rho and k")
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if cmd == "exact":
            model, k, x = _single(cfg)
            res = count_power_free(model, k, x, slack=args.slack)
            _emit_record(cfg, dict(rho=model.rho, k=format_occupancy(k), x=x, **asdict(res)))
        elif cmd == "zeta":
            model, k, _ = _single(cfg, need_x=False)
            z = log_zeta(model, k, args.sigma, cfg.tol, cfg.max_primes)
            _emit_record(cfg, dict(rho=model.rho, k=format_occupancy(k), **asdict(z)))
        elif cmd == "beta":
            model, k, x = _single(cfg)
            sp = solve_beta(model, k, x, cfg.tol, cfg.max_primes)
            _emit_record(cfg, dict(rho=model.rho, k=format_occupancy(k), x=x, beta=sp.beta,
                                   residual=sp.residual, log_estimate=sp.log_estimate,
                                   kappa_sup=sp.kappa_sup))
        elif cmd == "asymptotic":
            model, k, x = _single(cfg)
            est = asymptotic_count(model, k, x, cfg.tol, cfg.max_primes)
            _emit_record(cfg, dict(rho=model.rho, k=format_occupancy(k), x=x,
                                   log_value=est.log_value,
                                   linear_value=est.linear_value if not est.overflowed else "overflow",
                                   beta=est.saddle.beta))
        elif cmd == "entropy":
            if len(cfg.rho_values) != 1 or len(cfg.x_grid) != 1:
                raise ConfigError("entropy takes a single rho and x")
            try:
                params = SemigroupParams(cfg.rho_values[0], cfg.gamma, cfg.delta)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            est = log_asymptotic(params, cfg.x_grid[0])
            _emit_record(cfg, dict(rho=params.rho, gamma=params.gamma, delta=params.delta,
                                   x=est.x, leading=est.leading,
                                   log_correction=est.log_correction,
                                   remainder=str(est.remainder_class)))
        else:
            rows = run_sweep(cfg)
            _emit_rows(cfg, rows)
            if cfg.plot:
                plot_rows = list(rows)
                if cmd == "fig1":
                    extra = ksweep_config().update(tol=cfg.tol, max_primes=cfg.max_primes,
                                                   threads=cfg.threads)
                    plot_rows += run_sweep(extra)
                for path in emit_plot(plot_rows, cfg.plot):
                    log.info("wrote %s", path)
            bad = [r for r in rows if r.status != "ok"]
            for r in bad:
                log.warning("cell rho=%g k=%s x=%g: %s", r.rho, format_occupancy(r.k), r.x, r.status)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PowerFreeError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
