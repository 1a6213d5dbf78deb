"""Command-line front end.

Subcommands: ``lambda``, ``analyze``, ``simulate``, ``exact``, ``spacetime``.
Exit status is 0 on success, 2 on usage errors and 1 on runtime errors.
Data goes to stdout or ``--out`` files, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import digraph, experiments, render, theory
from .rule import RuleClass, parse_rule
from .tile import tile_metrics

log = logging.getLogger("periodic_ca")

_MODE_NAMES = {
    "min-temporal": "min_temporal",
    "min-spatial": "min_spatial",
    "existence": "existence",
    "poisson": "simple_count",
}


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _range(text: str) -> list[int]:
    """Inclusive ``a..b`` range of positive integers."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected a range a..b, got {text!r}")
    a, b = _positive(lo), _positive(hi)
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _write_atomic(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _parse_word(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    if "," in text or n > 10:
        values = [int(p) for p in text.split(",")]
    else:
        if not text.isdigit():
            raise ValueError(f"initial word {text!r} must be digits")
        values = [int(c) for c in text]
    if not values or any(not 0 <= v < n for v in values):
        raise ValueError(f"initial word {text!r} has states outside [0, {n - 1}]")
    return tuple(values)


# --------------------------------------------------------------------------


def cmd_lambda(args) -> int:
    taus = args.tau_range if args.tau_range else [args.tau]
    sigmas = args.sigma_range if args.sigma_range else [args.sigma]
    rows = theory.mean_table(taus, sigmas)
    if args.format == "csv":
        sys.stdout.write(theory.table_to_csv(rows))
    elif args.format == "json":
        sys.stdout.write(theory.table_to_json(rows))
    elif len(rows) == 1:
        print(rows[0]["value"])
    else:
        for r in rows:
            print(f"{r['tau']}\t{r['sigma']}\t{r['value']}\t{r['decimal']:.6f}")
    return 0


def _tile_report(tile) -> dict:
    s, p, lag = tile_metrics(tile)
    return {
        "tile": [list(r) for r in tile],
        "tau": len(tile),
        "sigma": len(tile[0]),
        "s": s,
        "p": p,
        "lag": lag,
        "simple": lag == 0,
    }


def cmd_analyze(args) -> int:
    rule = parse_rule(args.rule, args.n)
    report: dict = {"rule": args.rule, "n": args.n}
    if args.sigma is not None:
        tiles = sorted(digraph.ps_with_spatial_period(rule, args.sigma), key=lambda t: (len(t), t))
        if args.tau_max is not None:
            tiles = [t for t in tiles if len(t) <= args.tau_max]
        y = min((len(t) for t in tiles), default=None)
        report.update({"sigma": args.sigma, "min_temporal_period": y, "tiles": [_tile_report(t) for t in tiles]})
    else:
        rec = digraph.min_spatial_witness(rule, args.tau, args.sigma_max)
        report.update({"tau": args.tau, "sigma_max": args.sigma_max})
        if rec is None:
            report.update({"min_spatial_period": None, "cycle": None, "tiles": []})
        else:
            tiles = sorted(digraph.ps_from_label_cycles(rule, args.tau, rec.period))
            report.update(
                {
                    "min_spatial_period": rec.period,
                    "cycle": ["".join(map(str, w)) if args.n <= 10 else ",".join(map(str, w)) for w in rec.words],
                    "tiles": [_tile_report(t) for t in tiles],
                }
            )
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        if "sigma" in report:
            print(f"min temporal period: {report['min_temporal_period']}")
        else:
            print(f"min spatial period: {report['min_spatial_period']}")
            if report["cycle"]:
                print("cycle: " + " -> ".join(report["cycle"] + report["cycle"][:1]))
        for t in report["tiles"]:
            rows = "/".join("".join(map(str, r)) for r in t["tile"])
            print(f"{rows}\ttau={t['tau']} sigma={t['sigma']} s={t['s']} p={t['p']} lag={t['lag']}")
    return 0


def cmd_simulate(args) -> int:
    mode = _MODE_NAMES[args.mode]
    rule_class = RuleClass(args.rule_class, args.alpha, args.beta)
    config = experiments.ExperimentConfig(
        n=args.n,
        mode=mode,
        samples=args.samples,
        master_seed=args.seed,
        sigma=args.sigma,
        tau=args.tau,
        sigma_max=args.sigma_max,
        y_max=args.y_max,
        rule_class=rule_class,
        workers=args.workers or experiments.default_workers(),
    )
    result = experiments.run(config)
    out = Path(args.out)
    outputs = [(out, experiments.summary_json(result))]
    if args.per_sample:
        outputs.append((Path(args.per_sample), experiments.per_sample_csv(result)))
    if args.svg:
        outputs.append((Path(args.svg), experiments.svg_chart(result)))
    for path, data in outputs:
        _write_atomic(path, data)
    dev = result.deviations
    headline = f"tv={dev['tv']:.4f}" if dev.get("tv") is not None else f"max_abs_dev={dev['max_abs_cdf']:.4f}"
    print(f"{out}\t{headline}")
    log.info("runtime %.2fs", result.runtime)
    return 0


def cmd_exact(args) -> int:
    value = experiments.exhaustive_existence(args.n, args.tau, args.sigma)
    print(f"{value}\t{float(value):.6f}")
    return 0


def cmd_spacetime(args) -> int:
    rule = parse_rule(args.rule, args.n)
    init = _parse_word(args.init, args.n)
    fmt = args.format or Path(args.out).suffix.lstrip(".").lower()
    if fmt not in ("ppm", "svg"):
        raise ValueError(f"cannot infer image format from {args.out!r}; use --format ppm|svg")
    grid = render.spacetime(rule, init, args.steps, args.repeat_width)
    data = render.to_ppm(grid, rule.n, args.scale) if fmt == "ppm" else render.to_svg(grid, rule.n, args.scale)
    _write_atomic(Path(args.out), data)
    print(args.out)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="periodic-ca", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="limit mean number of simple solutions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tau", type=_positive)
    g.add_argument("--tau-range", type=_range, metavar="A..B")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sigma", type=_positive)
    g.add_argument("--sigma-range", type=_range, metavar="A..B")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("analyze", help="periodic solutions of one rule")
    p.add_argument("--rule", required=True)
    p.add_argument("--n", type=_positive, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sigma", type=_positive, help="fixed spatial period")
    g.add_argument("--tau", type=_positive, help="fixed temporal period")
    p.add_argument("--tau-max", type=_positive, help="only list tiles with temporal period <= this")
    p.add_argument("--sigma-max", type=_positive, default=6)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="Monte Carlo over random rules")
    p.add_argument("--mode", choices=tuple(_MODE_NAMES), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--sigma", type=_positive)
    p.add_argument("--tau", type=_positive)
    p.add_argument("--sigma-max", type=_positive, default=6)
    p.add_argument("--y-max", type=_positive, default=10)
    p.add_argument("--samples", type=_positive, default=10_000)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--workers", type=_positive, default=None, help="default: $CA_PS_WORKERS or CPU count")
    p.add_argument("--rule-class", choices=("uniform", "left_permutative", "additive"), default="uniform")
    p.add_argument("--alpha", type=_nonnegative)
    p.add_argument("--beta", type=_nonnegative)
    p.add_argument("--out", default="summary.json", help="JSON summary path")
    p.add_argument("--per-sample", metavar="CSV", help="also write per-sample rows here")
    p.add_argument("--svg", metavar="SVG", help="also write a bar chart here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("exact", help="exact existence probability by exhaustive scan (n <= 3)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--tau", type=_positive, required=True)
    p.add_argument("--sigma", type=_positive, required=True)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("spacetime", help="render a space-time picture")
    p.add_argument("--rule", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--init", required=True)
    p.add_argument("--steps", type=_nonnegative, default=16)
    p.add_argument("--repeat-width", type=_positive, default=4)
    p.add_argument("--scale", type=_positive, default=8)
    p.add_argument("--format", choices=("ppm", "svg"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spacetime)
    return parser


def _check_usage(parser, args) -> None:
    if args.command == "simulate":
        mode = _MODE_NAMES[args.mode]
        if mode in ("existence", "min_temporal", "simple_count") and args.sigma is None:
            parser.error(f"--mode {args.mode} requires --sigma")
        if mode in ("existence", "min_spatial", "simple_count") and args.tau is None:
            parser.error(f"--mode {args.mode} requires --tau")
        if args.rule_class != "additive" and (args.alpha is not None or args.beta is not None):
            parser.error("--alpha/--beta only apply to --rule-class additive")
    if args.command == "analyze" and args.sigma is None and args.tau_max is not None:
        parser.error("--tau-max applies to --sigma analysis")
    if args.command == "exact" and args.n > 3:
        parser.error("exact supports n <= 3")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_usage(parser, args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, OverflowError, RuntimeError, OSError) as exc:
        print(f"periodic-ca: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
