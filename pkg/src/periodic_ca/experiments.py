"""Seeded Monte Carlo over random rules, exhaustive oracles, and result writers.

Sample ``i`` of an experiment draws its rule from a generator seeded with
``derive_seed(master_seed, i)``::

    derive_seed(m, i) = splitmix64(splitmix64(m) ^ i)

where ``splitmix64`` is the standard SplitMix64 output function (golden-gamma
increment followed by the 30/27/31 xor-shift-multiply finalizer).  The
finalizer is a bijection on 64-bit words, so distinct indices get distinct
seeds, and every sample can be computed independently of the others.
Per-sample observations are stored by index, which makes results identical
for any worker count.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from . import digraph, theory
from .rule import UNIFORM, Rule, RuleClass, sample_rule
from .tile import canonical_tile, is_simple

__all__ = [
    "MODES",
    "ExperimentConfig",
    "ExperimentResult",
    "splitmix64",
    "derive_seed",
    "sample_stream",
    "observe",
    "run",
    "run_min_temporal",
    "run_min_spatial",
    "run_existence",
    "run_simple_count_distribution",
    "exhaustive_existence",
    "wilson_interval",
    "tv_distance",
    "summary_json",
    "per_sample_csv",
    "svg_chart",
]

log = logging.getLogger(__name__)

MODES = ("existence", "min_temporal", "min_spatial", "simple_count")
_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    return splitmix64(splitmix64(master_seed & _MASK) ^ (index & _MASK))


def sample_stream(master_seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master_seed, index)))


@dataclass(frozen=True)
class ExperimentConfig:
    """What to sample and measure.

    ``sigma`` is required for existence, min_temporal and simple_count;
    ``tau`` for existence, min_spatial and simple_count.  ``y_max`` is the
    largest period at which the empirical CDF is compared with the limit.
    """

    n: int
    mode: str
    samples: int = 10_000
    master_seed: int = 0
    sigma: Optional[int] = None
    tau: Optional[int] = None
    sigma_max: int = 6
    y_max: int = 10
    rule_class: RuleClass = UNIFORM
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        needs_sigma = self.mode in ("existence", "min_temporal", "simple_count")
        needs_tau = self.mode in ("existence", "min_spatial", "simple_count")
        if needs_sigma and (self.sigma is None or self.sigma < 1):
            raise ValueError(f"mode {self.mode} needs a positive sigma")
        if needs_tau and (self.tau is None or self.tau < 1):
            raise ValueError(f"mode {self.mode} needs a positive tau")
        if self.sigma_max < 1 or self.y_max < 1:
            raise ValueError("bounds must be positive")

    def echo(self) -> dict:
        """Config as plain data; the worker count is left out since it never affects results."""
        d = asdict(self)
        d.pop("workers")
        d["rule_class"] = {k: v for k, v in asdict(self.rule_class).items() if v is not None}
        return d


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    seeds: list[int]
    values: list[Optional[int]]
    histogram: list[dict]
    estimates: dict
    theory: dict
    deviations: dict
    runtime: float = field(default=0.0, compare=False)

    @property
    def counts(self) -> dict:
        return {h["value"]: h["count"] for h in self.histogram}


# --------------------------------------------------------------------------
# statistics helpers


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval (95% by default)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def tv_distance(hist, lam: float) -> float:
    """Total variation distance between an empirical count histogram and Poisson(lam).

    ``hist`` is a sequence of counts indexed by value, or a ``{value: count}``
    mapping over nonnegative integers.  Poisson mass above the largest
    histogram value is one extra bucket with no empirical mass.
    """
    if isinstance(hist, dict):
        top = max(hist) if hist else 0
        counts = np.zeros(top + 1)
        for k, c in hist.items():
            counts[int(k)] = c
    else:
        counts = np.asarray(hist, dtype=float)
    total = counts.sum()
    if total <= 0:
        raise ValueError("empty histogram")
    emp = counts / total
    ks = np.arange(emp.size)
    pmf = stats.poisson.pmf(ks, lam)
    tail = stats.poisson.sf(emp.size - 1, lam)
    return 0.5 * (float(np.abs(emp - pmf).sum()) + float(tail))


# --------------------------------------------------------------------------
# per-sample observation


def _simple_count(rule: Rule, tau: int, sigma: int) -> int:
    starts, lengths, periods = digraph.cycle_summary(rule, sigma)
    tiles = set()
    for start, length, period in zip(starts.tolist(), lengths.tolist(), periods.tolist()):
        if length != tau or period != sigma:
            continue
        rows = digraph._walk_cycle(rule, digraph.decode_word(start, rule.n, sigma))
        if is_simple(rows):
            tiles.add(canonical_tile(rows))
    return len(tiles)


def observe(config: ExperimentConfig, rule: Rule) -> Optional[int]:
    """The quantity ``config.mode`` measures on one rule."""
    if config.mode == "min_temporal":
        return digraph.min_temporal_period(rule, config.sigma)
    if config.mode == "existence":
        return int(digraph.existence(rule, config.tau, config.sigma))
    if config.mode == "min_spatial":
        return digraph.min_spatial_period(rule, config.tau, config.sigma_max)
    return _simple_count(rule, config.tau, config.sigma)


def _run_chunk(config: ExperimentConfig, lo: int, hi: int) -> tuple[list[int], list[Optional[int]]]:
    seeds, values = [], []
    for i in range(lo, hi):
        seed = derive_seed(config.master_seed, i)
        rng = np.random.Generator(np.random.PCG64(seed))
        rule = sample_rule(config.n, config.rule_class, rng)
        try:
            values.append(observe(config, rule))
        except Exception as exc:
            raise RuntimeError(f"sample {i} (seed {seed}) failed: {exc}") from exc
        seeds.append(seed)
    return seeds, values


def _map_samples(config: ExperimentConfig) -> tuple[list[int], list[Optional[int]]]:
    m = config.samples
    if config.workers == 1 or m < 2:
        return _run_chunk(config, 0, m)
    n_chunks = min(m, config.workers * 4)
    bounds = [m * k // n_chunks for k in range(n_chunks + 1)]
    seeds: list[int] = []
    values: list[Optional[int]] = []
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = [pool.submit(_run_chunk, config, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
        for fut in futures:  # index order; merge is a concatenation
            s, v = fut.result()
            seeds.extend(s)
            values.extend(v)
    return seeds, values


# --------------------------------------------------------------------------
# aggregation


def _histogram(values: Sequence[Optional[int]], with_none: bool) -> list[dict]:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    hist = [{"value": k, "count": counts[k]} for k in sorted(k for k in counts if k is not None)]
    if with_none:
        hist.append({"value": "none", "count": counts.get(None, 0)})
    return hist


def _cdf_block(values: Sequence[Optional[int]], y_max: int, limit_cdf) -> tuple[list, list, float]:
    m = len(values)
    arr = np.array([np.iinfo(np.int64).max if v is None else v for v in values], dtype=np.int64)
    emp_rows, theo_rows, worst = [], [], 0.0
    for y in range(1, y_max + 1):
        k = int(np.count_nonzero(arr <= y))
        p = k / m
        lo, hi = wilson_interval(k, m)
        emp_rows.append({"y": y, "p": p, "se": math.sqrt(p * (1 - p) / m), "lo": lo, "hi": hi})
        q = limit_cdf(y)
        theo_rows.append({"y": y, "p": q})
        worst = max(worst, abs(p - q))
    return emp_rows, theo_rows, worst


def _aggregate_min_period(config, seeds, values, fixed: int) -> ExperimentResult:
    cdf = lambda y: theory.limit_cdf_min_temporal(fixed, y)  # symmetric in (tau, sigma)
    emp, theo, worst = _cdf_block(values, config.y_max, cdf)
    m = len(values)
    none = sum(v is None for v in values)
    return ExperimentResult(
        config=config,
        seeds=seeds,
        values=values,
        histogram=_histogram(values, with_none=True),
        estimates={"cdf": emp, "none_fraction": none / m},
        theory={"cdf": theo, "pmf": [{"y": r["y"], "p": theory.limit_pmf_min_temporal(fixed, r["y"])} for r in theo]},
        deviations={"max_abs_cdf": worst, "tv": None},
    )


def _aggregate_existence(config, seeds, values) -> ExperimentResult:
    m = len(values)
    k = sum(values)
    p = k / m
    lo, hi = wilson_interval(k, m)
    limit = theory.limit_existence_prob(config.tau, config.sigma)
    return ExperimentResult(
        config=config,
        seeds=seeds,
        values=values,
        histogram=_histogram(values, with_none=False),
        estimates={"p": p, "se": math.sqrt(p * (1 - p) / m), "wilson": [lo, hi]},
        theory={
            "limit": limit,
            "limit_mean": str(theory.limit_mean(config.tau, config.sigma)),
        },
        deviations={"max_abs_cdf": abs(p - limit), "tv": None},
    )


def _aggregate_simple_count(config, seeds, values) -> ExperimentResult:
    m = len(values)
    lam_n = theory.finite_n_mean(config.n, config.tau, config.sigma)
    hist = _histogram(values, with_none=False)
    counts = {h["value"]: h["count"] for h in hist}
    top = max(counts)
    emp_pmf = [counts.get(k, 0) / m for k in range(top + 1)]
    poisson_pmf = stats.poisson.pmf(np.arange(top + 1), float(lam_n)).tolist()
    emp_cdf = np.cumsum(emp_pmf)
    poi_cdf = stats.poisson.cdf(np.arange(top + 1), float(lam_n))
    tv = tv_distance(counts, float(lam_n)) if float(lam_n) > 0 else None
    mean = sum(values) / m
    return ExperimentResult(
        config=config,
        seeds=seeds,
        values=values,
        histogram=hist,
        estimates={"mean": mean, "se": float(np.std(values) / math.sqrt(m)), "pmf": emp_pmf},
        theory={
            "finite_n_mean": str(lam_n),
            "finite_n_mean_decimal": float(lam_n),
            "limit_mean": str(theory.limit_mean(config.tau, config.sigma)),
            "poisson_pmf": poisson_pmf,
        },
        deviations={"max_abs_cdf": float(np.max(np.abs(emp_cdf - poi_cdf))), "tv": tv},
    )


def run(config: ExperimentConfig) -> ExperimentResult:
    start = time.perf_counter()
    seeds, values = _map_samples(config)
    if config.mode == "min_temporal":
        result = _aggregate_min_period(config, seeds, values, config.sigma)
    elif config.mode == "min_spatial":
        result = _aggregate_min_period(config, seeds, values, config.tau)
    elif config.mode == "existence":
        result = _aggregate_existence(config, seeds, values)
    else:
        result = _aggregate_simple_count(config, seeds, values)
    result.runtime = time.perf_counter() - start
    log.info("%s n=%d samples=%d done in %.2fs", config.mode, config.n, config.samples, result.runtime)
    return result


def run_min_temporal(config: ExperimentConfig) -> ExperimentResult:
    return run(_with_mode(config, "min_temporal"))


def run_min_spatial(config: ExperimentConfig) -> ExperimentResult:
    return run(_with_mode(config, "min_spatial"))


def run_existence(config: ExperimentConfig) -> ExperimentResult:
    return run(_with_mode(config, "existence"))


def run_simple_count_distribution(config: ExperimentConfig) -> ExperimentResult:
    return run(_with_mode(config, "simple_count"))


def _with_mode(config: ExperimentConfig, mode: str) -> ExperimentConfig:
    if config.mode == mode:
        return config
    return ExperimentConfig(**{**{f: getattr(config, f) for f in config.__dataclass_fields__}, "mode": mode})


# --------------------------------------------------------------------------
# exhaustive oracle


def exhaustive_existence(n: int, tau: int, sigma: int) -> Fraction:
    """Exact fraction of all ``n**(n*n)`` rules with a solution of periods ``(tau, sigma)``."""
    total = n ** (n * n)
    if n < 1 or total > 2 * 10**7:
        raise ValueError(f"exhaustive scan over {n}**{n * n} rules is too large")
    hits = 0
    for table in itertools.product(range(n), repeat=n * n):
        if digraph.existence(Rule(n, table), tau, sigma):
            hits += 1
    return Fraction(hits, total)


# --------------------------------------------------------------------------
# writers


def summary_dict(result: ExperimentResult) -> dict:
    return {
        "config": result.config.echo(),
        "histogram": result.histogram,
        "estimates": result.estimates,
        "theory": result.theory,
        "deviations": result.deviations,
    }


def summary_json(result: ExperimentResult) -> str:
    return json.dumps(summary_dict(result), indent=2, sort_keys=False) + "\n"


def per_sample_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["sample_index", "seed", "value"])
    for i, (seed, value) in enumerate(zip(result.seeds, result.values)):
        writer.writerow([i, seed, "none" if value is None else value])
    return buf.getvalue()


def _chart_series(result: ExperimentResult) -> tuple[list[str], list[float], list[Optional[float]], str]:
    cfg = result.config
    m = cfg.samples
    counts = result.counts
    if cfg.mode in ("min_temporal", "min_spatial"):
        fixed = cfg.sigma if cfg.mode == "min_temporal" else cfg.tau
        top = max([k for k in counts if k != "none"] + [cfg.y_max])
        labels = [str(y) for y in range(1, top + 1)] + ["none"]
        emp = [counts.get(y, 0) / m for y in range(1, top + 1)] + [counts.get("none", 0) / m]
        theo = [theory.limit_pmf_min_temporal(fixed, y) for y in range(1, top + 1)] + [None]
        name = "smallest temporal period" if cfg.mode == "min_temporal" else "smallest spatial period"
        return labels, emp, theo, name
    if cfg.mode == "existence":
        limit = result.theory["limit"]
        return ["0", "1"], [counts.get(0, 0) / m, counts.get(1, 0) / m], [1 - limit, limit], "solution exists"
    top = max(counts)
    return (
        [str(k) for k in range(top + 1)],
        result.estimates["pmf"],
        result.theory["poisson_pmf"],
        "number of simple solutions",
    )


def svg_chart(result: ExperimentResult) -> str:
    """Bar chart of the empirical distribution with the reference pmf as markers."""
    labels, emp, theo, xlabel = _chart_series(result)
    width, height = 640, 360
    left, right, top, bottom = 56, 16, 28, 48
    plot_w, plot_h = width - left - right, height - top - bottom
    ymax = max([e for e in emp] + [t for t in theo if t is not None] + [1e-9])
    ymax = math.ceil(ymax * 10) / 10
    slot = plot_w / len(labels)

    def y_of(p: float) -> float:
        return top + plot_h * (1 - p / ymax)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    cfg = result.config
    title = f"{cfg.mode} n={cfg.n}"
    if cfg.sigma is not None:
        title += f" sigma={cfg.sigma}"
    if cfg.tau is not None:
        title += f" tau={cfg.tau}"
    title += f" samples={cfg.samples} seed={cfg.master_seed}"
    out.append(f'<text x="{left}" y="18">{title}</text>')
    out.append(f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>')
    for k in range(0, 6):
        p = ymax * k / 5
        yy = y_of(p)
        out.append(f'<text x="{left - 6}" y="{yy + 4:.2f}" text-anchor="end">{p:.2f}</text>')
    for i, (lab, e) in enumerate(zip(labels, emp)):
        x = left + i * slot
        out.append(
            f'<rect x="{x + slot * 0.15:.2f}" y="{y_of(e):.2f}" width="{slot * 0.7:.2f}" '
            f'height="{top + plot_h - y_of(e):.2f}" fill="#8da0cb"/>'
        )
        out.append(f'<text x="{x + slot / 2:.2f}" y="{top + plot_h + 14}" text-anchor="middle">{lab}</text>')
    points = [
        (left + i * slot + slot / 2, y_of(t)) for i, t in enumerate(theo) if t is not None
    ]
    if points:
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        out.append(f'<polyline points="{path}" fill="none" stroke="#d95f02" stroke-width="1.5"/>')
        for x, y in points:
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#d95f02"/>')
    out.append(f'<text x="{left + plot_w / 2:.2f}" y="{height - 10}" text-anchor="middle">{xlabel}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def default_workers() -> int:
    env = os.environ.get("CA_PS_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
