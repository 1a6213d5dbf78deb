"""Limit laws for the number of periodic solutions of a random rule.

Everything is exact (``fractions.Fraction`` / Python ints) until the final
``1 - exp(-mean)`` step.  The brute-force census enumerates every
``tau x sigma`` matrix and is meant as an oracle for the closed forms.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .tile import canonical_tile, is_valid_tile, tile_metrics

__all__ = [
    "PeriodSet",
    "divisors",
    "euler_phi",
    "limit_mean",
    "limit_mean_set",
    "limit_mean_piecewise",
    "limit_existence_prob",
    "limit_existence_prob_set",
    "limit_cdf_min_temporal",
    "limit_pmf_min_temporal",
    "simple_sizes",
    "simple_tile_count",
    "finite_n_mean",
    "brute_force_tile_census",
    "CENSUS_LIMIT",
    "mean_table",
    "table_to_csv",
    "table_to_json",
]

CENSUS_LIMIT = 10**8


@dataclass(frozen=True)
class PeriodSet:
    """A finite product set of temporal periods x spatial periods."""

    taus: frozenset[int]
    sigmas: frozenset[int]

    def __init__(self, taus: Iterable[int], sigmas: Iterable[int]):
        taus, sigmas = frozenset(int(t) for t in taus), frozenset(int(s) for s in sigmas)
        if not taus or not sigmas:
            raise ValueError("period sets must be nonempty")
        if min(taus) < 1 or min(sigmas) < 1:
            raise ValueError("periods must be positive")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "sigmas", sigmas)


def divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def euler_phi(d: int) -> int:
    """Euler's totient by trial factorization."""
    if d < 1:
        raise ValueError("euler_phi needs d >= 1")
    result, m, p = d, d, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _check_periods(tau: int, sigma: int) -> None:
    if tau < 1 or sigma < 1:
        raise ValueError(f"periods must be positive, got tau={tau}, sigma={sigma}")


def limit_mean(tau: int, sigma: int) -> Fraction:
    """Limiting mean number of simple solutions with periods ``(tau, sigma)``.

    ``(1 / (tau*sigma)) * sum_{d | gcd(tau, sigma)} phi(d) * d``
    """
    _check_periods(tau, sigma)
    g = math.gcd(tau, sigma)
    return Fraction(sum(euler_phi(d) * d for d in divisors(g)), tau * sigma)


def limit_mean_set(periods: PeriodSet) -> Fraction:
    return sum((limit_mean(t, s) for t in periods.taus for s in periods.sigmas), Fraction(0))


def limit_mean_piecewise(sigma: int, tau: int) -> Fraction:
    """Closed forms of :func:`limit_mean` for ``sigma`` in 1..4, by residue of ``tau``."""
    if tau < 1:
        raise ValueError("tau must be positive")
    if sigma == 1:
        return Fraction(1, tau)
    if sigma == 2:
        return Fraction(3 if tau % 2 == 0 else 1, 2 * tau)
    if sigma == 3:
        return Fraction(7 if tau % 3 == 0 else 1, 3 * tau)
    if sigma == 4:
        num = {0: 11, 2: 3}.get(tau % 4, 1)
        return Fraction(num, 4 * tau)
    raise ValueError(f"piecewise form only covers sigma in 1..4, got {sigma}")


def limit_existence_prob(tau: int, sigma: int) -> float:
    return -math.expm1(-float(limit_mean(tau, sigma)))


def limit_existence_prob_set(periods: PeriodSet) -> float:
    return -math.expm1(-float(limit_mean_set(periods)))


def limit_cdf_min_temporal(sigma: int, y: int) -> float:
    """Limiting ``P(Y <= y)`` for the smallest temporal period ``Y`` at spatial period ``sigma``."""
    if y < 1:
        return 0.0
    total = sum((limit_mean(t, sigma) for t in range(1, y + 1)), Fraction(0))
    return -math.expm1(-float(total))


def limit_pmf_min_temporal(sigma: int, y: int) -> float:
    return limit_cdf_min_temporal(sigma, y) - limit_cdf_min_temporal(sigma, y - 1)


def simple_sizes(tau: int, sigma: int, n: int) -> set[int]:
    """State counts realised by simple tiles: ``tau*sigma/d`` for ``d | gcd``, capped at ``n``."""
    _check_periods(tau, sigma)
    return {tau * sigma // d for d in divisors(math.gcd(tau, sigma)) if tau * sigma // d <= n}


def simple_tile_count(n: int, tau: int, sigma: int, s: int) -> int:
    """Number of simple ``tau x sigma`` tiles over ``n`` states using exactly ``s`` of them."""
    if s not in simple_sizes(tau, sigma, n):
        raise ValueError(f"s={s} is not a simple-tile size for (tau={tau}, sigma={sigma}, n={n})")
    d = tau * sigma // s
    return euler_phi(d) * math.comb(n, s) * math.factorial(s - 1)


def finite_n_mean(n: int, tau: int, sigma: int) -> Fraction:
    """Exact mean number of simple solutions of a uniform random ``n``-state rule."""
    return sum(
        (Fraction(simple_tile_count(n, tau, sigma, s), n**s) for s in simple_sizes(tau, sigma, n)),
        Fraction(0),
    )


def brute_force_tile_census(n: int, tau: int, sigma: int, limit: int = CENSUS_LIMIT) -> dict[tuple[int, int], int]:
    """Count distinct tiles of periods ``(tau, sigma)`` by ``(states, lag)``.

    Enumerates all ``n**(tau*sigma)`` matrices, keeps valid tiles and
    collapses torus rotations.
    """
    _check_periods(tau, sigma)
    if n**(tau * sigma) > limit:
        raise OverflowError(f"{n}**{tau * sigma} matrices exceeds the census limit {limit}")
    seen = set()
    census: dict[tuple[int, int], int] = {}
    for flat in itertools.product(range(n), repeat=tau * sigma):
        rows = tuple(flat[i * sigma:(i + 1) * sigma] for i in range(tau))
        if not is_valid_tile(rows):
            continue
        canon = canonical_tile(rows)
        if canon in seen:
            continue
        seen.add(canon)
        s, _, lag = tile_metrics(canon)
        census[(s, lag)] = census.get((s, lag), 0) + 1
    return dict(sorted(census.items()))


def mean_table(taus: Iterable[int], sigmas: Iterable[int]) -> list[dict]:
    """Rows ``{tau, sigma, value, decimal}`` of limit means."""
    rows = []
    for sigma in sigmas:
        for tau in taus:
            v = limit_mean(tau, sigma)
            rows.append({"tau": tau, "sigma": sigma, "value": str(v), "decimal": float(v)})
    return rows


def table_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def table_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"
