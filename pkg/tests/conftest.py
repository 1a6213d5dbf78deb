"""Shared oracles.  These deliberately avoid the digraph machinery they check."""
import itertools

import numpy as np
import pytest

from periodic_ca.rule import evolve
from periodic_ca.tile import canonical_tile, is_simple, is_valid_tile, word_period

SHIFT_PAIR_RULE = "021102022"
PERIOD_LADDER_RULES = ["012200210", "021102120", "100112122", "101201021"]


def naive_ps(rule, sigma):
    """Evolve every word until its trajectory meets a visited word; keep new cycles of full period."""
    tiles = set()
    done = set()
    for w in itertools.product(range(rule.n), repeat=sigma):
        path = {}
        traj = []
        cur = tuple(w)
        while cur not in done and cur not in path:
            path[cur] = len(traj)
            traj.append(cur)
            cur = evolve(rule, cur, 1)[1]
        if cur in path:
            cycle = traj[path[cur]:]
            if word_period(cycle[0]) == sigma:
                tiles.add(canonical_tile(cycle))
        done.update(traj)
    return tiles


def all_tiles(n, tau, sigma):
    """Canonical forms of every valid tau x sigma tile over n states."""
    out = set()
    for flat in itertools.product(range(n), repeat=tau * sigma):
        rows = tuple(flat[i * sigma:(i + 1) * sigma] for i in range(tau))
        if is_valid_tile(rows):
            out.add(canonical_tile(rows))
    return out


_SIMPLE_CACHE = {}


def simple_tiles(n, tau, sigma):
    key = (n, tau, sigma)
    if key not in _SIMPLE_CACHE:
        _SIMPLE_CACHE[key] = sorted(t for t in all_tiles(n, tau, sigma) if is_simple(t))
    return _SIMPLE_CACHE[key]


def period_pairs(max_area):
    return [(t, s) for t in range(1, max_area + 1) for s in range(1, max_area + 1) if t * s <= max_area]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = []


def record_criterion(number, title, ok, detail):
    ACCEPTANCE.append((number, title, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})")
