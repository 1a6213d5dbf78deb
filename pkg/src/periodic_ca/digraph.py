"""Configuration and label digraphs of a rule, and the periodic solutions they carry.

Configurations of length ``sigma`` are packed into integers base ``n`` with
the first site as the most significant digit, so index order is lexicographic
word order.  The configuration digraph on raw (unrotated) words is a
functional graph; its cycles are found by successor-following with a
three-state visit array.  Working on raw words rather than rotation classes
keeps the cycle length equal to the true temporal period.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .rule import Rule
from .tile import Tile, Word, as_tile, canonical_tile, is_valid_tile, word_period

__all__ = [
    "CycleRecord",
    "MAX_INDEX",
    "encode_word",
    "decode_word",
    "config_successor",
    "successor_array",
    "cycle_summary",
    "find_config_cycles",
    "group_by_tile",
    "ps_with_spatial_period",
    "min_temporal_period",
    "existence",
    "label_successors",
    "label_successor_table",
    "label_cycles",
    "ps_from_label_cycles",
    "min_spatial_period",
    "min_spatial_witness",
]

#: practical cap on ``n**sigma`` (number of packed words held in memory)
MAX_INDEX = 2**31


def _check_size(n: int, length: int, limit: Optional[int] = None) -> int:
    if length < 1:
        raise ValueError(f"word length must be >= 1, got {length}")
    size = n**length
    if size >= 2**63:
        raise OverflowError(f"{n}**{length} does not fit a 63-bit index")
    limit = MAX_INDEX if limit is None else limit
    if size > limit:
        raise OverflowError(f"{n}**{length} = {size} words exceeds the cap of {limit}")
    return size


@dataclass(frozen=True)
class CycleRecord:
    """A cycle of the configuration digraph (rows) or label digraph (columns)."""

    kind: str
    period: int
    words: tuple[Word, ...]
    tile: Tile
    spatial_period: int
    temporal_period: int
    valid: bool = field(default=True, compare=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "period": self.period,
            "words": [list(w) for w in self.words],
            "tile": [list(r) for r in self.tile],
            "spatial_period": self.spatial_period,
            "temporal_period": self.temporal_period,
        }


def encode_word(w: Sequence[int], n: int) -> int:
    idx = 0
    for v in w:
        idx = idx * n + int(v)
    return idx


def decode_word(idx: int, n: int, length: int) -> Word:
    out = [0] * length
    for j in range(length - 1, -1, -1):
        idx, out[j] = divmod(idx, n)
    return tuple(out)


# --------------------------------------------------------------------------
# configuration digraph


def config_successor(rule: Rule, w: Sequence[int]) -> Word:
    """The unique down-extension: ``b_{j} = f(a_{j-1}, a_j)``, indices mod sigma."""
    n, table = rule.n, rule.table
    return tuple(int(table[w[j - 1] * n + w[j]]) for j in range(len(w)))


@njit(cache=True)
def _fill_successors(table, n, sigma, succ):
    size = succ.size
    digits = np.zeros(sigma, np.int64)  # odometer over words in index order
    for idx in range(size):
        out = table[digits[sigma - 1] * n + digits[0]]
        for j in range(1, sigma):
            out = out * n + table[digits[j - 1] * n + digits[j]]
        succ[idx] = out
        j = sigma - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                break
            digits[j] = 0
            j -= 1


@njit(cache=True)
def _index_period(idx, n, sigma, digits):
    x = idx
    for j in range(sigma - 1, -1, -1):
        digits[j] = x % n
        x //= n
    for d in range(1, sigma + 1):
        if sigma % d != 0:
            continue
        ok = True
        for j in range(sigma):
            if digits[j] != digits[(j + d) % sigma]:
                ok = False
                break
        if ok:
            return d
    return sigma


@njit(cache=True)
def _cycles_kernel(succ, n, sigma):
    size = succ.size
    color = np.zeros(size, np.uint8)  # 0 unvisited, 1 on current path, 2 finished
    starts = np.empty(size, np.int64)
    lengths = np.empty(size, np.int64)
    periods = np.empty(size, np.int64)
    digits = np.empty(sigma, np.int64)
    count = 0
    for s in range(size):
        if color[s] != 0:
            continue
        x = s
        while color[x] == 0:
            color[x] = 1
            x = succ[x]
        if color[x] == 1:
            length = 1
            y = succ[x]
            while y != x:
                length += 1
                y = succ[y]
            # report each cycle from its least index
            m = x
            y = succ[x]
            while y != x:
                if y < m:
                    m = y
                y = succ[y]
            starts[count] = m
            lengths[count] = length
            periods[count] = _index_period(m, n, sigma, digits)
            count += 1
        x = s
        while color[x] == 1:
            color[x] = 2
            x = succ[x]
    return starts[:count].copy(), lengths[:count].copy(), periods[:count].copy()


@njit(cache=True)
def _min_temporal_kernel(table, n, sigma, succ):
    _fill_successors(table, n, sigma, succ)
    size = succ.size
    color = np.zeros(size, np.uint8)
    digits = np.empty(sigma, np.int64)
    best = -1
    for s in range(size):
        if color[s] != 0:
            continue
        x = s
        while color[x] == 0:
            color[x] = 1
            x = succ[x]
        if color[x] == 1 and _index_period(x, n, sigma, digits) == sigma:
            length = 1
            y = succ[x]
            while y != x:
                length += 1
                y = succ[y]
            if best < 0 or length < best:
                best = length
                if best == 1:
                    return 1
        x = s
        while color[x] == 1:
            color[x] = 2
            x = succ[x]
    return best


def _empty_index_array(size: int) -> np.ndarray:
    # int32 halves memory traffic in the cycle walk
    return np.empty(size, np.int32 if size <= 2**31 else np.int64)


def successor_array(rule: Rule, sigma: int, limit: Optional[int] = None) -> np.ndarray:
    """Packed successor of every length-``sigma`` word."""
    succ = _empty_index_array(_check_size(rule.n, sigma, limit))
    _fill_successors(rule.table, rule.n, sigma, succ)
    return succ


def cycle_summary(rule: Rule, sigma: int, limit: Optional[int] = None):
    """All cycles of the raw-word configuration digraph as arrays.

    Returns ``(starts, lengths, periods)``: least packed word on each cycle,
    the cycle length (temporal period), and the word period shared by every
    word on the cycle.
    """
    succ = successor_array(rule, sigma, limit)
    return _cycles_kernel(succ, rule.n, sigma)


def _walk_cycle(rule: Rule, start: Word) -> list[Word]:
    words = [start]
    w = config_successor(rule, start)
    while w != start:
        words.append(w)
        w = config_successor(rule, w)
    return words


def find_config_cycles(rule: Rule, sigma: int, limit: Optional[int] = None) -> list[CycleRecord]:
    """Every cycle of the configuration digraph on raw words, reported once.

    A cycle whose words have period ``p < sigma`` carries a periodic solution
    of spatial period ``p``; its ``tile`` is the one reduced to ``p`` columns.
    """
    starts, lengths, periods = cycle_summary(rule, sigma, limit)
    records = []
    for start, length, period in zip(starts.tolist(), lengths.tolist(), periods.tolist()):
        words = _walk_cycle(rule, decode_word(start, rule.n, sigma))
        assert len(words) == length
        tile = canonical_tile(tuple(w[:period] for w in words))
        records.append(
            CycleRecord(
                kind="configuration",
                period=length,
                words=tuple(words),
                tile=tile,
                spatial_period=period,
                temporal_period=length,
                valid=is_valid_tile(tile),
            )
        )
    return records


def group_by_tile(records: Sequence[CycleRecord]) -> dict[Tile, list[CycleRecord]]:
    """Group cycles that are space-time translates of one periodic solution."""
    groups: dict[Tile, list[CycleRecord]] = {}
    for rec in records:
        groups.setdefault(rec.tile, []).append(rec)
    return groups


def ps_with_spatial_period(rule: Rule, sigma: int, limit: Optional[int] = None) -> frozenset[Tile]:
    """Canonical tiles of all periodic solutions with spatial period exactly ``sigma``."""
    starts, lengths, periods = cycle_summary(rule, sigma, limit)
    tiles = set()
    for start, period in zip(starts.tolist(), periods.tolist()):
        if period != sigma:
            continue
        rows = _walk_cycle(rule, decode_word(start, rule.n, sigma))
        if not is_valid_tile(rows):
            raise AssertionError(f"cycle from {rows[0]} produced an invalid tile")
        tiles.add(canonical_tile(rows))
    return frozenset(tiles)


def min_temporal_period(rule: Rule, sigma: int, limit: Optional[int] = None) -> Optional[int]:
    """Smallest temporal period of a periodic solution with spatial period ``sigma``.

    None when the rule has no such solution.
    """
    succ = _empty_index_array(_check_size(rule.n, sigma, limit))
    best = _min_temporal_kernel(rule.table, rule.n, sigma, succ)
    return None if best < 0 else int(best)


def existence(rule: Rule, tau: int, sigma: int, limit: Optional[int] = None) -> bool:
    """Whether the rule has a periodic solution with periods exactly ``(tau, sigma)``."""
    _, lengths, periods = cycle_summary(rule, sigma, limit)
    return bool(np.any((lengths == tau) & (periods == sigma)))


# --------------------------------------------------------------------------
# label digraph


def label_successors(rule: Rule, a: Sequence[int]) -> list[Word]:
    """All labels ``B`` that ``a`` right-extends to, i.e. ``f(a_i, b_i) = b_{i+1}`` mod tau."""
    n, table = rule.n, rule.table
    tau = len(a)
    out = []
    for b0 in range(n):
        b = [b0]
        for i in range(tau - 1):
            b.append(int(table[a[i] * n + b[i]]))
        if int(table[a[tau - 1] * n + b[tau - 1]]) == b0:
            out.append(tuple(b))
    return sorted(out)


def label_successor_table(rule: Rule, tau: int, limit: Optional[int] = None) -> list[list[int]]:
    """Adjacency lists of the label digraph on packed length-``tau`` labels."""
    n = rule.n
    size = _check_size(n, tau, limit)
    table = rule.table
    idx = np.arange(size, dtype=np.int64)
    digits = np.empty((size, tau), dtype=np.int64)
    x = idx.copy()
    for j in range(tau - 1, -1, -1):
        digits[:, j] = x % n
        x //= n
    b0 = np.broadcast_to(np.arange(n, dtype=np.int64), (size, n))
    cur = b0.copy()
    packed = b0.copy()
    for i in range(tau - 1):
        cur = table[digits[:, i, None] * n + cur]
        packed = packed * n + cur
    closes = table[digits[:, tau - 1, None] * n + cur] == b0
    adjacency = []
    for row_ok, row_packed in zip(closes, packed):
        adjacency.append(sorted(row_packed[row_ok].tolist()))
    return adjacency


def _label_tile(labels: Sequence[Word]) -> Tile:
    # labels are the columns
    return tuple(zip(*labels))


def label_cycles(rule: Rule, tau: int, length: int, adjacency=None) -> list[CycleRecord]:
    """Closed walks of ``length`` in the label digraph whose tile has both periods minimal.

    Walks are started from every label in index order and restricted to
    labels with index >= the start, so each walk is found from its least
    label.  Closed walks rather than simple cycles are searched: a periodic
    solution may repeat a column.  One record per distinct tile.
    """
    if length < 1:
        raise ValueError("cycle length must be >= 1")
    n = rule.n
    if adjacency is None:
        adjacency = label_successor_table(rule, tau)
    found: dict[Tile, CycleRecord] = {}
    for start in range(len(adjacency)):
        if not adjacency[start]:
            continue
        # iterative DFS over paths of exactly `length` arcs returning to start
        path = [start]
        stack = [iter(adjacency[start])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                path.pop()
                continue
            depth = len(path)
            if depth == length:
                if nxt == start:
                    labels = tuple(decode_word(v, n, tau) for v in path)
                    tile = _label_tile(labels)
                    if is_valid_tile(tile):
                        canon = canonical_tile(tile)
                        if canon not in found:
                            found[canon] = CycleRecord(
                                kind="label",
                                period=length,
                                words=labels,
                                tile=canon,
                                spatial_period=length,
                                temporal_period=tau,
                            )
                continue
            if nxt < start:
                continue
            path.append(nxt)
            stack.append(iter(adjacency[nxt]))
    return list(found.values())


def ps_from_label_cycles(rule: Rule, tau: int, sigma: int, adjacency=None) -> frozenset[Tile]:
    """Canonical tiles with periods exactly ``(tau, sigma)``, found via the label digraph."""
    return frozenset(rec.tile for rec in label_cycles(rule, tau, sigma, adjacency))


def min_spatial_period(rule: Rule, tau: int, sigma_max: int = 6, limit: Optional[int] = None) -> Optional[int]:
    """Smallest spatial period ``<= sigma_max`` of a solution with temporal period ``tau``.

    None means "not found within the bound", not "nonexistent".
    """
    if sigma_max < 1:
        raise ValueError("sigma_max must be >= 1")
    adjacency = label_successor_table(rule, tau, limit)
    for length in range(1, sigma_max + 1):
        if label_cycles(rule, tau, length, adjacency):
            return length
    return None


def min_spatial_witness(rule: Rule, tau: int, sigma_max: int = 6) -> Optional[CycleRecord]:
    """Like :func:`min_spatial_period` but returns one witnessing label cycle."""
    adjacency = label_successor_table(rule, tau)
    for length in range(1, sigma_max + 1):
        recs = label_cycles(rule, tau, length, adjacency)
        if recs:
            return min(recs, key=lambda r: [encode_word(w, rule.n) for w in r.words])
    return None
