"""Cyclic words and tiles of jointly periodic solutions.

A word is a tuple of states read cyclically.  A tile is a ``tau x sigma``
matrix (tuple of row tuples) read on the discrete torus: row ``i + 1`` is the
image of row ``i`` under the rule, with the new state at column ``j + 1``
computed from the pair at columns ``(j, j + 1)`` of row ``i``.
"""
from __future__ import annotations

import json
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Word",
    "Tile",
    "as_tile",
    "rotate",
    "word_period",
    "canonical_rotation",
    "shift_order",
    "is_rotation",
    "rotation_amount",
    "transpose",
    "horizontal_pairs",
    "tile_states",
    "tile_metrics",
    "is_consistent",
    "temporal_period",
    "is_valid_tile",
    "canonical_tile",
    "is_simple",
    "orthogonal",
    "disjoint",
    "row_shift_order",
    "column_shift_order",
    "tile_to_json",
    "tile_from_json",
]

Word = tuple[int, ...]
Tile = tuple[tuple[int, ...], ...]


def as_tile(rows: Iterable[Sequence[int]]) -> Tile:
    t = tuple(tuple(int(v) for v in row) for row in rows)
    if not t or not t[0]:
        raise ValueError("tile must have at least one row and one column")
    width = len(t[0])
    if any(len(row) != width for row in t):
        raise ValueError("tile rows must have equal length")
    return t


def rotate(w: Sequence[int], i: int) -> Word:
    """Circular shift ``a_0 a_1 ... -> a_i a_{i+1} ...``."""
    k = len(w)
    i %= k
    return tuple(w[i:]) + tuple(w[:i])


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def word_period(w: Sequence[int]) -> int:
    """Smallest divisor ``d`` of ``len(w)`` with ``w`` invariant under a shift by ``d``."""
    k = len(w)
    if k == 0:
        raise ValueError("empty word")
    for d in _divisors(k):
        if all(w[j] == w[(j + d) % k] for j in range(k)):
            return d
    return k  # unreachable


def canonical_rotation(w: Sequence[int]) -> Word:
    """Lexicographically least rotation of ``w``."""
    if len(w) == 0:
        raise ValueError("empty word")
    return min(rotate(w, i) for i in range(len(w)))


def shift_order(i: int, k: int) -> int:
    """Order of the circular shift by ``i`` on words of length ``k``."""
    if not 0 <= i < k:
        raise ValueError(f"shift amount {i} outside [0, {k})")
    return k // gcd(i, k)


def rotation_amount(a: Sequence[int], b: Sequence[int]) -> int | None:
    """Least ``i`` with ``rotate(a, i) == b``, or None."""
    if len(a) != len(b):
        return None
    b = tuple(b)
    for i in range(len(a)):
        if rotate(a, i) == b:
            return i
    return None


def is_rotation(a: Sequence[int], b: Sequence[int]) -> bool:
    return rotation_amount(a, b) is not None


def transpose(t: Tile) -> Tile:
    return tuple(zip(*t))


def horizontal_pairs(t: Tile) -> set[tuple[int, int]]:
    """All pairs ``(a_{i,j}, a_{i,j+1})`` with wraparound; each pins one rule value."""
    sigma = len(t[0])
    return {(row[j], row[(j + 1) % sigma]) for row in t for j in range(sigma)}


def tile_states(t: Tile) -> set[int]:
    return {v for row in t for v in row}


def tile_metrics(t: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return ``(s, p, lag)``: distinct states, distinct assignments, ``p - s``."""
    t = as_tile(t)
    s = len(tile_states(t))
    p = len(horizontal_pairs(t))
    return s, p, p - s


def is_consistent(t: Tile) -> bool:
    """Every horizontal pair determines the same state below-right of it."""
    tau, sigma = len(t), len(t[0])
    assigned: dict[tuple[int, int], int] = {}
    for i in range(tau):
        row, below = t[i], t[(i + 1) % tau]
        for j in range(sigma):
            pair = (row[j], row[(j + 1) % sigma])
            value = below[(j + 1) % sigma]
            if assigned.setdefault(pair, value) != value:
                return False
    return True


def temporal_period(t: Tile) -> int:
    """Period of the cyclic sequence of rows."""
    return word_period(t)


def is_valid_tile(t: Sequence[Sequence[int]]) -> bool:
    """Consistent, every row aperiodic, and the row sequence aperiodic."""
    t = as_tile(t)
    sigma = len(t[0])
    if not is_consistent(t):
        return False
    if any(word_period(row) != sigma for row in t):
        return False
    return temporal_period(t) == len(t)


def canonical_tile(t: Sequence[Sequence[int]]) -> Tile:
    """Least matrix over all torus rotations; equal iff same periodic solution."""
    t = as_tile(t)
    tau, sigma = len(t), len(t[0])
    best = None
    for i in range(tau):
        rows = t[i:] + t[:i]
        for j in range(sigma):
            cand = tuple(row[j:] + row[:j] for row in rows)
            if best is None or cand < best:
                best = cand
    return best


def is_simple(t: Sequence[Sequence[int]]) -> bool:
    return tile_metrics(t)[2] == 0


def orthogonal(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> bool:
    """No horizontal pair occurs in both tiles."""
    return not (horizontal_pairs(as_tile(t1)) & horizontal_pairs(as_tile(t2)))


def disjoint(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> bool:
    """No state occurs in both tiles."""
    return not (tile_states(as_tile(t1)) & tile_states(as_tile(t2)))


def _first_recurrence_order(t: Tile) -> int:
    sigma = len(t[0])
    row0 = t[0]
    for row in t[1:]:
        i = rotation_amount(row0, row)
        if i is not None:
            return shift_order(i, sigma)
    return 1


def row_shift_order(t: Sequence[Sequence[int]]) -> int:
    """Order of the shift carrying row 0 to the first later row that is a rotation of it.

    Only meaningful for simple tiles; raises ValueError otherwise.  Returns 1
    when no other row is a rotation of row 0.
    """
    t = as_tile(t)
    if not is_simple(t):
        raise ValueError("row_shift_order is defined for simple tiles only")
    return _first_recurrence_order(t)


def column_shift_order(t: Sequence[Sequence[int]]) -> int:
    """Column analogue of :func:`row_shift_order`."""
    t = as_tile(t)
    if not is_simple(t):
        raise ValueError("column_shift_order is defined for simple tiles only")
    return _first_recurrence_order(transpose(t))


def tile_to_json(t: Tile) -> str:
    return json.dumps([list(row) for row in t], separators=(",", ":"))


def tile_from_json(text: str) -> Tile:
    return as_tile(json.loads(text))
