import math

import pytest
from hypothesis import given, strategies as st

from periodic_ca.theory import euler_phi, simple_sizes
from periodic_ca.tile import (
    canonical_rotation,
    canonical_tile,
    column_shift_order,
    disjoint,
    horizontal_pairs,
    is_simple,
    is_valid_tile,
    orthogonal,
    rotate,
    row_shift_order,
    shift_order,
    tile_from_json,
    tile_metrics,
    tile_to_json,
    transpose,
    word_period,
)

from conftest import period_pairs, simple_tiles

T1 = ((0, 1, 2, 3), (2, 3, 0, 1))
T2 = ((0, 1, 2, 1), (2, 1, 0, 1))
TWO_STEP_TILE = ((1, 2, 0), (2, 1, 1))

words = st.lists(st.integers(0, 3), min_size=1, max_size=9)


@pytest.mark.parametrize("w,p", [((1, 2, 0), 3), ((0, 1, 0, 1), 2), ((0, 0, 0), 1), ((0, 1, 0, 0, 1, 0), 3)])
def test_word_period(w, p):
    assert word_period(w) == p


@given(words, st.integers(0, 20))
def test_word_period_rotation_invariant(w, i):
    assert word_period(rotate(w, i)) == word_period(w)


@pytest.mark.parametrize("w,c", [((2, 3, 0, 1), (0, 1, 2, 3)), ((0, 0, 0), (0, 0, 0)), ((2, 1, 1), (1, 1, 2))])
def test_canonical_rotation(w, c):
    assert canonical_rotation(w) == c


@given(words, st.integers(0, 20))
def test_canonical_rotation_idempotent_and_invariant(w, i):
    c = canonical_rotation(w)
    assert canonical_rotation(c) == c
    assert canonical_rotation(rotate(w, i)) == c
    assert c == min(rotate(w, k) for k in range(len(w)))


def test_shift_order_examples():
    assert shift_order(0, 5) == 1
    assert shift_order(2, 4) == 2
    with pytest.raises(ValueError):
        shift_order(4, 4)


@pytest.mark.parametrize("k", range(1, 13))
def test_shift_order_census(k):
    for d in range(1, k + 1):
        if k % d == 0:
            assert sum(shift_order(i, k) == d for i in range(k)) == euler_phi(d)


def test_shift_order_matches_repeated_application():
    # order = least m with rotate^m = identity on an aperiodic word
    for k in range(1, 10):
        w = tuple(range(k))
        for i in range(k):
            m, cur = 1, rotate(w, i)
            while cur != w:
                cur, m = rotate(cur, i), m + 1
            assert shift_order(i, k) == m


def test_tile_metrics():
    assert tile_metrics(T1) == (4, 4, 0)
    assert tile_metrics(T2) == (3, 4, 1)
    assert tile_metrics([[5]]) == (1, 1, 0)


def test_validity():
    assert is_valid_tile(TWO_STEP_TILE)
    assert not is_valid_tile([[0, 1, 0, 1]])
    assert is_valid_tile([[0], [2]])
    assert not is_valid_tile([[0], [0]])  # temporal period 1, not 2
    assert not is_valid_tile([[0, 1], [1, 0], [0, 0]])  # last row periodic
    assert not is_valid_tile([[0, 1], [0, 1]])


def test_inconsistent_tile():
    # pair (0,1) in row 0 sends 0 below-right; in row 1 it sends 1
    t = ((0, 1), (0, 1), (1, 0))
    assert not is_valid_tile(t)


def test_canonical_tile():
    assert canonical_tile(TWO_STEP_TILE) == canonical_tile(((2, 1, 1), (1, 2, 0)))
    assert canonical_tile(((0, 1), (1, 0))) == canonical_tile(((1, 0), (0, 1)))
    # the three raw-word 2-cycles of the same rule
    cycles = [((1, 2, 0), (2, 1, 1)), ((2, 0, 1), (1, 1, 2)), ((0, 1, 2), (1, 2, 1))]
    assert len({canonical_tile(c) for c in cycles}) == 1


def _all_rotations(t):
    tau, sigma = len(t), len(t[0])
    for i in range(tau):
        rows = t[i:] + t[:i]
        for j in range(sigma):
            yield tuple(rotate(r, j) for r in rows)


def test_canonical_tile_is_min_rotation():
    for t in (T1, TWO_STEP_TILE, T2):
        rots = list(_all_rotations(t))
        assert canonical_tile(t) == min(rots)
        assert all(canonical_tile(r) == canonical_tile(t) for r in rots)


def test_is_simple():
    assert is_simple(T1)
    assert not is_simple(T2)
    assert not is_simple(TWO_STEP_TILE)


def test_orthogonal_disjoint():
    a = ((0, 1), (1, 0))
    b = ((2, 3), (3, 2))
    assert disjoint(a, b) and orthogonal(a, b)
    assert not orthogonal(T1, T1)
    other = ((0, 2, 1, 3), (1, 3, 0, 2))
    assert is_valid_tile(other)
    assert not disjoint(T1, other)
    # enumerate both pair sets by hand
    p1 = {(r[j], r[(j + 1) % 4]) for r in T1 for j in range(4)}
    p2 = {(r[j], r[(j + 1) % 4]) for r in other for j in range(4)}
    assert orthogonal(T1, other) == (not (p1 & p2))
    assert not orthogonal(T1, other)  # both contain (3, 0)


def test_row_shift_order():
    assert row_shift_order(T1) == 2
    assert column_shift_order(T1) == 2
    assert row_shift_order(((0, 1), (2, 3))) == 1
    with pytest.raises(ValueError):
        row_shift_order(T2)


def test_json_round_trip():
    assert tile_from_json(tile_to_json(TWO_STEP_TILE)) == TWO_STEP_TILE
    assert tile_to_json(TWO_STEP_TILE) == "[[1,2,0],[2,1,1]]"


# ---------------------------------------------------------------- enumerated simple tiles

PAIRS = period_pairs(6)


@pytest.mark.parametrize("tau,sigma", PAIRS)
def test_simple_tile_structure(tau, sigma):
    for t in simple_tiles(3, tau, sigma):
        cols = transpose(t)
        for group in (t, cols):
            for line in group:
                assert len(set(line)) == len(line)
            for a in group:
                for b in group:
                    if set(a) & set(b):
                        assert any(rotate(a, i) == tuple(b) for i in range(len(a)))
        d = row_shift_order(t)
        assert d == column_shift_order(t)
        assert math.gcd(tau, sigma) % d == 0


@pytest.mark.parametrize("tau,sigma", PAIRS)
def test_simple_sizes_realised(tau, sigma):
    realised = {tile_metrics(t)[0] for t in simple_tiles(3, tau, sigma)}
    assert realised == simple_sizes(tau, sigma, 3)


@pytest.mark.parametrize("tau,sigma", PAIRS)
def test_predicates_anchor_invariant(tau, sigma):
    for t in simple_tiles(3, tau, sigma)[:10]:
        ref = (tile_metrics(t), is_simple(t), row_shift_order(t), horizontal_pairs(t))
        for r in _all_rotations(t):
            assert (tile_metrics(r), is_simple(r), row_shift_order(r), horizontal_pairs(r)) == ref
            assert is_valid_tile(r)
