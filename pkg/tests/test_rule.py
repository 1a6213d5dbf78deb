import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from periodic_ca.rule import (
    LEFT_PERMUTATIVE,
    UNIFORM,
    Rule,
    RuleClass,
    additive_rule,
    apply,
    evolve,
    format_rule,
    is_left_permutative,
    parse_rule,
    sample_rule,
)
from periodic_ca.tile import rotate

from conftest import SHIFT_PAIR_RULE


def test_parse_digit_listing():
    r = parse_rule(SHIFT_PAIR_RULE, 3)
    expected = {
        (2, 2): 0, (2, 1): 2, (2, 0): 1,
        (1, 2): 1, (1, 1): 0, (1, 0): 2,
        (0, 2): 0, (0, 1): 2, (0, 0): 2,
    }
    for (a, b), v in expected.items():
        assert r(a, b) == v


def test_parse_single_state():
    r = parse_rule("0", 1)
    assert r.n == 1 and r(0, 0) == 0


def test_last_digit_is_f00():
    assert parse_rule("012200210", 3)(0, 0) == 0


def test_parse_large_n_comma_list():
    n = 11
    values = [(3 * k + 1) % n for k in range(n * n)]
    r = parse_rule(",".join(map(str, values)), n)
    assert r(n - 1, n - 1) == values[0]
    assert r(0, 0) == values[-1]
    assert format_rule(r) == ",".join(map(str, values))


@pytest.mark.parametrize(
    "text,n",
    [("02110202", 3), ("0211020223", 3), ("021102023", 3), ("02110202x", 3), ("1,2,,3", 11), ("0," * 119 + "0", 11)],
)
def test_parse_errors(text, n):
    with pytest.raises(ValueError):
        parse_rule(text, n)


def test_parse_rejects_out_of_range_comma_value():
    with pytest.raises(ValueError):
        parse_rule(",".join(["11"] * 121), 11)


def test_format_examples():
    assert format_rule(parse_rule(SHIFT_PAIR_RULE, 3)) == SHIFT_PAIR_RULE
    assert format_rule(Rule(1, [0])) == "0"


def test_round_trip_sampled_n5(rng):
    for _ in range(50):
        r = sample_rule(5, UNIFORM, rng)
        assert parse_rule(format_rule(r), 5) == r


@given(st.integers(1, 14).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))))
def test_round_trip_property(args):
    n, table = args
    r = Rule(n, table)
    assert parse_rule(format_rule(r), n) == r


def test_apply():
    r = parse_rule(SHIFT_PAIR_RULE, 3)
    assert apply(r, 1, 2) == 1
    assert apply(r, 0, 0) == 2
    assert apply(additive_rule(2, 1, 1), 1, 1) == 0
    with pytest.raises(ValueError):
        apply(r, 3, 0)


def test_rule_is_immutable():
    r = parse_rule(SHIFT_PAIR_RULE, 3)
    with pytest.raises(AttributeError):
        r.n = 4
    with pytest.raises(ValueError):
        r.table[0] = 1


def test_rule_validation():
    with pytest.raises(ValueError):
        Rule(2, [0, 1, 2, 0])
    with pytest.raises(ValueError):
        Rule(2, [0, 1, 1])


def test_sample_single_state(rng):
    assert sample_rule(1, UNIFORM, rng) == Rule(1, [0])


def test_left_permutative_sampler(rng):
    for _ in range(200):
        r = sample_rule(3, LEFT_PERMUTATIVE, rng)
        m = r.as_matrix()
        for b in range(3):
            assert sorted(m[:, b]) == [0, 1, 2]
        assert is_left_permutative(r)


def test_additive_sampler(rng):
    for _ in range(100):
        r = sample_rule(7, RuleClass("additive"), rng)
        # recover the coefficients and check every pair
        alpha, beta = r(1, 0), r(0, 1)
        for a in range(7):
            for b in range(7):
                assert r(a, b) == (alpha * a + beta * b) % 7
    fixed = sample_rule(5, RuleClass("additive", alpha=2, beta=3), rng)
    assert fixed == additive_rule(5, 2, 3)


def test_uniform_marginal_pooled():
    # 100 rules x 10^4 iid entries = 10^6 draws of "entry == 0"
    gen = np.random.default_rng(12345)
    hits = sum(int(np.count_nonzero(sample_rule(100, UNIFORM, gen).table == 0)) for _ in range(100))
    assert abs(hits / 10**6 - 0.01) < 0.0005


def test_uniform_sampler_marginal_through_api():
    gen = np.random.default_rng(99)
    m = 20_000
    hits = sum(sample_rule(100, UNIFORM, gen)(0, 0) == 0 for _ in range(m))
    # 5 standard errors of a Bernoulli(0.01) mean
    assert abs(hits / m - 0.01) < 5 * (0.01 * 0.99 / m) ** 0.5


def test_sampler_determinism():
    a = sample_rule(6, UNIFORM, np.random.default_rng(7))
    b = sample_rule(6, UNIFORM, np.random.default_rng(7))
    assert a == b


def test_evolve_two_cycle():
    r = parse_rule(SHIFT_PAIR_RULE, 3)
    assert evolve(r, (1, 2, 0), 2) == [(1, 2, 0), (2, 1, 1), (1, 2, 0)]
    assert evolve(r, (1, 2, 2), 1) == [(1, 2, 2), (2, 1, 0)]


def test_evolve_constant(rng):
    for _ in range(20):
        r = sample_rule(4, UNIFORM, rng)
        for a in range(4):
            assert evolve(r, (a,) * 5, 1)[1] == (r(a, a),) * 5


def test_evolve_rejects_bad_states():
    with pytest.raises(ValueError):
        evolve(parse_rule(SHIFT_PAIR_RULE, 3), (0, 3), 1)


@settings(max_examples=200)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n),
            st.lists(st.integers(0, n - 1), min_size=1, max_size=7),
            st.integers(0, 10),
            st.just(n),
        )
    )
)
def test_shift_equivariance(args):
    table, w, i, n = args
    r = Rule(n, table)
    traj = evolve(r, w, 4)
    shifted = evolve(r, rotate(w, i), 4)
    assert shifted == [rotate(x, i) for x in traj]
