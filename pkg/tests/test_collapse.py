import random
from collections import Counter
from itertools import chain, combinations

import pytest
from hypothesis import given, settings, strategies as st

from collapsing_tasep.collapse import (
    CapacityError,
    SitePair,
    collapse_cycle,
    collapse_line_window,
    criterion_state,
    dual_collapse_cycle,
    particle_criterion,
    reflect_pair,
    reverse_charge,
)

P = SitePair.of


def subsets(n):
    return chain.from_iterable(combinations(range(n), k) for k in range(n + 1))


@st.composite
def cycle_pairs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    sites = st.integers(0, n - 1)
    T = draw(st.sets(sites, max_size=n))
    S = draw(st.sets(sites, max_size=n - len(T)))
    return n, P(S, T)


@pytest.mark.parametrize("n, S, T, expected", [
    (5, {0, 1}, {1}, "10**1"),
    (4, (), {2}, "**0*"),
    (3, {0, 1, 2}, (), "111"),
])
def test_collapse_cycle_examples(n, S, T, expected):
    assert collapse_cycle(P(S, T), n) == expected


def test_capacity_error_names_sizes():
    with pytest.raises(CapacityError, match="3\\+1 = 4 exceeds N = 3"):
        collapse_cycle(P({0, 1, 2}, {0}), 3)


def test_position_out_of_range():
    with pytest.raises(ValueError):
        collapse_cycle(P({5}), 5)


@pytest.mark.parametrize("lo, hi, S, T, expected, dropped", [
    (0, 4, {0, 1}, {1}, "10***", 1),
    (0, 2, (), (), "***", 0),
    (0, 3, {3}, {0, 1, 2}, "0001", 0),
    (-2, 1, {1}, {0, 1}, "*100", 0),
])
def test_collapse_line_examples(lo, hi, S, T, expected, dropped):
    assert collapse_line_window(P(S, T), lo, hi) == (expected, dropped)


def test_criterion_examples():
    pair = P({0, 1}, {1})
    assert particle_criterion(0, pair, n=5)
    assert not particle_criterion(2, pair, n=5)
    assert particle_criterion(4, pair, n=5)
    assert not particle_criterion(1, pair, n=5)


def test_criterion_needs_one_geometry():
    with pytest.raises(ValueError):
        particle_criterion(0, P({0}), n=3, window=(0, 2))


@pytest.mark.parametrize("n, S, T, expected", [
    (5, {1}, {0, 1}, "010**"),
    (4, (), {2}, "**0*"),
    (3, {0, 1, 2}, (), "111"),
])
def test_dual_examples(n, S, T, expected):
    assert dual_collapse_cycle(P(S, T), n) == expected


@settings(max_examples=300)
@given(cycle_pairs(), st.randoms(use_true_random=False))
def test_order_independence(case, rnd):
    n, pair = case
    reference = collapse_cycle(pair, n)
    seeds = list(pair.S)
    for _ in range(20):
        rnd.shuffle(seeds)
        assert collapse_cycle(pair, n, order=seeds) == reference


def test_order_independence_bulk():
    rnd = random.Random(7)
    for _ in range(1000):
        n = rnd.randint(1, 10)
        T = rnd.sample(range(n), rnd.randint(0, n))
        S = rnd.sample(range(n), rnd.randint(0, n - len(T)))
        pair = P(S, T)
        ref = collapse_cycle(pair, n)
        for _ in range(20):
            rnd.shuffle(S)
            assert collapse_cycle(pair, n, order=S) == ref


def test_criterion_matches_procedure_exhaustively():
    for n in range(1, 9):
        for T in subsets(n):
            for S in subsets(n):
                if len(S) + len(T) > n:
                    continue
                pair = P(S, T)
                assert criterion_state(pair, n=n) == collapse_cycle(pair, n), (n, S, T)


@given(st.integers(-5, 5), st.integers(0, 12), st.data())
def test_criterion_matches_procedure_on_line(lo, width, data):
    hi = lo + width
    sites = st.integers(lo, hi)
    pair = P(data.draw(st.sets(sites)), data.draw(st.sets(sites)))
    assert criterion_state(pair, window=(lo, hi)) == collapse_line_window(pair, lo, hi)[0]


@given(cycle_pairs())
def test_conservation_on_cycle(case):
    n, pair = case
    x = collapse_cycle(pair, n)
    assert x.count("1") == len(pair.S)
    assert {i for i, c in enumerate(x) if c == "0"} == pair.T


@given(st.integers(0, 15), st.data())
def test_conservation_on_line(width, data):
    sites = st.integers(0, width)
    pair = P(data.draw(st.sets(sites)), data.draw(st.sets(sites)))
    x, dropped = collapse_line_window(pair, 0, width)
    assert x.count("1") == len(pair.S) - dropped
    assert {i for i, c in enumerate(x) if c == "0"} == pair.T


@given(cycle_pairs())
def test_dual_is_reflected_primal(case):
    n, pair = case
    assert dual_collapse_cycle(pair, n) == reverse_charge(collapse_cycle(reflect_pair(pair, n), n))


def test_dual_distribution_is_reversed_primal():
    for n in range(1, 8):
        for a in range(n + 1):
            for b in range(n - a + 1):
                # charge reversal turns b seeds and a anti sites into a particles, b antis
                primal, dual = Counter(), Counter()
                for S in combinations(range(n), b):
                    for T in combinations(range(n), a):
                        primal[reverse_charge(collapse_cycle(P(S, T), n))] += 1
                for S in combinations(range(n), a):
                    for T in combinations(range(n), b):
                        dual[dual_collapse_cycle(P(S, T), n)] += 1
                assert primal == dual
