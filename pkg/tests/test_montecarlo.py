from collections import Counter
from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from collapsing_tasep import montecarlo as mc
from collapsing_tasep.collapse import SitePair, collapse_line_window
from collapsing_tasep.stationary import formula_distribution, generator_stationary


def brute_hitting_exact(p, q, t_max):
    walk = mc.WalkLaw(p, q)
    steps = {1: walk.up, 0: walk.stay, -1: walk.down}
    law = {}
    for t in range(1, t_max + 1):
        total = 0.0
        for path in product((1, 0, -1), repeat=t):
            levels = np.cumsum(path)
            if levels[-1] == 1 and (levels[:-1] < 1).all():
                total += np.prod([steps[s] for s in path])
        law[t] = total
    return law


@pytest.mark.parametrize("p, q", [(0.3, 0.2), (0.1, 0.6), (0.5, 0.0), (0.0, 0.0), (0.45, 0.45)])
def test_hitting_law_matches_path_enumeration(p, q):
    law, _ = mc.hitting_time_law(p, q, 8)
    oracle = brute_hitting_exact(p, q, 8)
    for t in range(1, 9):
        assert law[t] == pytest.approx(oracle[t], abs=1e-12)


def test_hitting_law_basics():
    law, _ = mc.hitting_time_law(0.3, 0.2, 1)
    assert law[1] == pytest.approx(0.7 * 0.8)
    law, residual = mc.hitting_time_law(0.0, 0.0, 5)
    assert law[1] == 1.0 and residual == 0.0


def test_hitting_law_geometric_without_antiparticles():
    p = 0.5
    law, _ = mc.hitting_time_law(p, 0.0, 30)
    for d in range(1, 31):
        assert law[d] == pytest.approx((1 - p) * p ** (d - 1))


def test_hitting_law_residual_and_mean():
    law, residual = mc.hitting_time_law(0.3, 0.2, 200)
    assert all(v >= 0 for v in law.values())
    assert sum(law.values()) <= 1 + 1e-12
    assert residual < 1e-6
    assert sum(t * v for t, v in law.items()) == pytest.approx(1 / (1 - 0.3 - 0.2), rel=1e-6)


def test_walk_law():
    w = mc.WalkLaw(0.3, 0.2)
    assert w.up + w.down + w.stay == pytest.approx(1)
    assert w.mean == pytest.approx(1 - 0.3 - 0.2)


@settings(deadline=None)
@given(st.lists(st.booleans(), max_size=40), st.data())
def test_fast_line_collapse_matches_reference(S, data):
    T = data.draw(st.lists(st.booleans(), min_size=len(S), max_size=len(S)))
    if not S:
        return
    codes, landing = mc.collapse_line_arrays(np.array(S), np.array(T))
    pair = SitePair.of([i for i, s in enumerate(S) if s], [i for i, t in enumerate(T) if t])
    word, dropped = collapse_line_window(pair, 0, len(S) - 1)
    assert mc.codes_to_word(codes) == word
    assert (landing[np.array(S)] < 0).sum() == dropped
    placed = landing[landing >= 0]
    assert sorted(placed) == [i for i, c in enumerate(word) if c == "1"]


def test_chain_single_state():
    assert mc.simulate_chain("2222", 1000, 3) == Counter({"2222": 800})


def test_chain_rejects_zero_steps():
    with pytest.raises(ValueError):
        mc.simulate_chain("12", 0)


def test_chain_is_deterministic():
    assert mc.simulate_chain("1*0*0", 50_000, 11) == mc.simulate_chain("1*0*0", 50_000, 11)
    assert mc.simulate_chain("1*0*0", 50_000, 11) != mc.simulate_chain("1*0*0", 50_000, 12)


def test_chain_conserves_composition():
    tally = mc.simulate_chain("11**00", 100_000, 5)
    assert all(sorted(x) == sorted("11**00") for x in tally)
    assert sum(tally.values()) == 80_000


def test_chain_converges_small():
    tally = mc.simulate_chain("1*0*", 400_000, 2)
    assert mc.tv_distance(tally, formula_distribution(4, 1, 1).entries) < 0.02


def test_card_chain_converges():
    tally = mc.simulate_chain("4321", 400_000, 2)
    assert mc.tv_distance(tally, generator_stationary([1, 2, 3, 4]).entries) < 0.02


def test_sample_trivial():
    assert mc.sample_collapsed_uniform(4, 0, 0, 100) == Counter({"****": 100})


def test_sample_deterministic():
    a = mc.sample_collapsed_uniform(6, 2, 1, 20_000, 9)
    assert a == mc.sample_collapsed_uniform(6, 2, 1, 20_000, 9)


def test_sample_tv_shrinks():
    exact = formula_distribution(6, 2, 2).entries
    small = mc.tv_distance(mc.sample_collapsed_uniform(6, 2, 2, 10**4, 4), exact)
    large = mc.tv_distance(mc.sample_collapsed_uniform(6, 2, 2, 10**6, 4), exact)
    assert large < small


def test_sample_worked_example_frequency():
    n_samples = 5 * 10**6
    p = 36 / (comb(15, 5) * comb(15, 6))
    count = mc.sample_collapsed_uniform(15, 5, 6, n_samples, 1)["*10**10100*0101"]
    se = (n_samples * p * (1 - p)) ** 0.5
    assert abs(count - n_samples * p) < 5 * se


def test_line_params_validation():
    with pytest.raises(ValueError):
        mc.LineParams(1.2, 0.1)
    with pytest.raises(ValueError):
        mc.LineParams(0.6, 0.5, L=10).require_three_densities()


def test_line_without_particles():
    (w,) = mc.sample_line_window(mc.LineParams(0.0, 0.3, L=2000, M=16))
    assert "1" not in w and len(w) == 4001
    assert abs(w.count("0") / len(w) - 0.3) < 0.05


def test_line_window_deterministic():
    params = mc.LineParams(0.3, 0.2, L=300, M=64, seed=3)
    assert mc.sample_line_window(params, 2) == mc.sample_line_window(params, 2)


def test_line_statistics_small():
    stats = mc.line_statistics(mc.LineParams(0.3, 0.2, L=2000), windows=10)
    for key, target in {"particle": 0.3, "anti": 0.2, "empty": 0.5, "pair": 0.09}.items():
        mean, se = stats[key]
        assert abs(mean - target) < 4 * se


def test_gaps_without_particles_are_one():
    assert set(mc.gap_statistics(mc.LineParams(0.0, 0.0, L=100, M=8), 50)) == {1}


def test_gaps_geometric_without_antiparticles():
    gaps = mc.gap_statistics(mc.LineParams(0.5, 0.0, L=3000), 30_000)
    law, _ = mc.hitting_time_law(0.5, 0.0, 60)
    assert mc.tv_distance(gaps, law) < 0.02


def test_displacement_tail_shape():
    tail = mc.displacement_tail(mc.LineParams(0.3, 0.2, L=2000), windows=5)
    assert tail[0] > 0
    assert min(tail) >= 0
    assert mc.tail_slope(tail) < 0


def test_sparse_seeds_rarely_move():
    tail = mc.displacement_tail(mc.LineParams(0.01, 0.01, L=3000), windows=5)
    assert tail[0] / sum(tail.values()) > 0.95


def test_factoring_without_particles():
    report = mc.factoring_check(mc.LineParams(0.0, 0.3, M=16), 5000, width=2)
    assert report["passed"]


def test_factoring_deterministic():
    params = mc.LineParams(0.3, 0.2, M=64)
    a = mc.factoring_check(params, 2000)
    assert a == mc.factoring_check(params, 2000)


def test_independence_table_flags_dependence():
    rng = np.random.default_rng(0)
    left = rng.integers(0, 3, 20000)
    right = np.where(rng.random(20000) < 0.5, left, rng.integers(0, 3, 20000))
    _, _, z = mc.independence_table(left, right, 3)
    assert z.max() > 5
    _, _, z = mc.independence_table(left, rng.integers(0, 3, 20000), 3)
    assert z.max() < 5


def test_margin_adequacy_small():
    assert mc.margin_adequacy(mc.LineParams(0.3, 0.2, L=1000), windows=10)["passed"]


def test_tv_distance():
    assert mc.tv_distance({"a": 1, "b": 1}, {"a": 1}) == pytest.approx(0.5)
    assert mc.tv_distance({"a": 3}, {"a": 1}) == 0
