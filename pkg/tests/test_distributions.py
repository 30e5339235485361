from fractions import Fraction

import pytest

from hjsemigroup import (
    BudgetExceeded,
    CounterRng,
    IntLine,
    NonPositiveProbability,
    ProbabilitiesDoNotSumToOne,
    enumerate_outcomes,
    event_probability,
    exact_paths,
    iid_scenario,
    make_distribution,
    path_statistics,
    point_mass,
)
from hjsemigroup.distributions import Outcome, chunk_bounds, sample_outcome
from hjsemigroup.montecarlo import wilson

from conftest import brute_prob, brute_top


def test_rademacher_law_is_valid():
    sg = IntLine()
    law = make_distribution([(sg.element(-1), Fraction(1, 2)), (sg.element(1), Fraction(1, 2))])
    assert law.probs == (Fraction(1, 2), Fraction(1, 2))


def test_probabilities_must_sum_to_one():
    sg = IntLine()
    with pytest.raises(ProbabilitiesDoNotSumToOne):
        make_distribution([(sg.element(0), Fraction(1, 2)), (sg.element(1), Fraction(1, 3))])


def test_zero_mass_rejected():
    sg = IntLine()
    with pytest.raises(NonPositiveProbability):
        make_distribution([(sg.element(0), 0), (sg.element(1), 1)])


def test_e1_enumeration(e1):
    outs = list(enumerate_outcomes(e1))
    assert len(outs) == 4
    assert all(o.prob == Fraction(1, 4) for o in outs)
    assert [o.index for o in outs] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_single_point_law():
    sg = IntLine()
    sc = iid_scenario(sg, point_mass(sg.element(5)), 1)
    outs = list(enumerate_outcomes(sc))
    assert len(outs) == 1 and outs[0].prob == 1


def test_budget_exceeded(e2):
    with pytest.raises(BudgetExceeded):
        list(enumerate_outcomes(e2, budget=7))


def test_chunked_enumeration_matches_full(e2):
    full = list(enumerate_outcomes(e2))
    pieces = []
    for lo, hi in chunk_bounds(len(full), 3):
        pieces.extend(enumerate_outcomes(e2, start=lo, stop=hi))
    assert pieces == full


def test_e1_path_statistics(e1):
    sg = e1.sg
    out = Outcome((sg.element(1), sg.element(-1)), Fraction(1, 4))
    st = path_statistics(e1, out, K=2)
    assert [s.value for s in st.S] == [1, 0]
    assert st.U == 1 and st.Y == (1, 1) and st.M == 1
    assert st.top_sum(2) == 1


def test_constant_identity_steps():
    sg = IntLine()
    sc = iid_scenario(sg, point_mass(sg.element(0)), 2, z0=3, z1=3)
    (_, st), = exact_paths(sc)
    assert st.U == 0 and st.M == 0


def test_e2_all_up(e2):
    sg = e2.sg
    out = Outcome((sg.element(1),) * 3, Fraction(1, 8))
    st = path_statistics(e2, out)
    assert [s.value for s in st.S] == [1, 2, 3]
    assert st.U == 3 and st.M == 1
    # K - 1 largest increments
    assert st.top_sum(1) == 0
    assert st.top_sum(2) == 1
    assert st.top_sum(3) == 2


def test_event_probability_e1(e1):
    assert event_probability(e1, lambda o, st: st.U > 1) == Fraction(1, 2)
    assert event_probability(e1, lambda o, st: st.U > 1) == brute_prob(e1, lambda S, U, Y: U > 1)
    assert event_probability(e1, lambda o, st: False) == 0
    assert event_probability(e1, lambda o, st: True) == 1


def test_top_sum_matches_oracle(e2):
    for o, st in exact_paths(e2):
        for K in range(1, 5):
            assert st.top_sum(K) == brute_top(st.Y, K)


def test_sampling_is_deterministic(e1):
    a = sample_outcome(e1, CounterRng(42), 0)
    b = sample_outcome(e1, CounterRng(42), 0)
    assert a == b
    assert a.prob == Fraction(1, 4)


def test_single_point_sampling():
    sg = IntLine()
    sc = iid_scenario(sg, point_mass(sg.element(5)), 3)
    for i in range(10):
        assert [v.value for v in sample_outcome(sc, CounterRng(i), i).values] == [5, 5, 5]


def test_sampled_frequency_within_wilson(e1):
    rng = CounterRng(2024)
    n = 100_000
    up = sum(
        1 for i in range(n) if [v.value for v in sample_outcome(e1, rng, i).values] == [1, 1]
    )
    ci = wilson(up, n, 0.99)
    assert ci.lo <= 0.25 <= ci.hi
