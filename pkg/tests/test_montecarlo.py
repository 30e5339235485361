from fractions import Fraction as F

import pytest

from hjsemigroup import (
    ArcStep,
    BoundParams,
    Circle,
    Euclidean,
    GaussianStep,
    InvalidLevel,
    Scenario,
    evaluate_hj,
    mc_estimate,
    tail_u,
)
from hjsemigroup.montecarlo import HOLDS, INCONCLUSIVE, VIOLATES, Interval, verdict_from_intervals, wilson


def gaussian_walk(n=10, d=2):
    sg = Euclidean(d)
    origin = sg.element((0.0,) * d)
    return Scenario(sg, (GaussianStep((0.0,) * d, 1.0),) * n, origin, origin)


def test_verdict_rules():
    assert verdict_from_intervals(Interval(0.1, 0.2), Interval(0.2, 0.5)) == HOLDS
    assert verdict_from_intervals(Interval(0.1, 0.3), Interval(0.2, 0.5)) == INCONCLUSIVE
    assert verdict_from_intervals(Interval(0.6, 0.7), Interval(0.2, 0.5)) == VIOLATES


def test_wilson_contains_phat():
    ci = wilson(30, 100, 0.99)
    assert ci.lo < 0.3 < ci.hi
    assert wilson(0, 100, 0.99).lo == 0.0


def test_argument_validation(e1):
    p = BoundParams((1,), (1,), 1)
    with pytest.raises(ValueError):
        mc_estimate(e1, p, 50, 0)
    with pytest.raises(InvalidLevel):
        mc_estimate(e1, p, 1000, 0, level=1.5)


def test_finite_estimates_cover_exact_values(e2):
    p = BoundParams((2,), (0,), 1)
    r = mc_estimate(e2, p, 20_000, 3)
    assert float(tail_u(e2, p.zeta)) in r.lhs.ci
    assert float(tail_u(e2, 0)) in r.estimates["tail[1]"].ci
    exact = evaluate_hj(e2, p)
    assert r.rhs["max-increment"].lo <= float(exact.rhs) <= r.rhs["max-increment"].hi


def test_chunking_does_not_change_results(e2):
    p = BoundParams.lt(1, 0)
    a = mc_estimate(e2, p, 3000, 9, chunk_size=3000)
    b = mc_estimate(e2, p, 3000, 9, chunk_size=700)
    assert a.estimates == b.estimates


def test_workers_do_not_change_results():
    sc = gaussian_walk(5)
    p = BoundParams.lt(2, 1)
    a = mc_estimate(sc, p, 4000, 1, chunk_size=1000, workers=1)
    b = mc_estimate(sc, p, 4000, 1, chunk_size=1000, workers=4)
    assert a.estimates == b.estimates and a.rhs == b.rhs


def test_gaussian_lt_never_violates():
    r = mc_estimate(gaussian_walk(), BoundParams.lt(2, 1), 20_000, 5)
    assert r.verdict in (HOLDS, INCONCLUSIVE)
    assert r.zeta == 7.0


def test_circle_arc_steps():
    sg = Circle()
    z = sg.element(0.0)
    sc = Scenario(sg, (ArcStep(0.5),) * 6, z, z)
    r = mc_estimate(sc, BoundParams((2,), (F(1, 2),), F(1, 4)), 5000, 2)
    # each |step| exceeds 1/4 with probability 1/2
    assert 1 - 0.5**6 in r.estimates["max_tail"].ci
    assert r.verdict != VIOLATES


def test_gaussian_dimension_mismatch():
    sg = Euclidean(3)
    z = sg.element((0.0, 0.0, 0.0))
    sc = Scenario(sg, (GaussianStep((0.0, 0.0), 1.0),) * 2, z, z)
    with pytest.raises(ValueError):
        mc_estimate(sc, BoundParams.lt(1, 1), 200, 0)


def test_bad_step_law():
    with pytest.raises(ValueError):
        GaussianStep((0.0,), 0.0)
    with pytest.raises(ValueError):
        ArcStep(-1.0)
