from fractions import Fraction as F

import pytest

from hjsemigroup import BoundParams, p_first_passage, p_increment, stopping_times, verify_decomposition, verify_ebounds
from hjsemigroup.distributions import Outcome, exact_paths, path_statistics
from hjsemigroup.fuzzing import fuzz_case
from hjsemigroup.proof import omega1_membership

from conftest import brute_paths


def up_path(sc):
    return Outcome((sc.sg.element(1),) * sc.n, F(1, 2**sc.n))


def oracle_first_passage(sc, beta, t):
    sg = sc.sg
    total = F(0)
    for prob, S, U, Y in brute_paths(sc):
        exc = [sg.distance(sc.z1, sg.combine(sc.z0, s)) for s in S]
        if exc[beta - 1] > t and all(e <= t for e in exc[: beta - 1]):
            total += prob
    return total


def oracle_increment(sc, alpha, beta, t):
    sg = sc.sg
    total = F(0)
    for prob, S, U, Y in brute_paths(sc):
        pts = [sc.z0] + [sg.combine(sc.z0, s) for s in S]
        if sg.distance(pts[alpha], pts[beta]) > 2 * t and all(
            sg.distance(pts[alpha], pts[j]) <= 2 * t for j in range(alpha, beta)
        ):
            total += prob
    return total


def test_stopping_times_complete(e2):
    prof = stopping_times(e2, up_path(e2), BoundParams((2,), (0,), 0))
    assert prof.m == (1, 2) and prof.complete


def test_stopping_times_incomplete(e2):
    prof = stopping_times(e2, up_path(e2), BoundParams((2,), (1,), 0))
    assert prof.m == (2,) and not prof.complete


def test_stopping_times_empty_when_no_passage(e2):
    prof = stopping_times(e2, up_path(e2), BoundParams((1,), (3,), 0))
    assert prof.m == () and not prof.complete


def test_omega1_membership(e2):
    st = path_statistics(e2, up_path(e2))
    assert omega1_membership(st, BoundParams((2,), (0,), 2))
    assert not omega1_membership(st, BoundParams((2,), (0,), F(1, 2)))
    assert not omega1_membership(st, BoundParams((1,), (3,), 0))


def test_first_passage_e2(e2):
    assert [p_first_passage(e2, b, 1) for b in (1, 2, 3)] == [0, F(1, 2), 0]


def test_first_passage_e1(e1):
    assert [p_first_passage(e1, b, 0) for b in (1, 2)] == [1, 0]


def test_first_passage_impossible(e2):
    assert all(p_first_passage(e2, b, 3) == 0 for b in (1, 2, 3))


@pytest.mark.parametrize("alpha, beta, t, expected", [(1, 3, F(1, 2), F(1, 2)), (1, 2, 0, 1), (2, 3, 1, 0)])
def test_increment_e2(e2, alpha, beta, t, expected):
    assert p_increment(e2, alpha, beta, t) == expected
    assert oracle_increment(e2, alpha, beta, t) == expected


def test_ebounds_e2(e2):
    names = {c.name.split("[")[0]: c for c in verify_ebounds(e2, 1, 3, F(1, 2))}
    assert names["increment_le_tail"].passed
    assert names["increment_le_tail"].detail == "1/2 <= 1"
    names = {c.name.split("[")[0]: c for c in verify_ebounds(e2, 1, 3, 1)}
    assert names["increment_le_conditioned"].passed
    assert names["increment_le_conditioned"].detail == "0 <= 1/2"
    (only,) = verify_ebounds(e2, 0, 3, 1)
    assert only.passed and only.detail == "sum p_beta=1/2, P(U_gamma>t)=1/2"


def test_ebounds_bad_range(e2):
    with pytest.raises(ValueError):
        verify_ebounds(e2, 2, 2, 1)


def test_decomposition_e2_member_blocks(e2):
    r = verify_decomposition(e2, BoundParams((2,), (0,), 2))
    assert r.passed, r.failures()
    assert r.p_omega1 == F(1, 4)
    assert r.blocks == {(1, 2): F(1, 4)}
    assert r.product_bounds[(1, 2)] == 1
    assert r.product_bounds.get((1, 3), 0) == 0 and r.product_bounds.get((2, 3), 0) == 0
    assert r.S_tilde == 1


def test_decomposition_e2_empty_omega1(e2):
    r = verify_decomposition(e2, BoundParams((2,), (0,), F(1, 2)))
    assert r.passed and r.p_omega1 == 0 and not r.blocks


def test_decomposition_e1_tight(e1):
    r = verify_decomposition(e1, BoundParams((1,), (1,), 1))
    assert r.passed
    assert r.blocks == {(2,): F(1, 2)}
    assert r.product_bounds[(2,)] == F(1, 2)


@pytest.mark.parametrize("index", range(25))
def test_passage_tables_match_oracle(index):
    sc, p = fuzz_case(55, index)
    for t in set(p.t_vec):
        for beta in range(1, sc.n + 1):
            assert p_first_passage(sc, beta, t) == oracle_first_passage(sc, beta, t)
            for alpha in range(beta):
                assert p_increment(sc, alpha, beta, t) == oracle_increment(sc, alpha, beta, t)


def _close_anchor_cases(seed, count):
    out = []
    for i in range(count):
        sc, p = fuzz_case(seed, i)
        if sc.sg.distance(sc.z1, sc.z0) <= p.t_vec[0]:
            out.append(i)
    return out


@pytest.mark.parametrize("index", _close_anchor_cases(7, 200))
def test_replay_passes_when_anchor_gap_within_t1(index):
    """Every proof claim holds on fuzzed cases whose anchors satisfy d(z1, z0) <= t_1."""
    sc, p = fuzz_case(7, index)
    r = verify_decomposition(sc, p)
    assert r.passed, [c.name for c in r.failures()]
    for t in set(p.t_vec):
        for gamma in range(1, sc.n + 1):
            for alpha in range(gamma):
                assert all(c.passed for c in verify_ebounds(sc, alpha, gamma, t))


def test_partition_covers_omega1(e2):
    p = BoundParams((1, 1), (0, 0), 1)
    r = verify_decomposition(e2, p)
    members = sum(o.prob for o, st in exact_paths(e2) if omega1_membership(st, p))
    assert sum(r.blocks.values()) == members == r.p_omega1
