import math
import random
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from hjsemigroup import BoundParams, TailVariant, evaluate_hj, tail_term, verify_ebounds
from hjsemigroup.bounds import main_term_min_form, main_term_product_form
from hjsemigroup.distributions import Scenario, enumerate_outcomes, exact_paths, path_statistics
from hjsemigroup.fuzzing import FuzzLimits, random_params, random_scenario
from hjsemigroup.montecarlo import wilson
from hjsemigroup.semigroup import Cyclic, HammingCube, IntLine, PosInts, SymCayley, SymHamming

FAMILIES = [IntLine(), PosInts(), Cyclic(5), HammingCube(4), SymCayley(4), SymHamming(4)]
SMALL = FuzzLimits(max_n=4, max_support=2)


@st.composite
def family_and_elements(draw, count):
    sg = draw(st.sampled_from(FAMILIES))
    rng = random.Random(draw(st.integers(0, 2**32)))
    return sg, [sg.random_element(rng) for _ in range(count)]


@st.composite
def scenarios(draw, same_anchor=False):
    rng = random.Random(draw(st.integers(0, 2**32)))
    sc = random_scenario(rng, SMALL)
    if same_anchor:
        sc = Scenario(sc.sg, sc.laws, sc.z0, sc.z0)
    return sc, random_params(sc, rng, SMALL)


@given(family_and_elements(3))
def test_translation_invariance(args):
    sg, (a, b, c) = args
    d = sg.distance(a, b)
    assert sg.distance(sg.combine(a, c), sg.combine(b, c)) == d
    assert sg.distance(sg.combine(c, a), sg.combine(c, b)) == d


@given(family_and_elements(3))
def test_associativity(args):
    sg, (a, b, c) = args
    assert sg.combine(sg.combine(a, b), c) == sg.combine(a, sg.combine(b, c))


@given(family_and_elements(4))
def test_product_triangle(args):
    sg, (y1, y2, z1, z2) = args
    assert sg.distance(sg.combine(y1, y2), sg.combine(z1, z2)) <= sg.distance(y1, z1) + sg.distance(y2, z2)


@given(family_and_elements(2))
def test_increment_norm_is_anchor_free(args):
    sg, (a, b) = args
    assert sg.distance(a, sg.combine(b, a)) == sg.distance(b, sg.combine(b, b)) == sg.distance(a, sg.combine(a, b))


@settings(max_examples=60)
@given(scenarios())
def test_enumeration_is_normalized(case):
    sc, _ = case
    outs = list(enumerate_outcomes(sc))
    assert sum(o.prob for o in outs) == 1
    assert len({o.index for o in outs}) == len(outs) == sc.outcome_count()


@settings(max_examples=60)
@given(scenarios())
def test_path_statistics_invariants(case):
    sc, _ = case
    n = sc.n
    other = Scenario(sc.sg, sc.laws, sc.z1, sc.z0)
    for o, s in exact_paths(sc):
        assert all(sc.sg.combine(s.S[j], o.values[j + 1]) == s.S[j + 1] for j in range(n - 1))
        assert s.M == s.Ysorted[-1] and s.top_sum(1) == 0
        tops = [s.top_sum(K) for K in range(1, n + 2)]
        assert tops == sorted(tops)
        for K in range(1, n + 2):
            assert s.top_sum(K) <= (K - 1) * s.M
            assert s.top_sum(K) + sum(s.Ysorted[: n - K + 1]) == sum(s.Y)
        moved = path_statistics(other, o)
        assert moved.Y == s.Y and moved.M == s.M


@settings(max_examples=80)
@given(st.lists(st.fractions(0, 1), min_size=1, max_size=3), st.data())
def test_main_term_forms_agree(tails, data):
    n_vec = tuple(data.draw(st.integers(1, 4)) for _ in tails)
    p = BoundParams(n_vec, tuple(range(len(tails))), 0)
    value, members = main_term_product_form(tails, p)
    assert value == main_term_min_form(tails, p)
    for i, (a, v) in enumerate(zip(tails, n_vec)):
        b = 1 - F(a)
        exp = v - (i == 0)
        assert ((i + 1) in members) == ((b**exp if exp else 1) <= F(1, math.factorial(v)))


@settings(max_examples=80)
@given(scenarios())
def test_order_statistic_tail_dominated(case):
    sc, p = case
    order = tail_term(sc, p, TailVariant.ORDER_STATISTIC)
    assert order <= tail_term(sc, p, TailVariant.MAX_INCREMENT)
    if p.K == 1:
        assert order == 0


@settings(max_examples=80)
@given(scenarios(same_anchor=True))
def test_bound_holds_with_common_anchor(case):
    sc, p = case
    for variant in TailVariant:
        assert evaluate_hj(sc, p, variant).holds


@settings(max_examples=40)
@given(scenarios(), st.fractions(0, 4))
def test_first_passage_identity_any_anchors(case, t):
    sc, _ = case
    for gamma in range(1, sc.n + 1):
        checks = verify_ebounds(sc, 0, gamma, t)
        assert all(c.passed for c in checks)


@given(st.integers(100, 10_000), st.data())
def test_wilson_contains_estimate(n, data):
    k = data.draw(st.integers(0, n))
    ci = wilson(k, n, 0.99)
    assert 0.0 <= ci.lo <= k / n <= ci.hi <= 1.0
