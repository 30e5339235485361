"""Seeded generation of random exact scenarios and bound parameters."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundParams, TailVariant, evaluate_hj, hm_bound, lt_bound
from .distributions import Scenario, make_distribution
from .proof import verify_decomposition
from .semigroup import Cyclic, HammingCube, IntLine, MetricSemigroup, PosInts, SymCayley, SymHamming


@dataclass(frozen=True)
class FuzzLimits:
    min_n: int = 2
    max_n: int = 6
    max_support: int = 3
    max_k: int = 3


def _random_family(rng: random.Random) -> MetricSemigroup:
    pick = rng.randrange(6)
    if pick == 0:
        return IntLine()
    if pick == 1:
        return PosInts()
    if pick == 2:
        return Cyclic(rng.randint(2, 7))
    if pick == 3:
        return HammingCube(rng.randint(2, 4))
    if pick == 4:
        return SymCayley(rng.randint(3, 4))
    return SymHamming(rng.randint(3, 4))


def _small_element(sg: MetricSemigroup, rng: random.Random):
    if isinstance(sg, IntLine):
        return sg.element(rng.randint(-3, 3))
    if isinstance(sg, PosInts):
        return sg.element(rng.randint(1, 4))
    return sg.random_element(rng)


def _random_probs(size: int, rng: random.Random) -> list[Fraction]:
    weights = [rng.randint(1, 6) for _ in range(size)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def _distance_scale(sg: MetricSemigroup) -> int:
    if isinstance(sg, Cyclic):
        return max(1, sg.m // 2)
    if isinstance(sg, HammingCube):
        return sg.m
    if isinstance(sg, (SymCayley, SymHamming)):
        return sg.n
    return 4


def random_scenario(rng: random.Random, limits: FuzzLimits = FuzzLimits()) -> Scenario:
    sg = _random_family(rng)
    n = rng.randint(limits.min_n, limits.max_n)
    laws = []
    for _ in range(n):
        size = rng.randint(1, limits.max_support)
        support = list(dict.fromkeys(_small_element(sg, rng) for _ in range(size)))
        laws.append(make_distribution(list(zip(support, _random_probs(len(support), rng)))))
    z0 = _small_element(sg, rng)
    z1 = z0 if rng.random() < 0.5 else _small_element(sg, rng)
    return Scenario(sg, tuple(laws), z0, z1)


def _threshold(rng: random.Random, scale: int) -> Fraction:
    if rng.random() < 0.2:
        return Fraction(0)
    return Fraction(rng.randint(0, 2 * scale), rng.choice((1, 2, 3)))


def random_params(sc: Scenario, rng: random.Random, limits: FuzzLimits = FuzzLimits()) -> BoundParams:
    n = sc.n
    k = rng.randint(1, min(limits.max_k, n + 1))
    K = rng.randint(k, n + 1)
    # random composition of K into k positive parts
    cuts = sorted(rng.sample(range(1, K), k - 1))
    n_vec = [b - a for a, b in zip([0] + cuts, cuts + [K])]
    scale = _distance_scale(sc.sg)
    t_vec = [_threshold(rng, scale) for _ in range(k)]
    s = _threshold(rng, max(1, scale // 2))
    return BoundParams(tuple(n_vec), tuple(t_vec), s)


def case_rng(seed: int, index: int) -> random.Random:
    """Independent stream for case ``index`` so cases can be generated in any order."""
    return random.Random(f"hj-fuzz:{seed}:{index}")


def fuzz_case(seed: int, index: int, limits: FuzzLimits = FuzzLimits()) -> tuple[Scenario, BoundParams]:
    rng = case_rng(seed, index)
    sc = random_scenario(rng, limits)
    return sc, random_params(sc, rng, limits)


@dataclass
class CaseResult:
    index: int
    holds_max: bool
    holds_order: bool
    slack_max: Fraction
    slack_order: Fraction
    order_le_max: bool
    proof_failures: list[str] = field(default_factory=list)
    anchor_gap: bool = False
    prior: dict[str, bool] = field(default_factory=dict)


def run_case(seed: int, index: int, limits: FuzzLimits = FuzzLimits(), proof: bool = True, prior: bool = False) -> CaseResult:
    sc, p = fuzz_case(seed, index, limits)
    rmax = evaluate_hj(sc, p, TailVariant.MAX_INCREMENT)
    rord = evaluate_hj(sc, p, TailVariant.ORDER_STATISTIC)
    res = CaseResult(
        index,
        rmax.holds,
        rord.holds,
        rmax.slack,
        rord.slack,
        rord.tail_term <= rmax.tail_term and (p.K != 1 or rord.tail_term == 0),
    )
    if proof:
        dec = verify_decomposition(sc, p)
        res.anchor_gap = dec.anchor_gap_exceeds_t1
        res.proof_failures = [c.name for c in dec.failures()]
    if prior:
        t, s = p.t_vec[0], p.s
        lt = lt_bound(sc, t, s)
        hm = hm_bound(sc, p.K, t, s)
        res.prior = {"lt_holds": lt.holds, **{f"lt_{k}": v for k, v in lt.checks.items()}}
        res.prior.update({"hm_holds": hm.holds, **{f"hm_{k}": v for k, v in hm.checks.items()}})
    return res
