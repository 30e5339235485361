"""Finitely supported product laws, exact enumeration and per-path statistics.

All probabilities are :class:`fractions.Fraction`; nothing on the exact path
ever touches a float.
"""

from __future__ import annotations

import bisect
import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, InstanceMismatch, NonPositiveProbability, ProbabilitiesDoNotSumToOne
from .semigroup import Element, MetricSemigroup, Scalar

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class FiniteDistribution:
    support: tuple[tuple[Element, Fraction], ...]

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(e for e, _ in self.support)

    @property
    def probs(self) -> tuple[Fraction, ...]:
        return tuple(p for _, p in self.support)

    def __len__(self) -> int:
        return len(self.support)

    @functools.cached_property
    def cumulative(self) -> tuple[float, ...]:
        """Float CDF used only for sampling."""
        return tuple(float(c) for c in itertools.accumulate(self.probs))

    def draw(self, u: float) -> int:
        """Support index selected by a uniform ``u`` in ``[0, 1)``."""
        return min(bisect.bisect_right(self.cumulative, u), len(self.support) - 1)


def make_distribution(pairs: Sequence[tuple[Element, object]]) -> FiniteDistribution:
    """Validate ``(element, probability)`` pairs; duplicates are merged."""
    if not pairs:
        raise ValueError("a distribution needs at least one support point")
    merged: dict[Element, Fraction] = {}
    instance = None
    for el, p in pairs:
        if not isinstance(el, Element):
            raise InstanceMismatch(f"{el!r} is not an Element")
        if instance is None:
            instance = el.instance
        elif el.instance != instance:
            raise InstanceMismatch(f"support mixes {instance} and {el.instance}")
        p = Fraction(p)
        if p <= 0:
            raise NonPositiveProbability(f"probability {p} of {el!r} is not positive")
        merged[el] = merged.get(el, Fraction(0)) + p
    total = sum(merged.values())
    if total != 1:
        raise ProbabilitiesDoNotSumToOne(f"probabilities sum to {total}")
    return FiniteDistribution(tuple(merged.items()))


def point_mass(el: Element) -> FiniteDistribution:
    return make_distribution([(el, 1)])


def uniform(elements: Sequence[Element]) -> FiniteDistribution:
    return make_distribution([(e, Fraction(1, len(elements))) for e in elements])


@dataclass(frozen=True)
class Scenario:
    """``n`` independent variables with the given laws, plus the anchors ``z0`` and ``z1``.

    Laws are usually :class:`FiniteDistribution`; the Monte Carlo runner also
    accepts continuous step laws, in which case the exact routines refuse the
    scenario.
    """

    sg: MetricSemigroup
    laws: tuple
    z0: Element
    z1: Element

    def __post_init__(self):
        object.__setattr__(self, "laws", tuple(self.laws))
        if not self.laws:
            raise ValueError("a scenario needs n >= 1 variables")
        self.sg._check(self.z0, self.z1)
        for law in self.laws:
            if isinstance(law, FiniteDistribution):
                self.sg._check(*law.elements)

    @property
    def n(self) -> int:
        return len(self.laws)

    @property
    def is_finite(self) -> bool:
        return all(isinstance(law, FiniteDistribution) for law in self.laws)

    @property
    def is_exact(self) -> bool:
        return self.sg.exact and self.is_finite

    def outcome_count(self) -> int:
        if not self.is_finite:
            raise TypeError("scenario has continuous laws and cannot be enumerated")
        return math.prod(len(law) for law in self.laws)


def iid_scenario(sg: MetricSemigroup, law, n: int, z0=None, z1=None) -> Scenario:
    """``n`` copies of one law.  Anchors default to the first support point, ``z1`` to ``z0``."""
    z0 = sg.element(z0) if z0 is not None else law.elements[0]
    z1 = sg.element(z1) if z1 is not None else z0
    return Scenario(sg, (law,) * n, z0, z1)


@dataclass(frozen=True)
class Outcome:
    values: tuple[Element, ...]
    prob: Fraction
    index: tuple[int, ...] = ()


def _check_budget(sc: Scenario, budget: int) -> int:
    count = sc.outcome_count()
    if count > budget:
        raise BudgetExceeded(f"{count} outcomes exceed the enumeration budget {budget}")
    return count


def enumerate_outcomes(
    sc: Scenario, budget: int = DEFAULT_BUDGET, start: int = 0, stop: int | None = None
) -> Iterator[Outcome]:
    """Every outcome once, in lexicographic order of support indices.

    ``start``/``stop`` select a contiguous chunk of that order, so a reduction
    over chunks sees exactly the same outcomes as a single pass.
    """
    _check_budget(sc, budget)
    ranges = [range(len(law)) for law in sc.laws]
    supports = [law.support for law in sc.laws]
    for idx in itertools.islice(itertools.product(*ranges), start, stop):
        prob = Fraction(1)
        values = []
        for law, i in zip(supports, idx):
            el, p = law[i]
            values.append(el)
            prob *= p
        yield Outcome(tuple(values), prob, idx)


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total))
    step, rem = divmod(total, chunks)
    out, lo = [], 0
    for c in range(chunks):
        hi = lo + step + (c < rem)
        out.append((lo, hi))
        lo = hi
    return out


@dataclass(frozen=True)
class PathStats:
    """Statistics of one sample path.

    ``excursion[j-1]`` is ``d(z1, z0 S_j)`` so that ``U`` is its maximum.
    """

    S: tuple[Element, ...]
    excursion: tuple[Scalar, ...]
    U: Scalar
    Y: tuple[Scalar, ...]
    M: Scalar
    Ysorted: tuple[Scalar, ...] = field(repr=False)

    def top_sum(self, K: int) -> Scalar:
        """Sum of the ``K - 1`` largest increments (zero when ``K == 1``)."""
        n = len(self.Y)
        if not 1 <= K <= n + 1:
            raise ValueError(f"K={K} outside 1..{n + 1}")
        return sum(self.Ysorted[n - K + 1 :], 0)

    def running_max(self, gamma: int) -> Scalar:
        """``U_gamma``: the maximum excursion over the first ``gamma`` partial products."""
        return max(self.excursion[:gamma])


def _stats_from_values(sg: MetricSemigroup, z0: Element, z1: Element, values: Sequence[Element]) -> PathStats:
    S = []
    acc = None
    for x in values:
        acc = x if acc is None else sg.combine(acc, x)
        S.append(acc)
    exc = tuple(sg.distance(z1, sg.combine(z0, s)) for s in S)
    Y = tuple(sg.distance(z0, sg.combine(z0, x)) for x in values)
    return PathStats(tuple(S), exc, max(exc), Y, max(Y), tuple(sorted(Y)))


def path_statistics(sc: Scenario, out: Outcome, K: int | None = None) -> PathStats:
    if K is not None and not 1 <= K <= sc.n + 1:
        raise ValueError(f"K={K} must lie in 1..n+1={sc.n + 1}")
    if len(out.values) != sc.n:
        raise ValueError("outcome length does not match the scenario")
    sc.sg._check(*out.values)
    return _stats_from_values(sc.sg, sc.z0, sc.z1, out.values)


@functools.lru_cache(maxsize=128)
def _table(sc: Scenario, budget: int) -> tuple[tuple[Outcome, PathStats], ...]:
    return tuple((o, path_statistics(sc, o)) for o in enumerate_outcomes(sc, budget))


def exact_paths(sc: Scenario, budget: int = DEFAULT_BUDGET) -> tuple[tuple[Outcome, PathStats], ...]:
    """All ``(outcome, stats)`` pairs, cached per scenario."""
    if not sc.is_exact:
        raise TypeError("exact enumeration needs an exact family and finite laws")
    _check_budget(sc, budget)
    return _table(sc, budget)


def event_probability(
    sc: Scenario, predicate: Callable[[Outcome, PathStats], bool], budget: int = DEFAULT_BUDGET
) -> Fraction:
    return sum((o.prob for o, st in exact_paths(sc, budget) if predicate(o, st)), Fraction(0))


def sample_outcome(sc: Scenario, rng, index: int = 0) -> Outcome:
    """The ``index``-th draw of ``rng`` (a :class:`~hjsemigroup.rng.CounterRng`)."""
    if not sc.is_finite:
        raise TypeError("sample_outcome handles finite laws; use the Monte Carlo runner otherwise")
    idx = []
    values = []
    prob = Fraction(1)
    for j, law in enumerate(sc.laws):
        u = float(rng.uniforms(j, index, 1)[0, 0])
        i = law.draw(u)
        idx.append(i)
        el, p = law.support[i]
        values.append(el)
        prob *= p
    return Outcome(tuple(values), prob, tuple(idx))
