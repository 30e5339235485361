"""Exact evaluation of the generalized Hoffmann-Jorgensen tail bound.

For block sizes ``n_1..n_k`` (with ``K = sum(n_i) <= n + 1``), thresholds
``t_1..t_k`` and ``s``, the bound reads::

    P(U_n > zeta) <= P(U_n <= t_1)^[1 not in I0]
                     * prod_{i in I0} P(U_n > t_i)^n_i
                     * prod_{i not in I0} (1/n_i!) (P(U_n > t_i) / P(U_n <= t_i))^n_i
                     + tail

with ``zeta = (2 n_1 - 1) t_1 + 2 sum_{i>=2} n_i t_i + (K - 1) s`` and ``tail``
either ``P(M_n > s)`` or the sharper ``P(sum of the K-1 largest Y_j > (K-1) s)``.

The Ledoux-Talagrand and Hitczenko-Montgomery-Smith inequalities are recovered
through :meth:`BoundParams.lt` and :meth:`BoundParams.hm`.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .distributions import DEFAULT_BUDGET, Scenario, exact_paths
from .errors import HypothesisViolated, InternalCheckFailed


class TailVariant(str, enum.Enum):
    MAX_INCREMENT = "max-increment"
    ORDER_STATISTIC = "order-statistic"

    @classmethod
    def parse(cls, value) -> "TailVariant":
        if isinstance(value, cls):
            return value
        aliases = {"max": cls.MAX_INCREMENT, "order": cls.ORDER_STATISTIC}
        if value in aliases:
            return aliases[value]
        return cls(value)


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class BoundParams:
    n_vec: tuple[int, ...]
    t_vec: tuple[Fraction, ...]
    s: Fraction

    def __post_init__(self):
        n_vec = tuple(int(v) for v in self.n_vec)
        t_vec = tuple(_frac(t) for t in self.t_vec)
        s = _frac(self.s)
        if not n_vec:
            raise ValueError("need k >= 1 blocks")
        if len(n_vec) != len(t_vec):
            raise ValueError("n_vec and t_vec must have the same length")
        if any(v < 1 for v in n_vec):
            raise ValueError("block sizes must be positive")
        if any(t < 0 for t in t_vec) or s < 0:
            raise ValueError("thresholds must be nonnegative")
        object.__setattr__(self, "n_vec", n_vec)
        object.__setattr__(self, "t_vec", t_vec)
        object.__setattr__(self, "s", s)

    @classmethod
    def lt(cls, t, s) -> "BoundParams":
        """Two blocks of size one at the same threshold (Ledoux-Talagrand form)."""
        return cls((1, 1), (t, t), s)

    @classmethod
    def hm(cls, K: int, t, s) -> "BoundParams":
        """One block of size ``K`` (Hitczenko-Montgomery-Smith form)."""
        return cls((K,), (t,), s)

    @property
    def k(self) -> int:
        return len(self.n_vec)

    @property
    def K(self) -> int:
        return sum(self.n_vec)

    @property
    def offsets(self) -> tuple[int, ...]:
        """``s_i = n_1 + ... + n_{i-1}`` for ``i = 1..k+1``."""
        out = [0]
        for v in self.n_vec:
            out.append(out[-1] + v)
        return tuple(out)

    @property
    def schedule(self) -> tuple[Fraction, ...]:
        """``t'_l`` for ``l = 1..K``: block ``i`` repeats ``t_i`` ``n_i`` times."""
        return tuple(t for v, t in zip(self.n_vec, self.t_vec) for _ in range(v))

    @property
    def zeta(self) -> Fraction:
        t = self.t_vec
        return (2 * self.n_vec[0] - 1) * t[0] + 2 * sum(
            (v * ti for v, ti in zip(self.n_vec[1:], t[1:])), Fraction(0)
        ) + (self.K - 1) * self.s

    def check(self, n: int) -> None:
        if self.K > n + 1:
            raise HypothesisViolated(
                f"sum of block sizes K={self.K} exceeds n+1={n + 1} (hypothesis sum(n_i) <= n+1)"
            )


def specialize(kind: str, *args) -> BoundParams:
    """``specialize("LT", t, s)`` or ``specialize("HM", K, t, s)``."""
    kind = kind.upper()
    if kind == "LT":
        return BoundParams.lt(*args)
    if kind == "HM":
        return BoundParams.hm(*args)
    raise ValueError(f"unknown specialization {kind!r}")


def zeta(p: BoundParams) -> Fraction:
    return p.zeta


# ---------------------------------------------------------------------------
# exact probabilities


def tail_u(sc: Scenario, t, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``P(U_n > t)``."""
    t = _frac(t)
    return sum((o.prob for o, st in exact_paths(sc, budget) if st.U > t), Fraction(0))


def cdf_u(sc: Scenario, t, budget: int = DEFAULT_BUDGET) -> Fraction:
    return 1 - tail_u(sc, t, budget)


def tail_term(sc: Scenario, p: BoundParams, variant="max-increment", budget: int = DEFAULT_BUDGET) -> Fraction:
    variant = TailVariant.parse(variant)
    p.check(sc.n)
    if variant is TailVariant.MAX_INCREMENT:
        return sum((o.prob for o, st in exact_paths(sc, budget) if st.M > p.s), Fraction(0))
    K, bar = p.K, (p.K - 1) * p.s
    return sum((o.prob for o, st in exact_paths(sc, budget) if st.top_sum(K) > bar), Fraction(0))


def _in_i0(cdf: Fraction, n_i: int, first: bool) -> bool:
    # Fraction(0) ** 0 == 1, which is the convention needed for n_1 = 1
    return cdf ** (n_i - first) <= Fraction(1, math.factorial(n_i))


def compute_I0(sc: Scenario, p: BoundParams, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    """1-based block indices ``i`` with ``P(U_n <= t_i)^(n_i - [i == 1]) <= 1/n_i!``."""
    return frozenset(
        i + 1
        for i, (v, t) in enumerate(zip(p.n_vec, p.t_vec))
        if _in_i0(cdf_u(sc, t, budget), v, i == 0)
    )


def main_term_product_form(tails: Sequence[Fraction], p: BoundParams) -> tuple[Fraction, frozenset[int]]:
    """The first right-hand term from block tails ``P(U_n > t_i)``, with branches chosen via I0."""
    value = Fraction(1)
    members = set()
    for i, (v, a) in enumerate(zip(p.n_vec, tails)):
        b = 1 - a
        if _in_i0(b, v, i == 0):
            members.add(i + 1)
            value *= a**v
        else:
            value *= Fraction(1, math.factorial(v)) * (a / b) ** v
    if 1 not in members:
        value *= 1 - tails[0]
    return value, frozenset(members)


def main_term_min_form(tails: Sequence[Fraction], p: BoundParams) -> Fraction:
    """Same quantity written as ``prod P(U>t_i)^n_i min(1, 1/(n_i! P(U<=t_i)^(n_i - [i==1])))``."""
    value = Fraction(1)
    for i, (v, a) in enumerate(zip(p.n_vec, tails)):
        denom = math.factorial(v) * (1 - a) ** (v - (i == 0))
        value *= a**v * (min(Fraction(1), 1 / Fraction(denom)) if denom else 1)
    return value


def _block_tails(sc: Scenario, p: BoundParams, budget: int) -> tuple[Fraction, ...]:
    return tuple(tail_u(sc, t, budget) for t in p.t_vec)


def rhs_main(sc: Scenario, p: BoundParams, budget: int = DEFAULT_BUDGET) -> Fraction:
    p.check(sc.n)
    tails = _block_tails(sc, p, budget)
    value, _ = main_term_product_form(tails, p)
    if value != main_term_min_form(tails, p):
        raise InternalCheckFailed(f"product and min forms disagree for {p}")
    return value


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class BlockFactor:
    index: int
    n_i: int
    t_i: Fraction
    tail: Fraction
    cdf: Fraction
    in_I0: bool
    factor: Fraction


@dataclass
class EvaluationReport:
    params: BoundParams
    tail_variant: TailVariant
    zeta: Fraction
    lhs: Fraction
    I0: frozenset[int]
    main_term: Fraction
    factors: list[BlockFactor]
    tail_term: Fraction
    rhs: Fraction
    holds: bool
    slack: Fraction
    anchor_gap: object = None
    notes: list[str] = field(default_factory=list)


def evaluate_hj(
    sc: Scenario, p: BoundParams, variant="max-increment", budget: int = DEFAULT_BUDGET
) -> EvaluationReport:
    """Both sides of the bound, exactly.  ``holds`` is False only if something is broken."""
    variant = TailVariant.parse(variant)
    p.check(sc.n)
    if not sc.is_exact:
        raise TypeError("evaluate_hj needs an exact scenario; use the Monte Carlo runner")
    tails = _block_tails(sc, p, budget)
    main, members = main_term_product_form(tails, p)
    if main != main_term_min_form(tails, p):
        raise InternalCheckFailed(f"product and min forms disagree for {p}")
    factors = []
    for i, (v, t, a) in enumerate(zip(p.n_vec, p.t_vec, tails)):
        b = 1 - a
        if (i + 1) in members:
            f = a**v
        else:
            f = Fraction(1, math.factorial(v)) * (a / b) ** v
        factors.append(BlockFactor(i + 1, v, t, a, b, (i + 1) in members, f))
    z = p.zeta
    lhs = tail_u(sc, z, budget)
    tail = tail_term(sc, p, variant, budget)
    rhs = main + tail
    report = EvaluationReport(p, variant, z, lhs, members, main, factors, tail, rhs, lhs <= rhs, rhs - lhs)
    report.anchor_gap = sc.sg.distance(sc.z1, sc.z0)
    if 0 in p.t_vec or p.s == 0:
        report.notes.append("zero threshold")
    return report


@dataclass
class PriorBoundReport:
    which: str
    lhs: Fraction
    rhs: Fraction | None
    holds: bool
    degenerate: bool = False
    zero_parameter: bool = False
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def rhs_infinite(self) -> bool:
        return self.rhs is None


def lt_bound(sc: Scenario, t, s, budget: int = DEFAULT_BUDGET) -> PriorBoundReport:
    """``P(U_n > 3t + s) <= P(U_n > t)^2 + P(M_n > s)``, compared with the general bound."""
    t, s = _frac(t), _frac(s)
    a = tail_u(sc, t, budget)
    p = BoundParams.lt(t, s)
    tail = tail_term(sc, p, TailVariant.MAX_INCREMENT, budget)
    lhs = tail_u(sc, 3 * t + s, budget)
    rhs = a * a + tail
    general = evaluate_hj(sc, p, TailVariant.MAX_INCREMENT, budget)
    rep = PriorBoundReport("LT", lhs, rhs, lhs <= rhs, zero_parameter=(t == 0 or s == 0))
    rep.checks["matches_general_rhs"] = general.rhs == rhs
    rep.checks["matches_general_lhs"] = general.lhs == lhs
    rep.checks["I0_is_both_blocks"] = general.I0 == frozenset({1, 2})
    return rep


def hm_bound(sc: Scenario, K: int, t, s, budget: int = DEFAULT_BUDGET) -> PriorBoundReport:
    """``P(U_n > 2Kt + (K-1)s) <= (1/K!)(P(U>t)/P(U<=t))^K + P(M_n > s)`` and its domination chain."""
    t, s = _frac(t), _frac(s)
    if K < 1:
        raise ValueError("K must be positive")
    a = tail_u(sc, t, budget)
    b = 1 - a
    p = BoundParams.hm(K, t, s)
    tail = sum((o.prob for o, st in exact_paths(sc, budget) if st.M > s), Fraction(0))
    lhs = tail_u(sc, 2 * K * t + (K - 1) * s, budget)
    if b == 0:
        rep = PriorBoundReport("HM", lhs, None, True, degenerate=True)
    else:
        rhs = Fraction(1, math.factorial(K)) * (a / b) ** K + tail
        rep = PriorBoundReport("HM", lhs, rhs, lhs <= rhs)
    rep.zero_parameter = t == 0 or s == 0
    if K <= sc.n + 1:
        general = evaluate_hj(sc, p, TailVariant.MAX_INCREMENT, budget)
        rep.checks["lhs_le_general_lhs"] = lhs <= general.lhs
        rep.checks["general_holds"] = general.holds
        if not rep.degenerate:
            rep.checks["general_rhs_le_hm_rhs"] = general.rhs <= rep.rhs
    return rep
