"""Exact replay of the objects used to prove the tail bound.

Everything here enumerates the outcome space and checks an intermediate claim
of the argument: first-passage decompositions, the greedy stopping times
``m_1 < ... < m_K``, the partition of the event ``Omega_1`` by stopping vector,
the product bound on each piece, and the block estimates that turn the sum
``S_tilde`` of those products into the right-hand side.

First-passage probabilities ``p_{beta,t}`` constrain the excursion only for
``1 <= j < beta``; with that range ``sum_beta p_{beta,t} = P(U_gamma > t)``
holds exactly for every pair of anchors.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .bounds import BoundParams, TailVariant, _frac, main_term_min_form, rhs_main, tail_term, tail_u
from .distributions import DEFAULT_BUDGET, Outcome, PathStats, Scenario, exact_paths, path_statistics


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None


@dataclass(frozen=True)
class StoppingProfile:
    m: tuple[int, ...]
    complete: bool


def stopping_times(sc: Scenario, out: Outcome, p: BoundParams, stats: PathStats | None = None) -> StoppingProfile:
    """Greedy first-passage indices along the threshold schedule ``t'_1..t'_K``.

    ``m_1`` is the first ``j`` with ``d(z1, z0 S_j) > t'_1``; each later
    ``m_l`` is the first ``j > m_{l-1}`` with ``d(S_{m_{l-1}}, S_j) > 2 t'_l``.
    The profile stops early when some ``m_l`` does not exist.
    """
    st = stats if stats is not None else path_statistics(sc, out)
    sched = p.schedule
    n = sc.n
    m: list[int] = []
    first = next((j for j in range(1, n + 1) if st.excursion[j - 1] > sched[0]), None)
    if first is None:
        return StoppingProfile((), False)
    m.append(first)
    d = sc.sg.distance
    for l in range(1, p.K):
        prev = m[-1]
        bar = 2 * sched[l]
        nxt = next((j for j in range(prev + 1, n + 1) if d(st.S[prev - 1], st.S[j - 1]) > bar), None)
        if nxt is None:
            break
        m.append(nxt)
    return StoppingProfile(tuple(m), len(m) == p.K)


def omega1_membership(stats: PathStats, p: BoundParams) -> bool:
    """``U_n > zeta`` and the ``K-1`` largest increments sum to at most ``(K-1) s``."""
    return stats.U > p.zeta and stats.top_sum(p.K) <= (p.K - 1) * p.s


# ---------------------------------------------------------------------------
# first-passage tables


@dataclass(frozen=True)
class _Row:
    prob: Fraction
    exc: tuple
    # dist[a][b] = d(z0 S_a, z0 S_b) with z0 S_0 := z0; only a < b is filled
    dist: tuple


@functools.lru_cache(maxsize=64)
def _rows(sc: Scenario, budget: int) -> tuple[_Row, ...]:
    sg = sc.sg
    rows = []
    for o, st in exact_paths(sc, budget):
        pts = [sc.z0] + [sg.combine(sc.z0, s) for s in st.S]
        n = len(pts)
        dist = tuple(tuple(sg.distance(pts[a], pts[b]) if b > a else 0 for b in range(n)) for a in range(n))
        rows.append(_Row(o.prob, st.excursion, dist))
    return tuple(rows)


@functools.lru_cache(maxsize=1024)
def first_passage_table(sc: Scenario, t: Fraction, budget: int = DEFAULT_BUDGET) -> tuple[Fraction, ...]:
    """``(p_{1,t}, ..., p_{n,t})``."""
    out = [Fraction(0)] * sc.n
    for r in _rows(sc, budget):
        for j, e in enumerate(r.exc):
            if e > t:
                out[j] += r.prob
                break
    return tuple(out)


@functools.lru_cache(maxsize=1024)
def increment_table(sc: Scenario, t: Fraction, budget: int = DEFAULT_BUDGET) -> tuple[tuple[Fraction, ...], ...]:
    """``table[a][b] = p_{a,b,t}`` for ``0 <= a < b <= n`` (zero elsewhere)."""
    n = sc.n
    bar = 2 * t
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for r in _rows(sc, budget):
        for a in range(n):
            row = r.dist[a]
            for b in range(a + 1, n + 1):
                if row[b] > bar:
                    out[a][b] += r.prob
                    break
    return tuple(tuple(row) for row in out)


def p_first_passage(sc: Scenario, beta: int, t, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``P(d(z1, z0 S_beta) > t >= d(z1, z0 S_j) for 1 <= j < beta)``."""
    if not 1 <= beta <= sc.n:
        raise ValueError(f"beta={beta} outside 1..{sc.n}")
    return first_passage_table(sc, _frac(t), budget)[beta - 1]


def p_increment(sc: Scenario, alpha: int, beta: int, t, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``P(d(z0 S_alpha, z0 S_beta) > 2t >= d(z0 S_alpha, z0 S_j) for alpha <= j < beta)``."""
    if not 0 <= alpha < beta <= sc.n:
        raise ValueError(f"need 0 <= alpha < beta <= n, got {alpha}, {beta}")
    return increment_table(sc, _frac(t), budget)[alpha][beta]


def prob_running_max_le(sc: Scenario, gamma: int, t, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``P(U_gamma <= t)``; ``U_0`` is an empty maximum, so ``P(U_0 <= t) = 1``."""
    t = _frac(t)
    return sum((r.prob for r in _rows(sc, budget) if all(e <= t for e in r.exc[:gamma])), Fraction(0))


def verify_ebounds(sc: Scenario, alpha: int, gamma: int, t, budget: int = DEFAULT_BUDGET) -> list[Check]:
    """The two-way bounds on ``sum_{beta=alpha+1}^gamma p_{alpha,beta,t}``.

    The bounds involving ``p_{alpha,beta,t}`` are stated for ``alpha >= 1``;
    at ``alpha = 0`` only the first-passage identity is checked.
    """
    if not 0 <= alpha < gamma <= sc.n:
        raise ValueError(f"need 0 <= alpha < gamma <= n, got {alpha}, {gamma}")
    t = _frac(t)
    fp = first_passage_table(sc, t, budget)
    inc = increment_table(sc, t, budget)
    tail_gamma = 1 - prob_running_max_le(sc, gamma, t, budget)
    tag = f"alpha={alpha},gamma={gamma},t={t}"
    checks = []
    fp_sum = sum(fp[:gamma], Fraction(0))
    checks.append(
        Check(f"first_passage_identity[{tag}]", fp_sum == tail_gamma, f"sum p_beta={fp_sum}, P(U_gamma>t)={tail_gamma}")
    )
    if alpha >= 1:
        inc_sum = sum(inc[alpha][alpha + 1 : gamma + 1], Fraction(0))
        checks.append(
            Check(f"increment_le_tail[{tag}]", inc_sum <= tail_gamma, f"{inc_sum} <= {tail_gamma}")
        )
        base = prob_running_max_le(sc, alpha, t, budget)
        if base > 0:
            bound = sum(fp[alpha:gamma], Fraction(0)) / base
            checks.append(Check(f"increment_le_conditioned[{tag}]", inc_sum <= bound, f"{inc_sum} <= {bound}"))
    return checks


# ---------------------------------------------------------------------------
# decomposition of Omega_1


def _chain_sums(inc: tuple, start: int, length: int, n: int) -> Fraction:
    """``sum over start < a_1 < ... < a_length <= n`` of ``prod p_{a_{j-1}, a_j}``."""
    weights = {start: Fraction(1)}
    for _ in range(length):
        nxt: dict[int, Fraction] = {}
        for a, w in weights.items():
            for b in range(a + 1, n + 1):
                if inc[a][b]:
                    nxt[b] = nxt.get(b, Fraction(0)) + w * inc[a][b]
        weights = nxt
    return sum(weights.values(), Fraction(0))


def _block_bound(tail: Fraction, n_i: int, exponent: int) -> Fraction:
    denom = math.factorial(n_i) * (1 - tail) ** exponent
    return tail**n_i * (min(Fraction(1), 1 / Fraction(denom)) if denom else 1)


@dataclass
class DecompositionReport:
    params: BoundParams
    lhs: Fraction
    order_tail: Fraction
    p_omega1: Fraction
    blocks: dict[tuple[int, ...], Fraction]
    product_bounds: dict[tuple[int, ...], Fraction]
    S_tilde: Fraction
    rhs_main: Fraction
    anchor_gap_exceeds_t1: bool
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def verify_decomposition(sc: Scenario, p: BoundParams, budget: int = DEFAULT_BUDGET) -> DecompositionReport:
    p.check(sc.n)
    n, K = sc.n, p.K
    sched = p.schedule
    zeta = p.zeta
    fmt = sc.sg.format

    blocks: dict[tuple[int, ...], Fraction] = {}
    p_omega1 = Fraction(0)
    incomplete = None
    for o, st in exact_paths(sc, budget):
        if not omega1_membership(st, p):
            continue
        p_omega1 += o.prob
        prof = stopping_times(sc, o, p, st)
        if not prof.complete:
            if incomplete is None:
                incomplete = {"outcome": [fmt(v) for v in o.values], "profile": list(prof.m)}
            continue
        blocks[prof.m] = blocks.get(prof.m, Fraction(0)) + o.prob

    fp = {t: first_passage_table(sc, t, budget) for t in set(sched)}
    inc = {t: increment_table(sc, t, budget) for t in set(sched)}
    product_bounds = {}
    for m in itertools.combinations(range(1, n + 1), K):
        val = fp[sched[0]][m[0] - 1]
        for j in range(1, K):
            if not val:
                break
            val *= inc[sched[j]][m[j - 1]][m[j]]
        product_bounds[m] = val
    s_tilde = sum(product_bounds.values(), Fraction(0))

    lhs = tail_u(sc, zeta, budget)
    order_tail = tail_term(sc, p, TailVariant.ORDER_STATISTIC, budget)
    main = rhs_main(sc, p, budget)
    gap = sc.sg.distance(sc.z1, sc.z0) > p.t_vec[0]
    rep = DecompositionReport(p, lhs, order_tail, p_omega1, blocks, product_bounds, s_tilde, main, gap)
    add = rep.checks.append

    add(Check("step2_complete_profiles", incomplete is None, "every outcome of Omega_1 has K stopping times", incomplete))
    covered = sum(blocks.values(), Fraction(0))
    add(Check("partition_sum", covered == p_omega1, f"sum P(Omega_m)={covered}, P(Omega_1)={p_omega1}"))
    bad = next(((m, v) for m, v in blocks.items() if v > product_bounds[m]), None)
    add(
        Check(
            "block_product_bound",
            bad is None,
            "P(Omega_m) <= p_{m1,t'1} prod p_{m(j-1),m(j),t'j}",
            None if bad is None else {"m": list(bad[0]), "P": str(bad[1]), "bound": str(product_bounds[bad[0]])},
        )
    )
    add(Check("step1_split", lhs <= order_tail + p_omega1, f"{lhs} <= {order_tail} + {p_omega1}"))
    add(Check("omega1_le_s_tilde", p_omega1 <= s_tilde, f"{p_omega1} <= {s_tilde}"))
    add(Check("esum", lhs <= order_tail + s_tilde, f"{lhs} <= {order_tail} + {s_tilde}"))

    tails = tuple(tail_u(sc, t, budget) for t in p.t_vec)
    offs = p.offsets
    first_sum = Fraction(0)
    t1 = p.t_vec[0]
    fp1, inc1 = fp[t1], inc[t1]
    for m1 in range(1, n + 1):
        if fp1[m1 - 1]:
            first_sum += fp1[m1 - 1] * _chain_sums(inc1, m1, p.n_vec[0] - 1, n)
    first_bound = _block_bound(tails[0], p.n_vec[0], p.n_vec[0] - 1)
    add(Check("first_block_estimate", first_sum <= first_bound, f"{first_sum} <= {first_bound}"))
    for i in range(1, p.k):
        t_i, n_i = p.t_vec[i], p.n_vec[i]
        bound = _block_bound(tails[i], n_i, n_i)
        worst = max((_chain_sums(inc[t_i], a0, n_i, n) for a0 in range(offs[i], n + 1)), default=Fraction(0))
        add(Check(f"block_estimate[{i + 1}]", worst <= bound, f"max over alpha_0 {worst} <= {bound}"))

    add(Check("s_tilde_le_rhs_main", s_tilde <= main, f"{s_tilde} <= {main}"))
    if main != main_term_min_form(tails, p):
        add(Check("main_forms_agree", False, "product and min forms differ"))
    add(Check("replay_chain", lhs <= order_tail + s_tilde <= order_tail + main, f"{lhs} <= {order_tail + s_tilde} <= {order_tail + main}"))
    return rep
