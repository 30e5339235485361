"""Seeded Monte Carlo estimates of every quantity in the tail bound.

Used where exact enumeration is impossible: continuous steps on ``Euclidean(d)``
or ``Circle``, or finite scenarios beyond the enumeration budget.  Each event
frequency gets a Wilson score interval, and the right-hand side is assembled
conservatively from the interval endpoints.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from .bounds import BoundParams, TailVariant
from .distributions import FiniteDistribution, Outcome, Scenario, path_statistics
from .errors import InvalidLevel
from .rng import GENERATOR_NAME, KEYING_SCHEME, CounterRng
from .semigroup import TWO_PI, Circle, Euclidean

HOLDS = "holds-with-margin"
INCONCLUSIVE = "inconclusive"
VIOLATES = "violates-with-margin"


@dataclass(frozen=True)
class GaussianStep:
    """``mean + scale * N(0, I)`` on ``Euclidean(d)``."""

    mean: tuple[float, ...]
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "mean", tuple(float(x) for x in self.mean))
        if not (math.isfinite(self.scale) and self.scale > 0) or not all(map(math.isfinite, self.mean)):
            raise ValueError("Gaussian step needs a finite mean and a positive finite scale")


@dataclass(frozen=True)
class ArcStep:
    """Uniform rotation by an angle in ``[center - half_width, center + half_width]`` on the circle."""

    half_width: float
    center: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0) or not math.isfinite(self.center):
            raise ValueError("arc step needs a positive finite half-width")


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Estimate:
    count: int
    n: int
    p_hat: float
    ci: Interval


@dataclass
class McReport:
    n_samples: int
    seed: int
    level: float
    variant: TailVariant
    params: BoundParams
    zeta: float
    estimates: dict[str, Estimate]
    main_point: float
    main_ci: Interval
    branches: list[dict]
    rhs: dict[str, Interval]
    verdicts: dict[str, str]
    generator: str = GENERATOR_NAME
    keying: str = KEYING_SCHEME

    @property
    def lhs(self) -> Estimate:
        return self.estimates["lhs"]

    @property
    def verdict(self) -> str:
        return self.verdicts[self.variant.value]


def wilson(count: int, n: int, level: float) -> Interval:
    lo, hi = proportion_confint(count, n, alpha=1.0 - level, method="wilson")
    # the closed form is exact at the endpoints; rounding can miss 0 or 1 by an ulp
    lo = 0.0 if count == 0 else max(0.0, float(lo))
    hi = 1.0 if count == n else min(1.0, float(hi))
    return Interval(lo, hi)


def verdict_from_intervals(lhs: Interval, rhs: Interval) -> str:
    if lhs.hi <= rhs.lo:
        return HOLDS
    if lhs.lo > rhs.hi:
        return VIOLATES
    return INCONCLUSIVE


def mc_verdict(r: McReport) -> str:
    return verdict_from_intervals(r.lhs.ci, r.rhs[r.variant.value])


# ---------------------------------------------------------------------------
# path simulation


def _indices(law: FiniteDistribution, u: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(np.asarray(law.cumulative), u, side="right")
    return np.minimum(idx, len(law) - 1)


def _finite_events(sc: Scenario, p: BoundParams, rng: CounterRng, start: int, count: int, cache: dict) -> np.ndarray:
    """Boolean events per sample; each distinct outcome is evaluated exactly once."""
    idx = np.stack([_indices(law, rng.uniforms(j, start, count)[:, 0]) for j, law in enumerate(sc.laws)], axis=1)
    rows, inverse = np.unique(idx, axis=0, return_inverse=True)
    table = np.empty((len(rows), p.k + 3), dtype=bool)
    for r, row in enumerate(rows):
        key = tuple(int(i) for i in row)
        if key not in cache:
            values = tuple(law.support[i][0] for law, i in zip(sc.laws, key))
            st = path_statistics(sc, Outcome(values, Fraction(1), key))
            cache[key] = _events(st.U, st.M, st.top_sum(p.K), p)
        table[r] = cache[key]
    return table[inverse.reshape(-1)]


def _events(U, M, top, p: BoundParams):
    return [U > p.zeta, *(U > t for t in p.t_vec), M > p.s, top > (p.K - 1) * p.s]


def _steps_euclidean(sc: Scenario, rng: CounterRng, start: int, count: int) -> np.ndarray:
    d = sc.sg.d
    out = np.empty((count, sc.n, d))
    for j, law in enumerate(sc.laws):
        if isinstance(law, GaussianStep):
            if len(law.mean) != d:
                raise ValueError(f"Gaussian mean has length {len(law.mean)}, expected {d}")
            out[:, j, :] = np.asarray(law.mean) + law.scale * rng.normals(j, start, count, d)
        elif isinstance(law, FiniteDistribution):
            pts = np.array([e.value for e in law.elements], dtype=float)
            out[:, j, :] = pts[_indices(law, rng.uniforms(j, start, count)[:, 0])]
        else:
            raise TypeError(f"{type(law).__name__} is not a law on {sc.sg.key}")
    return out


def _steps_circle(sc: Scenario, rng: CounterRng, start: int, count: int) -> np.ndarray:
    out = np.empty((count, sc.n))
    for j, law in enumerate(sc.laws):
        u = rng.uniforms(j, start, count)[:, 0]
        if isinstance(law, ArcStep):
            out[:, j] = np.mod(law.center + law.half_width * (2.0 * u - 1.0), TWO_PI)
        elif isinstance(law, FiniteDistribution):
            pts = np.array([e.value for e in law.elements], dtype=float)
            out[:, j] = pts[_indices(law, u)]
        else:
            raise TypeError(f"{type(law).__name__} is not a law on the circle")
    return out


def _arc(x: np.ndarray) -> np.ndarray:
    r = np.mod(np.abs(x), TWO_PI)
    return np.minimum(r, TWO_PI - r)


def _continuous_events(sc: Scenario, p: BoundParams, rng: CounterRng, start: int, count: int) -> np.ndarray:
    if isinstance(sc.sg, Euclidean):
        X = _steps_euclidean(sc, rng, start, count)
        S = np.cumsum(X, axis=1)
        shift = np.asarray(sc.z1.value) - np.asarray(sc.z0.value)
        exc = np.linalg.norm(S - shift, axis=2)
        Y = np.linalg.norm(X, axis=2)
    elif isinstance(sc.sg, Circle):
        X = _steps_circle(sc, rng, start, count)
        S = np.cumsum(X, axis=1)
        exc = _arc(sc.z0.value + S - sc.z1.value)
        Y = _arc(X)
    else:
        raise TypeError(f"continuous laws are only supported on Euclidean(d) and Circle, not {sc.sg.key}")
    U = exc.max(axis=1)
    Ys = np.sort(Y, axis=1)
    top = Ys[:, sc.n - p.K + 1 :].sum(axis=1)
    cols = _events(U, Y.max(axis=1), top, _FloatParams(p))
    return np.stack(cols, axis=1)


class _FloatParams:
    def __init__(self, p: BoundParams):
        self.zeta = float(p.zeta)
        self.t_vec = tuple(float(t) for t in p.t_vec)
        self.s = float(p.s)
        self.K = p.K


def _block_value(a: float, n_i: int, first: bool) -> float:
    denom = math.factorial(n_i) * (1.0 - a) ** (n_i - first)
    return a**n_i * (min(1.0, 1.0 / denom) if denom > 0 else 1.0)


def mc_estimate(
    sc: Scenario,
    p: BoundParams,
    n_samples: int,
    seed: int,
    level: float = 0.99,
    variant="max-increment",
    chunk_size: int = 50_000,
    workers: int = 1,
) -> McReport:
    """Estimate lhs, block tails and both tail terms from ``n_samples`` seeded paths.

    Chunks are keyed by absolute sample index, so ``chunk_size`` and
    ``workers`` never change the result.
    """
    if n_samples < 100:
        raise ValueError("n_samples must be at least 100")
    if not 0.0 < level < 1.0:
        raise InvalidLevel(f"level {level} not in (0, 1)")
    variant = TailVariant.parse(variant)
    p.check(sc.n)
    rng = CounterRng(seed)
    starts = list(range(0, n_samples, chunk_size))

    if sc.is_finite:
        cache: dict = {}

        def run(start):
            return _finite_events(sc, p, rng, start, min(chunk_size, n_samples - start), cache).sum(axis=0)

        workers = 1  # the shared outcome cache is not thread-safe
    else:

        def run(start):
            return _continuous_events(sc, p, rng, start, min(chunk_size, n_samples - start)).sum(axis=0)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    counts = np.sum(parts, axis=0).astype(np.int64)

    names = ["lhs", *(f"tail[{i + 1}]" for i in range(p.k)), "max_tail", "order_tail"]
    est = {
        name: Estimate(int(c), n_samples, int(c) / n_samples, wilson(int(c), n_samples, level))
        for name, c in zip(names, counts)
    }
    branches = []
    main_point = main_lo = main_hi = 1.0
    for i, (v, t) in enumerate(zip(p.n_vec, p.t_vec)):
        e = est[f"tail[{i + 1}]"]
        a = e.p_hat
        b = 1.0 - a
        in_i0 = b ** (v - (i == 0)) <= 1.0 / math.factorial(v)
        out_branch = (a / b) ** v / math.factorial(v) * (b if i == 0 else 1.0) if b > 0 else math.inf
        branches.append({"index": i + 1, "in_I0": bool(in_i0), "branch_in_I0": a**v, "branch_not_in_I0": out_branch})
        main_point *= _block_value(a, v, i == 0)
        main_lo *= _block_value(e.ci.lo, v, i == 0)
        main_hi *= _block_value(e.ci.hi, v, i == 0)
    rhs = {
        TailVariant.MAX_INCREMENT.value: Interval(main_lo + est["max_tail"].ci.lo, main_hi + est["max_tail"].ci.hi),
        TailVariant.ORDER_STATISTIC.value: Interval(
            main_lo + est["order_tail"].ci.lo, main_hi + est["order_tail"].ci.hi
        ),
    }
    verdicts = {k: verdict_from_intervals(est["lhs"].ci, iv) for k, iv in rhs.items()}
    return McReport(
        n_samples, seed, level, variant, p, float(p.zeta), est, main_point, Interval(main_lo, main_hi), branches, rhs, verdicts
    )
