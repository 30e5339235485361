"""Metric semigroups: concrete instances and checks of their axioms.

Every instance carries an associative ``combine`` and a translation-invariant
distance.  Elements are small immutable wrappers that remember which instance
they belong to, so that mixing, say, a ``Cyclic(5)`` residue with an
``IntLine`` integer raises :class:`InstanceMismatch` instead of silently
producing garbage.

Permutations compose right-to-left: ``(s * t)(i) = s(t(i))``.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, Union

from .errors import InstanceMismatch

Scalar = Union[int, Fraction, float]

TWO_PI = 2.0 * math.pi
REAL_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Element:
    instance: str
    value: Any

    def __repr__(self) -> str:
        return f"Element({self.instance}, {self.value!r})"


class MetricSemigroup:
    """Base class for a semigroup with a translation-invariant metric.

    Subclasses implement ``_op``, ``_dist``, ``_canon`` and ``_random`` on raw
    payloads; the public methods handle tagging and validation.
    """

    family: str = ""
    exact: bool = True
    has_identity: bool = True

    @property
    def key(self) -> str:
        raise NotImplementedError

    # -- payload level -------------------------------------------------
    def _canon(self, value: Any) -> Any:
        raise NotImplementedError

    def _op(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def _dist(self, a: Any, b: Any) -> Scalar:
        raise NotImplementedError

    def _random(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def _probes(self) -> list:
        """A few small payloads tried exhaustively before random sampling."""
        return []

    def _parse(self, text: str) -> Any:
        return int(text.strip())

    def _format(self, value: Any) -> str:
        return str(value)

    # -- element level -------------------------------------------------
    def element(self, value: Any) -> Element:
        if isinstance(value, Element):
            self._check(value)
            return value
        return Element(self.key, self._canon(value))

    def _check(self, *els: Element) -> None:
        for e in els:
            if not isinstance(e, Element) or e.instance != self.key:
                raise InstanceMismatch(f"{e!r} does not belong to {self.key}")

    def combine(self, a: Element, b: Element) -> Element:
        self._check(a, b)
        return Element(self.key, self._op(a.value, b.value))

    def distance(self, a: Element, b: Element) -> Scalar:
        self._check(a, b)
        return self._dist(a.value, b.value)

    def random_element(self, rng: random.Random) -> Element:
        return Element(self.key, self._random(rng))

    def probe_elements(self) -> list[Element]:
        return [Element(self.key, v) for v in self._probes()]

    def parse(self, text: Any) -> Element:
        if not isinstance(text, str):
            text = str(text)
        try:
            value = self._parse(text)
        except (TypeError, ValueError) as exc:
            raise InstanceMismatch(f"cannot parse {text!r} as an element of {self.key}") from exc
        return self.element(value)

    def format(self, e: Element) -> str:
        self._check(e)
        return self._format(e.value)

    def close(self, x: Scalar, y: Scalar) -> bool:
        """Equality of scalars: exact for exact families, 1e-9 otherwise."""
        if self.exact:
            return x == y
        return abs(x - y) <= REAL_TOL

    def same(self, a: Element, b: Element) -> bool:
        if self.exact:
            return a == b
        return self.distance(a, b) <= REAL_TOL

    def __str__(self) -> str:
        return self.key


@dataclass(frozen=True)
class IntLine(MetricSemigroup):
    """The integers under addition with ``d(a, b) = |a - b|``."""

    family = "IntLine"

    @property
    def key(self) -> str:
        return "IntLine"

    def _canon(self, value):
        if isinstance(value, bool) or int(value) != value:
            raise InstanceMismatch(f"{value!r} is not an integer")
        return int(value)

    def _op(self, a, b):
        return a + b

    def _dist(self, a, b):
        return abs(a - b)

    def _random(self, rng):
        return rng.randint(-50, 50)

    def _probes(self):
        return [0, 1, -1, 2, -3]


@dataclass(frozen=True)
class PosInts(MetricSemigroup):
    """Positive integers under addition; a semigroup without identity."""

    family = "PosInts"
    has_identity = False

    @property
    def key(self) -> str:
        return "PosInts"

    def _canon(self, value):
        if isinstance(value, bool) or int(value) != value or int(value) < 1:
            raise InstanceMismatch(f"{value!r} is not a positive integer")
        return int(value)

    def _op(self, a, b):
        return a + b

    def _dist(self, a, b):
        return abs(a - b)

    def _random(self, rng):
        return rng.randint(1, 100)

    def _probes(self):
        return [1, 2, 3, 5]


@dataclass(frozen=True)
class Cyclic(MetricSemigroup):
    """``Z/mZ`` with the circular distance ``min(|a-b|, m-|a-b|)``."""

    m: int
    family = "Cyclic"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("Cyclic(m) needs m >= 1")

    @property
    def key(self) -> str:
        return f"Cyclic({self.m})"

    def _canon(self, value):
        if isinstance(value, bool) or int(value) != value:
            raise InstanceMismatch(f"{value!r} is not a residue")
        return int(value) % self.m

    def _op(self, a, b):
        return (a + b) % self.m

    def _dist(self, a, b):
        r = abs(a - b)
        return min(r, self.m - r)

    def _random(self, rng):
        return rng.randrange(self.m)

    def _probes(self):
        return list(range(min(self.m, 5)))


@dataclass(frozen=True)
class HammingCube(MetricSemigroup):
    """Bit vectors of length m under XOR with Hamming distance.

    Every element is its own inverse, so this 2-torsion group is the natural
    model of labelled graphs on a fixed vertex set (one bit per vertex pair).
    """

    m: int
    family = "HammingCube"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("HammingCube(m) needs m >= 1")

    @property
    def key(self) -> str:
        return f"HammingCube({self.m})"

    def _canon(self, value):
        if isinstance(value, str):
            value = tuple(int(ch) for ch in value)
        value = tuple(int(b) for b in value)
        if len(value) != self.m or any(b not in (0, 1) for b in value):
            raise InstanceMismatch(f"{value!r} is not a bit vector of length {self.m}")
        return value

    def _op(self, a, b):
        return tuple(x ^ y for x, y in zip(a, b))

    def _dist(self, a, b):
        return sum(x != y for x, y in zip(a, b))

    def _random(self, rng):
        return tuple(rng.randint(0, 1) for _ in range(self.m))

    def _probes(self):
        out = [tuple([0] * self.m), tuple([1] * self.m)]
        for i in range(min(self.m, 3)):
            out.append(tuple(int(j == i) for j in range(self.m)))
        return out

    def _parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"[01]+", text):
            raise ValueError(text)
        return tuple(int(ch) for ch in text)

    def _format(self, value):
        return "".join(map(str, value))


def graph_space(num_vertices: int) -> HammingCube:
    """The group of labelled graphs on ``num_vertices`` vertices (symmetric difference)."""
    return HammingCube(num_vertices * (num_vertices - 1) // 2)


def compose(s: tuple, t: tuple) -> tuple:
    """One-line permutations, 1-based: ``(s*t)(i) = s(t(i))``."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def invert(s: tuple) -> tuple:
    inv = [0] * len(s)
    for i, v in enumerate(s, start=1):
        inv[v - 1] = i
    return tuple(inv)


def count_cycles(s: tuple) -> int:
    seen = [False] * len(s)
    cycles = 0
    for i in range(len(s)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = s[j] - 1
    return cycles


@dataclass(frozen=True)
class _Symmetric(MetricSemigroup):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("symmetric group needs n >= 1")

    def _canon(self, value):
        if isinstance(value, str):
            value = self._parse(value)
        value = tuple(int(v) for v in value)
        if sorted(value) != list(range(1, self.n + 1)):
            raise InstanceMismatch(f"{value!r} is not a permutation of 1..{self.n}")
        return value

    def _op(self, a, b):
        return compose(a, b)

    def _random(self, rng):
        p = list(range(1, self.n + 1))
        rng.shuffle(p)
        return tuple(p)

    def _probes(self):
        ident = tuple(range(1, self.n + 1))
        out = [ident]
        if self.n >= 2:
            out.append((2, 1) + ident[2:])
            out.append(ident[1:] + ident[:1])
        if self.n >= 3:
            out.append((1, 3, 2) + ident[3:])
        return out

    def _parse(self, text):
        return tuple(int(tok) for tok in text.split(","))

    def _format(self, value):
        return ",".join(map(str, value))


@dataclass(frozen=True)
class SymCayley(_Symmetric):
    """``S_n`` with Cayley distance: n minus the number of cycles of ``s t^-1``."""

    family = "SymCayley"

    @property
    def key(self) -> str:
        return f"SymCayley({self.n})"

    def _dist(self, a, b):
        return self.n - count_cycles(compose(a, invert(b)))


@dataclass(frozen=True)
class SymHamming(_Symmetric):
    """``S_n`` with Hamming distance: the number of positions where ``s`` and ``t`` differ."""

    family = "SymHamming"

    @property
    def key(self) -> str:
        return f"SymHamming({self.n})"

    def _dist(self, a, b):
        return sum(x != y for x, y in zip(a, b))


@dataclass(frozen=True)
class Euclidean(MetricSemigroup):
    """``R^d`` under addition with the Euclidean norm; real-valued distances."""

    d: int
    family = "Euclidean"
    exact = False

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("Euclidean(d) needs d >= 1")

    @property
    def key(self) -> str:
        return f"Euclidean({self.d})"

    def _canon(self, value):
        if isinstance(value, (int, float, Fraction)):
            value = [value]
        value = tuple(float(x) for x in value)
        if len(value) != self.d or not all(math.isfinite(x) for x in value):
            raise InstanceMismatch(f"{value!r} is not a finite vector of length {self.d}")
        return value

    def _op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _dist(self, a, b):
        return math.dist(a, b)

    def _random(self, rng):
        return tuple(rng.uniform(-10.0, 10.0) for _ in range(self.d))

    def _probes(self):
        return [tuple([0.0] * self.d), tuple([1.0] * self.d), tuple([-0.5] * self.d)]

    def _parse(self, text):
        text = text.strip().strip("[]()")
        return tuple(float(tok) for tok in text.split(","))

    def _format(self, value):
        return "[" + ",".join(repr(x) for x in value) + "]"


@dataclass(frozen=True)
class Circle(MetricSemigroup):
    """Angles in ``[0, 2pi)`` under addition mod ``2pi`` with arc-length distance."""

    family = "Circle"
    exact = False

    @property
    def key(self) -> str:
        return "Circle"

    def _canon(self, value):
        value = float(value)
        if not math.isfinite(value):
            raise InstanceMismatch(f"{value!r} is not a finite angle")
        value = math.fmod(value, TWO_PI)
        if value < 0:
            value += TWO_PI
        return 0.0 if value >= TWO_PI else value

    def _op(self, a, b):
        return self._canon(a + b)

    def _dist(self, a, b):
        r = abs(a - b) % TWO_PI
        return min(r, TWO_PI - r)

    def _random(self, rng):
        return rng.uniform(0.0, TWO_PI)

    def _probes(self):
        return [0.0, 1.0, math.pi, 5.5]

    def _parse(self, text):
        return float(text)

    def _format(self, value):
        return repr(value)


@dataclass(frozen=True)
class BrokenSquare(MetricSemigroup):
    """Test double: ``(Z, +)`` with ``d(a, b) = |a^2 - b^2|``, which is NOT translation-invariant.

    Kept in the registry so that the axiom checker and the command line can be
    exercised on a known failure.
    """

    family = "BrokenSquare"

    @property
    def key(self) -> str:
        return "BrokenSquare"

    def _canon(self, value):
        if isinstance(value, bool) or int(value) != value:
            raise InstanceMismatch(f"{value!r} is not an integer")
        return int(value)

    def _op(self, a, b):
        return a + b

    def _dist(self, a, b):
        return abs(a * a - b * b)

    def _random(self, rng):
        return rng.randint(-20, 20)

    def _probes(self):
        return [0, 1, -1, 2]


_FAMILIES: dict[str, tuple[Callable[..., MetricSemigroup], int]] = {
    "IntLine": (IntLine, 0),
    "PosInts": (PosInts, 0),
    "Cyclic": (Cyclic, 1),
    "HammingCube": (HammingCube, 1),
    "SymCayley": (SymCayley, 1),
    "SymHamming": (SymHamming, 1),
    "Euclidean": (Euclidean, 1),
    "Circle": (Circle, 0),
    "BrokenSquare": (BrokenSquare, 0),
}

EXACT_FAMILIES = ("IntLine", "PosInts", "Cyclic", "HammingCube", "SymCayley", "SymHamming")


def make_semigroup(descriptor: str) -> MetricSemigroup:
    """Build an instance from a descriptor such as ``"Cyclic(5)"`` or ``"IntLine"``."""
    match = re.fullmatch(r"\s*([A-Za-z]+)\s*(?:\(\s*(\d+)\s*\))?\s*", descriptor)
    if not match or match.group(1) not in _FAMILIES:
        raise ValueError(f"unknown semigroup descriptor {descriptor!r}")
    ctor, arity = _FAMILIES[match.group(1)]
    arg = match.group(2)
    if arity == 1 and arg is None:
        raise ValueError(f"{match.group(1)} needs a parameter, e.g. {match.group(1)}(4)")
    if arity == 0 and arg is not None:
        raise ValueError(f"{match.group(1)} takes no parameter")
    return ctor(int(arg)) if arity else ctor()


def combine(sg: MetricSemigroup, a: Element, b: Element) -> Element:
    return sg.combine(a, b)


def distance(sg: MetricSemigroup, a: Element, b: Element) -> Scalar:
    return sg.distance(a, b)


def norm_increment(sg: MetricSemigroup, z: Element, x: Element) -> Scalar:
    """``d(z, z x)``, which does not depend on ``z`` in a metric semigroup."""
    return sg.distance(z, sg.combine(z, x))


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    instance: str
    trial_count: int
    seed: int
    results: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if not r.passed]


AXIOMS = (
    "associativity",
    "metric",
    "left_invariance",
    "right_invariance",
    "triangle_product",
    "lemma_identity",
)


def _tuples(sg: MetricSemigroup, arity: int, trials: int, rng: random.Random) -> Iterable[tuple]:
    probes = sg.probe_elements()
    yield from itertools.product(probes, repeat=arity)
    for _ in range(trials):
        yield tuple(sg.random_element(rng) for _ in range(arity))


def check_axioms(sg: MetricSemigroup, trial_count: int = 1000, rng_seed: int = 0) -> AxiomReport:
    """Check the metric-semigroup axioms on probe tuples plus ``trial_count`` random ones.

    Failures are reported with the first witness found, never raised.
    """
    if trial_count < 1:
        raise ValueError("trial_count must be >= 1")
    rng = random.Random(rng_seed)
    report = AxiomReport(sg.key, trial_count, rng_seed)
    res = {name: AxiomResult(name) for name in AXIOMS}
    report.results = res
    d, op, eq, same = sg.distance, sg.combine, sg.close, sg.same
    fmt = sg.format

    def record(name: str, ok: bool, witness: Sequence[Element], detail: Callable[[], str]):
        r = res[name]
        r.checked += 1
        if not ok and r.passed:
            r.passed = False
            r.witness = tuple(fmt(w) for w in witness)
            r.detail = detail()

    for a, b, c in _tuples(sg, 3, trial_count, rng):
        lhs, rhs = op(op(a, b), c), op(a, op(b, c))
        record("associativity", same(lhs, rhs), (a, b, c), lambda: f"(ab)c={fmt(lhs)} != a(bc)={fmt(rhs)}")

        dab, dba = d(a, b), d(b, a)
        metric_ok = dab >= 0 and eq(dab, dba) and dab <= d(a, c) + d(c, b) + (0 if sg.exact else REAL_TOL)
        if sg.exact:
            metric_ok = metric_ok and (dab == 0) == (a == b)
        record("metric", metric_ok, (a, b, c), lambda: f"d(a,b)={dab}, d(b,a)={dba}, d(a,c)+d(c,b)={d(a, c) + d(c, b)}")

        dr = d(op(a, c), op(b, c))
        record("right_invariance", eq(dr, dab), (a, b, c), lambda: f"d(ac,bc)={dr} != d(a,b)={dab}")
        dl = d(op(c, a), op(c, b))
        record("left_invariance", eq(dl, dab), (a, b, c), lambda: f"d(ca,cb)={dl} != d(a,b)={dab}")

        x1, x2, x3 = d(a, op(b, a)), d(b, op(b, b)), d(a, op(a, b))
        record(
            "lemma_identity",
            eq(x1, x2) and eq(x2, x3),
            (a, b),
            lambda: f"d(a,ba)={x1}, d(b,b^2)={x2}, d(a,ab)={x3}",
        )

    for y1, y2, z1, z2 in _tuples(sg, 4, trial_count, rng):
        lhs = d(op(y1, y2), op(z1, z2))
        rhs = d(y1, z1) + d(y2, z2)
        ok = lhs <= rhs if sg.exact else lhs <= rhs + REAL_TOL
        record("triangle_product", ok, (y1, y2, z1, z2), lambda: f"d(y1y2,z1z2)={lhs} > {rhs}")
    return report
