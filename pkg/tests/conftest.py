import itertools
from fractions import Fraction

import pytest

from hjsemigroup import IntLine, iid_scenario, make_distribution


def rademacher(sg=None):
    sg = sg or IntLine()
    return make_distribution([(sg.element(-1), Fraction(1, 2)), (sg.element(1), Fraction(1, 2))])


@pytest.fixture
def e1():
    return iid_scenario(IntLine(), rademacher(), 2, z0=0)


@pytest.fixture
def e2():
    return iid_scenario(IntLine(), rademacher(), 3, z0=0)


def brute_paths(sc):
    """Outcome table built by hand from the laws, without the library's enumerator."""
    sg = sc.sg
    rows = []
    for picks in itertools.product(*(law.support for law in sc.laws)):
        prob = Fraction(1)
        for _, q in picks:
            prob *= q
        xs = [x for x, _ in picks]
        partial, S = None, []
        for x in xs:
            partial = x if partial is None else sg.combine(partial, x)
            S.append(partial)
        U = max(sg.distance(sc.z1, sg.combine(sc.z0, s)) for s in S)
        Y = [sg.distance(sc.z0, sg.combine(sc.z0, x)) for x in xs]
        rows.append((prob, S, U, Y))
    return rows


def brute_prob(sc, pred):
    return sum((prob for prob, S, U, Y in brute_paths(sc) if pred(S, U, Y)), Fraction(0))


def brute_top(Y, K):
    return sum(sorted(Y, reverse=True)[: K - 1], Fraction(0))


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {detail}")
