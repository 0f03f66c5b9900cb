from fractions import Fraction

import pytest
from hypothesis import strategies as st

from interlace_majorize import PolyPair

F = Fraction


def rationals(lo=-20, hi=20, max_den=64):
    return st.builds(
        lambda num, den: Fraction(num, den),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


def distinct_roots(min_size=1, max_size=6):
    return st.lists(rationals(), min_size=min_size, max_size=max_size, unique=True).map(
        lambda xs: sorted(xs, reverse=True)
    )


@st.composite
def interlacing_pairs(draw, min_n=2, max_n=6, equal_sums=False):
    """Pairs built from 2n distinct sorted points, paired into disjoint intervals."""
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.lists(rationals(), min_size=2 * n, max_size=2 * n, unique=True))
    pts.sort(reverse=True)
    flips = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    lam, mu = [], []
    for j, f in enumerate(flips):
        a, b = pts[2 * j], pts[2 * j + 1]
        lam.append(a if f else b)
        mu.append(b if f else a)
    if equal_sums:
        shift = (sum(lam) - sum(mu)) / n
        mu = [x + shift for x in mu]
    return PolyPair.from_roots(lam, mu)


@pytest.fixture
def pair2():
    return PolyPair.from_roots([2, -2], [1, -1])


@pytest.fixture
def pair4():
    return PolyPair.from_roots([5, 1, -1, -5], [4, 2, -2, -4])


# --- acceptance summary -----------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
