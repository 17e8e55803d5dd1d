import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetastar.mhs import (
    MHSEvaluator,
    binom_A,
    binom_A_row,
    mhs,
    mhs_bruteforce,
    mhs_star,
    mhs_star_bruteforce,
)

ENTRIES = (-3, -2, -1, 1, 2, 3)


def test_mhs_examples():
    assert mhs(2, (2, 1)) == Fraction(1, 4)
    assert mhs(0, ()) == 1
    assert mhs(2, (-2,)) == Fraction(-3, 4)


def test_mhs_star_examples():
    assert mhs_star(2, (2, 1)) == Fraction(11, 8)
    assert mhs_star(3, (2,)) == Fraction(49, 36)
    for a in range(6):
        assert mhs_star(1, (2,) * a) == 1


def test_bruteforce_examples():
    assert mhs_bruteforce(2, (2, 1)) == Fraction(1, 4)
    assert mhs_bruteforce(5, ()) == 1
    assert mhs_bruteforce(1, (1, 1)) == 0
    assert mhs_star_bruteforce(2, (2, 1)) == Fraction(11, 8)


def test_bruteforce_guard():
    with pytest.raises(ValueError):
        mhs_bruteforce(10**4, (1, 1, 1))


def test_zero_below_depth():
    for n in range(3):
        assert mhs(n, (1, 2, 3)) == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_oracle_equivalence_grid(d):
    ev = MHSEvaluator()
    for s in itertools.product(ENTRIES, repeat=d):
        for n in range(9):
            assert ev.mhs(n, s) == mhs_bruteforce(n, s), (n, s)
            assert ev.mhs_star(n, s) == mhs_star_bruteforce(n, s), (n, s)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4).filter(bool), max_size=4), st.integers(0, 9))
def test_oracle_equivalence_random(s, n):
    assert mhs(n, s) == mhs_bruteforce(n, s)
    assert mhs_star(n, s) == mhs_star_bruteforce(n, s)


@given(st.integers(-6, 6).filter(bool), st.integers(0, 30))
def test_depth_one_star_equals_plain(e, n):
    assert mhs_star(n, (e,)) == mhs(n, (e,))


def test_row_is_prefix_consistent():
    ev = MHSEvaluator()
    long = ev.row((2, -1), 20)
    assert ev.row((2, -1), 5) == long[:6]
    assert MHSEvaluator().row((2, -1), 5) == long[:6]


def test_monotone_limit_sanity():
    values = [float(mhs(n, (2,))) for n in range(1, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] < math.pi**2 / 6


def test_binom_A_examples():
    assert binom_A(1, 1) == Fraction(1, 2)
    assert binom_A(2, 2) == Fraction(-1, 6)
    assert binom_A(3, 4) == 0


def test_binom_A_rejects_nonpositive():
    with pytest.raises(ValueError):
        binom_A(0, 1)


@pytest.mark.parametrize("n", [1, 2, 7, 30])
def test_binom_A_row_matches_formula(n):
    assert binom_A_row(n)[1:] == [binom_A(n, k) for k in range(1, n + 1)]


def test_binom_A_limit():
    # exact gaps at n = 10^4 are 1 - C(n,k)/C(n+k,k) ~ k^2/n <= 2.5e-3 for k <= 5
    for k in range(1, 6):
        gap = abs(binom_A(10**4, k) - (-1) ** (k - 1))
        assert gap < Fraction(1, 100)
        assert gap < Fraction(k * k, 10**4)
