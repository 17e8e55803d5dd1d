"""Exact (alternating) multiple harmonic sums.

``H_n(s)`` sums over ``n >= k1 > k2 > ... > kr >= 1`` and the star version
``H*_n(s)`` over ``n >= k1 >= ... >= kr >= 1`` of
``prod sgn(s_i)**k_i / k_i**|s_i|``.  Everything here is exact; values are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .compositions import Composition

BRUTEFORCE_LIMIT = 10**7


def _factor(e: int, m: int) -> Fraction:
    sign = -1 if (e < 0 and m % 2) else 1
    return Fraction(sign, m ** abs(e))


class MHSEvaluator:
    """Evaluates MHS rows with a private cache.

    ``row(s, n)`` returns ``[H_0(s), ..., H_n(s)]``.  The cache belongs to
    the instance, so create one per task (or per worker process).
    """

    def __init__(self):
        self._rows: dict[tuple[Composition, bool], list[Fraction]] = {}

    def row(self, s: Sequence[int], n: int, star: bool = False) -> list[Fraction]:
        s = tuple(s)
        key = (s, star)
        cached = self._rows.get(key)
        if cached is not None and len(cached) > n:
            return cached[: n + 1]
        if not s:
            values = [Fraction(1)] * (n + 1)
        else:
            inner = self.row(s[1:], n, star)
            values = [Fraction(0)] * (n + 1)
            acc = Fraction(0)
            head = s[0]
            for m in range(1, n + 1):
                acc += _factor(head, m) * (inner[m] if star else inner[m - 1])
                values[m] = acc
        self._rows[key] = values
        return values

    def mhs(self, n: int, s: Sequence[int]) -> Fraction:
        return self.row(s, n)[n]

    def mhs_star(self, n: int, s: Sequence[int]) -> Fraction:
        return self.row(s, n, star=True)[n]

    def clear(self):
        self._rows.clear()


def mhs(n: int, s: Sequence[int]) -> Fraction:
    """``H_n(s)``; zero when ``n < len(s)``, one for the empty composition."""
    return MHSEvaluator().mhs(n, s)


def mhs_star(n: int, s: Sequence[int]) -> Fraction:
    return MHSEvaluator().mhs_star(n, s)


def _tuple_count(n: int, r: int, star: bool) -> int:
    if r == 0 or n == 0:
        return 1 if r == 0 else 0
    return comb(n + r - 1, r) if star else comb(n, r)


def _brute(n: int, s: Sequence[int], star: bool) -> Fraction:
    s = tuple(s)
    r = len(s)
    count = _tuple_count(n, r, star)
    if count > BRUTEFORCE_LIMIT:
        raise ValueError(f"{count} index tuples exceed the brute-force limit {BRUTEFORCE_LIMIT}")
    if r == 0:
        return Fraction(1)
    if star:
        tuples = itertools.combinations_with_replacement(range(n, 0, -1), r)
    else:
        tuples = itertools.combinations(range(n, 0, -1), r)
    total = Fraction(0)
    for ks in tuples:
        num = prod((-1 if e < 0 else 1) ** k for e, k in zip(s, ks))
        den = prod(k ** abs(e) for e, k in zip(s, ks))
        total += Fraction(num, den)
    return total


def mhs_bruteforce(n: int, s: Sequence[int]) -> Fraction:
    """Literal sum over all strictly decreasing index tuples."""
    return _brute(n, s, star=False)


def mhs_star_bruteforce(n: int, s: Sequence[int]) -> Fraction:
    return _brute(n, s, star=True)


def binom_A(n: int, k: int) -> Fraction:
    """``(-1)**(k-1) * C(n, k) / C(n+k, k)``; zero for ``k > n``."""
    if n < 1 or k < 1:
        raise ValueError(f"binom_A needs n, k >= 1, got n={n}, k={k}")
    return Fraction((-1) ** (k - 1) * comb(n, k), comb(n + k, k))


def binom_A_row(n: int) -> list[Fraction]:
    """``[0, A_{n,1}, ..., A_{n,n}]`` built by the ratio recurrence."""
    row = [Fraction(0)] * (n + 1)
    ratio = Fraction(1)
    for k in range(1, n + 1):
        ratio *= Fraction(n - k + 1, n + k)
        row[k] = ratio if k % 2 else -ratio
    return row
