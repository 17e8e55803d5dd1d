"""Merge/substitution rewriting of a condensed 2-string spec.

For ``s = ({2}^a1, c1, ..., {2}^ar, cr, {2}^a(r+1))`` the condensation is
``(2a1, c1, 2a2, ..., cr, 2a(r+1))``.  For a subset ``I`` of ``{1..r}`` every
``t`` in ``I`` is merged (``,c_t,`` becomes ``+c_t+``) and every other ``t``
is substituted (``,c_t,`` becomes ``+j_t, x_t, i_t+`` with ``i_t >= 1``,
``j_t >= 2`` and ``i_t + j_t + |x_t| = c_t``).  Each result contributes

    2**(1 + |complement of I| + sum len(x_t)) * sum_k H_{k-1}(tail) A_{n,k} / k**phi

to ``H*_n(s)``, where ``phi`` is the first entry and ``tail`` the rest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence

from .compositions import Composition, StarSpec, expand_spec
from .mhs import MHSEvaluator, binom_A_row


def compositions_of(m: int) -> Iterator[Composition]:
    """All compositions of ``m`` into positive parts, lexicographic order."""
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions_of(m - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def substitution_choices(c: int) -> tuple[tuple[int, int, Composition], ...]:
    """All ``(i, j, x)`` with ``i >= 1``, ``j >= 2`` and ``i + j + |x| = c``."""
    out = []
    for i in range(1, c - 1):
        for j in range(2, c - i + 1):
            for x in compositions_of(c - i - j):
                out.append((i, j, x))
    return tuple(out)


@dataclass(frozen=True)
class KappaTerm:
    coeff_exponent: int
    phi: int
    tail: Composition
    subset: frozenset = field(default_factory=frozenset)
    choices: tuple = ()

    @property
    def composition(self) -> Composition:
        return (self.phi,) + self.tail


def rewrite(spec: StarSpec, subset: frozenset, choices: dict) -> Composition:
    """Apply merges on ``subset`` and substitutions ``choices[t] = (i, j, x)``."""
    a, c = spec.two_blocks, spec.separators
    out = []
    current = 2 * a[0]
    for t in range(1, spec.r + 1):
        if t in subset:
            current += c[t - 1] + 2 * a[t]
        else:
            i, j, x = choices[t]
            out.append(current + j)
            out.extend(x)
            current = i + 2 * a[t]
    out.append(current)
    return tuple(out)


def kappa_terms(spec: StarSpec) -> list[KappaTerm]:
    """Every (subset, substitution choice) term, subsets by ascending bitmask."""
    r = spec.r
    terms = []
    for mask in range(1 << r):
        subset = frozenset(t for t in range(1, r + 1) if mask >> (t - 1) & 1)
        free = [t for t in range(1, r + 1) if t not in subset]
        for picks in product(*(substitution_choices(spec.separators[t - 1]) for t in free)):
            choices = dict(zip(free, picks))
            comp = rewrite(spec, subset, choices)
            exponent = 1 + len(free) + sum(len(x) for _, _, x in picks)
            terms.append(KappaTerm(exponent, comp[0], comp[1:], subset, tuple(picks)))
    return terms


def is_degenerate(spec: StarSpec) -> bool:
    """The empty spec; both sides are 1 by convention."""
    return spec.r == 0 and spec.two_blocks[0] == 0


def binomial_sum(
    n: int,
    phi: int,
    tail: Sequence[int],
    evaluator: Optional[MHSEvaluator] = None,
    a_row: Optional[list[Fraction]] = None,
) -> Fraction:
    """``sum_{k=1}^n H_{k-1}(tail) A_{n,k} / k**phi`` (``phi`` may be 0)."""
    evaluator = evaluator or MHSEvaluator()
    a_row = a_row if a_row is not None else binom_A_row(n)
    h = evaluator.row(tail, n)
    total = Fraction(0)
    for k in range(1, n + 1):
        if h[k - 1]:
            total += h[k - 1] * a_row[k] / k**phi
    return total


def rhs_thm23(n: int, spec: StarSpec, evaluator: Optional[MHSEvaluator] = None) -> Fraction:
    """Right-hand side of the binomial-sum expansion of ``H*_n(s)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if is_degenerate(spec):
        return Fraction(1)
    evaluator = evaluator or MHSEvaluator()
    a_row = binom_A_row(n)
    total = Fraction(0)
    for term in kappa_terms(spec):
        total += 2**term.coeff_exponent * binomial_sum(n, term.phi, term.tail, evaluator, a_row)
    return total


@dataclass
class IdentityReport:
    lhs: Fraction
    rhs: Fraction
    equal: bool
    note: str = ""
    term_count: int = 0


def verify_thm23(n: int, spec: StarSpec, evaluator: Optional[MHSEvaluator] = None) -> IdentityReport:
    evaluator = evaluator or MHSEvaluator()
    lhs = evaluator.mhs_star(n, expand_spec(spec))
    rhs = rhs_thm23(n, spec, evaluator)
    if is_degenerate(spec):
        return IdentityReport(lhs, rhs, lhs == rhs, "degenerate convention", 0)
    return IdentityReport(lhs, rhs, lhs == rhs, "", len(kappa_terms(spec)))


def rhs_thm11(n: int, a: int, b: int, c: int, evaluator: Optional[MHSEvaluator] = None) -> Fraction:
    """Closed r=1 formula for ``H*_n({2}^a, c, {2}^b)``, written out directly."""
    evaluator = evaluator or MHSEvaluator()
    a_row = binom_A_row(n)
    total = 2 * binomial_sum(n, 2 * a + 2 * b + c, (), evaluator, a_row)
    for i in range(1, c):
        for j in range(2, c - i + 1):
            for x in compositions_of(c - i - j):
                inner = binomial_sum(n, 2 * a + j, x + (i + 2 * b,), evaluator, a_row)
                total += 4 * 2 ** len(x) * inner
    return total


def verify_thm11(n: int, a: int, b: int, c: int, evaluator: Optional[MHSEvaluator] = None) -> IdentityReport:
    evaluator = evaluator or MHSEvaluator()
    lhs = evaluator.mhs_star(n, (2,) * a + (c,) + (2,) * b)
    rhs = rhs_thm11(n, a, b, c, evaluator)
    return IdentityReport(lhs, rhs, lhs == rhs)


def lemma21_sides(
    n: int, a: int, c: int, v: Sequence[int], evaluator: Optional[MHSEvaluator] = None
) -> tuple[Fraction, Fraction]:
    """Both sides of the ``1/n**c`` shift identity for binomial sums.

    Right side: the ``x = ()`` term with exponent ``a + c`` plus, over nonempty
    ``x`` with last entry ``> a`` and ``j = a + c - |x| >= 0``,
    ``2**len(x) * sum_k H_{k-1}(x, v) A_{n,k} / k**j``.
    """
    if n < 1 or a < 0 or c < 1:
        raise ValueError(f"need n >= 1, a >= 0, c >= 1; got n={n}, a={a}, c={c}")
    v = tuple(v)
    if any(e < 1 for e in v):
        raise ValueError(f"v must have positive entries: {v}")
    evaluator = evaluator or MHSEvaluator()
    a_row = binom_A_row(n)
    lhs = binomial_sum(n, a, v, evaluator, a_row) / Fraction(n) ** c
    rhs = binomial_sum(n, a + c, v, evaluator, a_row)
    for size in range(a + 1, a + c + 1):
        for x in compositions_of(size):
            if x[-1] > a:
                rhs += 2 ** len(x) * binomial_sum(n, a + c - size, x + v, evaluator, a_row)
    return lhs, rhs


def lemma21_check(n: int, a: int, c: int, v: Sequence[int] = (), evaluator=None) -> IdentityReport:
    lhs, rhs = lemma21_sides(n, a, c, v, evaluator)
    return IdentityReport(lhs, rhs, lhs == rhs)
