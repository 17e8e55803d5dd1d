"""Floating-point values of convergent Euler sums and star sums.

Partial sums are streamed in numpy chunks, one running total per suffix of
the composition, so memory stays at one chunk per level whatever the
truncation point.

* Leading entry negative: the outer sum alternates.  The reported value is
  the average of ``S_N`` and ``S_{N+1}`` and the bound is half their gap.
* Leading entry positive (``>= 2``): partial sums at ``N = 2**m`` are
  extrapolated to ``N -> oo`` assuming an expansion in ``N**-j * log(N)**i``
  (``i`` up to the number of entries equal to 1).  The bound is four times
  the change between two successive extrapolations.

Both bounds are heuristic; they are reported, never hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .compositions import Composition, StarSpec, Term, expand_spec
from .mhs import MHSEvaluator
from .oplus import expand_oplus

MAX_TERMS = 10**7
CHUNK = 1 << 16
_EPS = np.finfo(float).eps


@dataclass
class NumericResult:
    value: float
    error_bound: float
    terms_used: int
    converged: bool = True
    partial_sum: float = math.nan

    def __str__(self) -> str:
        flag = "" if self.converged else " (tolerance not reached)"
        return f"{self.value:.12g} +/- {self.error_bound:.3g} [N={self.terms_used}]{flag}"


class _Stream:
    """Running partial sums ``T_i(N)`` for every suffix ``s[i:]``."""

    def __init__(self, s: Sequence[int], star: bool):
        self.s = tuple(s)
        self.star = star
        self.n = 0
        self.totals = [0.0] * len(self.s)

    def advance(self, target: int) -> np.ndarray:
        """Advance to ``target``; return outer partial sums for the new indices."""
        pieces = []
        while self.n < target:
            stop = min(self.n + CHUNK, target)
            pieces.append(self._chunk(self.n + 1, stop))
            self.n = stop
        return np.concatenate(pieces) if pieces else np.empty(0)

    def _chunk(self, lo: int, hi: int) -> np.ndarray:
        m = np.arange(lo, hi + 1, dtype=float)
        odd = (np.arange(lo, hi + 1) % 2).astype(bool)
        inner = np.ones_like(m)
        inner_prev_total = 1.0
        for level in range(len(self.s) - 1, -1, -1):
            e = self.s[level]
            f = m ** (-abs(e))
            if e < 0:
                f = np.where(odd, -f, f)
            if self.star:
                weights = inner
            else:
                weights = np.concatenate(([inner_prev_total], inner[:-1]))
            prev_total = self.totals[level]
            values = prev_total + np.cumsum(f * weights)
            inner_prev_total = prev_total
            self.totals[level] = float(values[-1])
            inner = values
        return inner


def _checkpoints(start: int = 1 << 6) -> list[int]:
    out, n = [], start
    while n + 1 <= MAX_TERMS:
        out.append(n)
        n *= 2
    return out


def _extrapolate(ns: Sequence[int], values: Sequence[float], logs: int) -> float:
    """Limit of ``values`` fitted by ``c + sum c_ij N**-j log(N)**i`` exactly."""
    ns = np.asarray(ns, dtype=float)
    n0 = ns[-1]
    u, ell = n0 / ns, np.log(ns / n0)
    cols = [np.ones_like(ns)]
    j = 1
    while len(cols) < len(ns):
        for i in range(logs + 1):
            if len(cols) < len(ns):
                cols.append(u**j * ell**i)
        j += 1
    return float(np.linalg.solve(np.column_stack(cols), np.asarray(values))[0])


def _rounding(n: int, scale: float) -> float:
    return 16 * _EPS * math.sqrt(n) * max(1.0, abs(scale))


def _alternating(s: Composition, tol: float) -> NumericResult:
    stream = _Stream(s, star=False)
    result = None
    for n in _checkpoints():
        stream.advance(n)
        s_n = stream.totals[0]
        stream.advance(n + 1)
        s_next = stream.totals[0]
        # the next checkpoint re-enters at n + 1, which is already streamed
        value = 0.5 * (s_n + s_next)
        bound = 0.5 * abs(s_next - s_n) + _rounding(n, value)
        result = NumericResult(value, float(bound), n + 1, bool(bound <= tol), float(s_next))
        if result.converged:
            break
    return result


def _extrapolated(s: Composition, tol: float, star: bool) -> NumericResult:
    logs = sum(1 for e in s if e == 1)
    width = 7 if logs == 0 else min(9, 1 + 3 * (logs + 1))
    stream = _Stream(s, star)
    ns: list[int] = []
    sums: list[float] = []
    previous = None
    result = None
    for n in _checkpoints():
        stream.advance(n)
        ns.append(n)
        sums.append(stream.totals[0])
        if len(ns) < width + 1:
            continue
        estimate = _extrapolate(ns[-width:], sums[-width:], logs)
        if previous is None:
            previous = _extrapolate(ns[-width - 1 : -1], sums[-width - 1 : -1], logs)
        bound = 4 * abs(estimate - previous) + _rounding(n, estimate) * 1e2
        result = NumericResult(float(estimate), float(bound), n, bool(bound <= tol), float(sums[-1]))
        previous = estimate
        if result.converged:
            break
    return result


def check_convergent(s: Sequence[int]):
    if s and s[0] == 1:
        raise ValueError(f"divergent: leading entry 1 in {tuple(s)}")


def zeta_numeric(s: Sequence[int], target_tol: float = 1e-8) -> NumericResult:
    """``zeta(s) = lim H_n(s)``, with a negative entry meaning a ``(-1)**k`` sign."""
    s = tuple(s)
    check_convergent(s)
    if not s:
        return NumericResult(1.0, 0.0, 0, True, 1.0)
    if s[0] < 0:
        return _alternating(s, target_tol)
    return _extrapolated(s, target_tol, star=False)


def zeta_star_numeric(spec: StarSpec, target_tol: float = 1e-8) -> NumericResult:
    s = expand_spec(spec)
    if not s:
        raise ValueError("zeta-star of the empty spec is not an Euler sum")
    return _extrapolated(s, target_tol, star=True)


def zeta_star_composition(s: Sequence[int], target_tol: float = 1e-8) -> NumericResult:
    """Star sum of an arbitrary positive composition with leading entry >= 2."""
    s = tuple(s)
    check_convergent(s)
    if not s or min(s) < 1:
        raise ValueError(f"star sums here need a nonempty positive composition, got {s}")
    return _extrapolated(s, target_tol, star=True)


@dataclass
class NumericReport:
    lhs: NumericResult
    rhs: NumericResult
    consistent: bool
    terms: list[tuple[Term, NumericResult]] = field(default_factory=list)


def verify_thm12_numeric(spec: StarSpec, target_tol: float = 1e-6) -> NumericReport:
    """Compare ``zeta*(s)`` with the sum of its O-plus expansion."""
    expansion = expand_oplus(spec)
    lhs = zeta_star_numeric(spec, target_tol / 4)
    scale = sum(abs(t.coefficient) for t in expansion)
    evaluated = [(t, zeta_numeric(t.composition, target_tol / (4 * scale))) for t in expansion]
    value = math.fsum(t.coefficient * r.value for t, r in evaluated)
    bound = math.fsum(abs(t.coefficient) * r.error_bound for t, r in evaluated)
    rhs = NumericResult(
        value,
        bound,
        max(r.terms_used for _, r in evaluated),
        all(r.converged for _, r in evaluated),
    )
    consistent = bool(abs(lhs.value - rhs.value) <= lhs.error_bound + rhs.error_bound + target_tol)
    return NumericReport(lhs, rhs, consistent, evaluated)


def lemma42_terms(s: Sequence[int], n: int, evaluator=None) -> list[Fraction]:
    """Exact ``|H_{k-1}(s)| * (1 - C(n,k)/C(n+k,k))`` for ``k = 1..n``."""
    evaluator = evaluator or MHSEvaluator()
    h = evaluator.row(s, n)
    out = []
    ratio = Fraction(1)
    for k in range(1, n + 1):
        ratio *= Fraction(n - k + 1, n + k)
        out.append(abs(h[k - 1]) * (1 - ratio))
    return out


def lemma42_decay(s: Sequence[int], e: float, n_values: Sequence[int]) -> list[tuple[int, float]]:
    """``sum_k |H_{k-1}(s)| / k**e * (1 - C(n,k)/C(n+k,k))`` for each ``n``.

    The factor ``1 - C(n,k)/C(n+k,k)`` is formed exactly.  For integral ``e``
    the whole sum is exact before the final cast; otherwise each exact
    summand is cast and multiplied by ``k**-e``.
    """
    if not e > 1:
        raise ValueError(f"need e > 1, got {e}")
    if list(n_values) != sorted(n_values) or any(n < 1 for n in n_values):
        raise ValueError(f"n_values must be ascending positive integers: {n_values}")
    evaluator = MHSEvaluator()
    integral = float(e).is_integer()
    table = []
    for n in n_values:
        terms = lemma42_terms(s, n, evaluator)
        if integral:
            p = int(e)
            total = float(sum(q / k**p for k, q in enumerate(terms, 1)))
        else:
            total = math.fsum(float(q) * k ** (-e) for k, q in enumerate(terms, 1))
        table.append((n, total))
    return table
