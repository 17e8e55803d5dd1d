"""Alternating Euler sum expansions of zeta-star values of 2-string specs.

Two independent generators produce the same term list:

* :func:`expand_oplus` folds a fixed atom pattern with either a comma or
  ``a (+) b = sgn(a) sgn(b) (|a| + |b|)`` in every slot;
* :func:`expand_kappa_limit` takes the merge/substitution terms and negates
  the leading entry.

Both emit ``-2**depth(p) * zeta(p)`` terms.
"""

from __future__ import annotations

from typing import Sequence

from .compositions import Composition, StarSpec, Term, merge_terms
from .string_ops import substitution_choices


class HypothesisError(ValueError):
    """A spec outside the hypotheses of the comma/O-plus expansion."""


def _sgn(x: int) -> int:
    return -1 if x < 0 else 1


def oplus(alpha: int, beta: int) -> int:
    if alpha == 0 or beta == 0:
        raise ValueError("oplus is defined on nonzero integers")
    return _sgn(alpha) * _sgn(beta) * (abs(alpha) + abs(beta))


def build_pattern(spec: StarSpec) -> list[int]:
    """Atoms ``-(2a1+2), 1^(c1-3), 2a2+3, ..., 2ar+3, 1^(cr-3), 2a(r+1)+1``."""
    if spec.r == 0:
        raise HypothesisError("the comma/O-plus expansion needs at least one separator c_j")
    if any(c < 3 for c in spec.separators):
        raise HypothesisError(
            f"the comma/O-plus expansion requires c_j >= 3, got separators {spec.separators}"
        )
    a, c = spec.two_blocks, spec.separators
    atoms = [-(2 * a[0] + 2)]
    for t in range(spec.r):
        atoms += [1] * (c[t] - 3)
        atoms.append(2 * a[t + 1] + (3 if t + 1 < spec.r else 1))
    return atoms


def fold_patterns(atoms: Sequence[int]) -> list[Composition]:
    """Every composition obtained by putting ``,`` or ``(+)`` between atoms."""
    out: list[Composition] = [(atoms[0],)]
    for atom in atoms[1:]:
        nxt = []
        for p in out:
            nxt.append(p + (atom,))
            nxt.append(p[:-1] + (oplus(p[-1], atom),))
        out = nxt
    return out


def expand_oplus(spec: StarSpec) -> list[Term]:
    atoms = build_pattern(spec)
    patterns = fold_patterns(atoms)
    terms = merge_terms((-(2 ** len(p)), p) for p in patterns)
    if len(terms) != len(patterns):
        raise AssertionError(f"O-plus choices collided for {spec}: {len(patterns)} -> {len(terms)}")
    return terms


def expand_kappa_limit(spec: StarSpec) -> list[Term]:
    """Limit form: ``-2**e * zeta(-phi, tail)`` for each merge/substitution term.

    The printed limit theorem carries ``+``; the finite weights tend to
    ``(-1)**(k-1)`` so with ``zeta(-m, ...) = sum (-1)**k / k**m ...`` the
    sign is ``-``, which is what reproduces the worked expansions.
    """
    if spec.r == 0 and spec.two_blocks[0] == 0:
        raise HypothesisError("the empty spec has no Euler-sum expansion")
    return merge_terms((-(2**e), (-p[0],) + p[1:]) for e, p in _kappa_compositions(spec))


def _kappa_compositions(spec: StarSpec) -> list[tuple[int, Composition]]:
    # Slot-by-slot version of kappa_terms: (exponent, composition) only.
    a, c = spec.two_blocks, spec.separators
    states = [(1, (), 2 * a[0])]
    for t in range(spec.r):
        after = 2 * a[t + 1]
        subs = substitution_choices(c[t])
        nxt = []
        for e, prefix, current in states:
            nxt.append((e, prefix, current + c[t] + after))
            for i, j, x in subs:
                nxt.append((e + 1 + len(x), prefix + (current + j,) + x, i + after))
        states = nxt
    return [(e, prefix + (current,)) for e, prefix, current in states]


def equal_as_term_multisets(first: Sequence[Term], second: Sequence[Term]) -> bool:
    def key(terms):
        return sorted((t.composition, t.coefficient) for t in terms)

    return key(first) == key(second)
