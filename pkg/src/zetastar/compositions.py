"""Signed compositions, 2-string specs and Euler-sum terms.

A signed composition is stored as a plain ``tuple`` of nonzero ints; a
negative entry ``-n`` is the barred entry and is printed ``bn``.  A
:class:`StarSpec` records the shape ``({2}^a1, c1, ..., {2}^ar, cr, {2}^a(r+1))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Composition = tuple[int, ...]

_ENTRY = re.compile(r"^(-|b)?([0-9]+)$")
_BLOCK = re.compile(r"^([0-9]+)\^([0-9]+)$")
_SEPARATOR = re.compile(r"^c([0-9]+)$")


class ParseError(ValueError):
    """Raised for malformed composition or spec text."""


def _check_entries(entries: Iterable[int]) -> Composition:
    out = entries if type(entries) is tuple else tuple(int(e) for e in entries)
    if 0 in out:
        raise ValueError(f"composition entries must be nonzero: {out}")
    return out


def composition(*entries: int) -> Composition:
    return _check_entries(entries)


def parse_signed_composition(text: str) -> Composition:
    """Parse ``"b16,7,7"`` or ``"-16,7,7"`` into ``(-16, 7, 7)``.

    The empty string (or only whitespace) is the empty composition.
    """
    text = text.strip()
    if not text:
        return ()
    entries = []
    for raw in text.split(","):
        token = raw.strip()
        m = _ENTRY.match(token)
        if m is None:
            raise ParseError(f"malformed entry {raw!r} in {text!r}")
        value = int(m.group(2))
        if value == 0:
            raise ParseError(f"zero entry {raw!r} in {text!r}")
        entries.append(-value if m.group(1) else value)
    return tuple(entries)


def format_entry(e: int) -> str:
    return f"b{-e}" if e < 0 else str(e)


def format_composition(s: Sequence[int]) -> str:
    return ",".join(format_entry(e) for e in s)


def depth(s: Sequence[int]) -> int:
    return len(s)


def weight(s: Sequence[int]) -> int:
    return sum(abs(e) for e in s)


@dataclass(frozen=True)
class StarSpec:
    """Shape ``({2}^a1, c1, ..., {2}^ar, cr, {2}^a(r+1))``.

    ``two_blocks`` holds the ``a_j`` (one more than there are separators) and
    ``separators`` holds the ``c_t >= 2``.
    """

    two_blocks: tuple[int, ...]
    separators: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "two_blocks", tuple(int(a) for a in self.two_blocks))
        object.__setattr__(self, "separators", tuple(int(c) for c in self.separators))
        if len(self.two_blocks) != len(self.separators) + 1:
            raise ValueError(
                f"need {len(self.separators) + 1} 2-blocks for "
                f"{len(self.separators)} separators, got {len(self.two_blocks)}"
            )
        if any(a < 0 for a in self.two_blocks):
            raise ValueError(f"2-block lengths must be >= 0: {self.two_blocks}")
        if any(c < 2 for c in self.separators):
            raise ValueError(f"separators must be >= 2: {self.separators}")

    @property
    def r(self) -> int:
        return len(self.separators)

    def condensation(self) -> Composition:
        """``(2a1, c1, 2a2, ..., cr, 2a(r+1))``; entries may be 0."""
        out = [2 * self.two_blocks[0]]
        for c, a in zip(self.separators, self.two_blocks[1:]):
            out += [c, 2 * a]
        return tuple(out)

    def __str__(self) -> str:
        return format_star_spec(self)


def parse_star_spec(text: str) -> StarSpec:
    """Parse caret notation such as ``"2^7,3,2^2,3,2^3"``.

    ``2^k`` and a bare ``2`` are 2-blocks (adjacent blocks are added up); any
    other integer is a separator.  A separator equal to 2 must be written
    ``c2`` (``c`` marks any separator explicitly).  A missing block between
    separators has length 0.
    """
    text = text.strip()
    blocks = [0]
    separators: list[int] = []
    if not text:
        return StarSpec((0,), ())
    for raw in text.split(","):
        token = raw.strip()
        if m := _BLOCK.match(token):
            base, exp = int(m.group(1)), int(m.group(2))
            if base != 2:
                raise ParseError(f"only 2 may carry an exponent, got {raw!r}")
            blocks[-1] += exp
        elif token == "2":
            blocks[-1] += 1
        elif (m := _SEPARATOR.match(token)) or token.isdigit():
            c = int(m.group(1) if m else token)
            if c < 2:
                raise ParseError(f"separator {c} < 2 in {text!r}")
            separators.append(c)
            blocks.append(0)
        else:
            raise ParseError(f"malformed token {raw!r} in {text!r}")
    return StarSpec(tuple(blocks), tuple(separators))


def format_star_spec(spec: StarSpec) -> str:
    parts = []
    for i, a in enumerate(spec.two_blocks):
        if a:
            parts.append(f"2^{a}")
        if i < spec.r:
            c = spec.separators[i]
            parts.append("c2" if c == 2 else str(c))
    return ",".join(parts) if parts else "2^0"


def expand_spec(spec: StarSpec) -> Composition:
    out: list[int] = [2] * spec.two_blocks[0]
    for c, a in zip(spec.separators, spec.two_blocks[1:]):
        out.append(c)
        out += [2] * a
    return tuple(out)


@dataclass(frozen=True, order=True)
class Term:
    """``coefficient * zeta(composition)``."""

    coefficient: int
    composition: Composition

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("term coefficient must be nonzero")
        object.__setattr__(self, "composition", _check_entries(self.composition))

    def render(self) -> str:
        return f"{self.coefficient}*z({format_composition(self.composition)})"

    def to_record(self) -> dict:
        return {"coefficient": str(self.coefficient), "composition": list(self.composition)}

    @classmethod
    def from_record(cls, record: dict) -> "Term":
        return cls(int(record["coefficient"]), tuple(record["composition"]))


def merge_terms(pairs: Iterable[tuple[int, Sequence[int]]]) -> list[Term]:
    """Sum coefficients of equal compositions; drop zeros; sort by composition."""
    acc: dict[Composition, int] = {}
    for coeff, comp in pairs:
        key = tuple(comp)
        acc[key] = acc.get(key, 0) + coeff
    return [Term(acc[k], k) for k in sorted(acc) if acc[k] != 0]


def render_terms(terms: Sequence[Term]) -> str:
    """Human-readable sum, e.g. ``-8*z(b16,7,7) - 4*z(b23,7)``."""
    if not terms:
        return "0"
    out = []
    for i, t in enumerate(terms):
        body = f"{abs(t.coefficient)}*z({format_composition(t.composition)})"
        if i == 0:
            out.append(("-" if t.coefficient < 0 else "") + body)
        else:
            out.append(("- " if t.coefficient < 0 else "+ ") + body)
    return " ".join(out)
