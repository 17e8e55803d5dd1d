"""Exact multiple harmonic sums and zeta-star / alternating Euler sum identities."""

from .compositions import (
    Composition,
    ParseError,
    StarSpec,
    Term,
    depth,
    expand_spec,
    format_composition,
    format_star_spec,
    merge_terms,
    parse_signed_composition,
    parse_star_spec,
    render_terms,
    weight,
)
from .mhs import MHSEvaluator, binom_A, mhs, mhs_bruteforce, mhs_star, mhs_star_bruteforce
from .numeric import (
    NumericResult,
    lemma42_decay,
    verify_thm12_numeric,
    zeta_numeric,
    zeta_star_numeric,
)
from .oplus import (
    HypothesisError,
    build_pattern,
    equal_as_term_multisets,
    expand_kappa_limit,
    expand_oplus,
    oplus,
)
from .string_ops import KappaTerm, kappa_terms, lemma21_check, rhs_thm23, verify_thm11, verify_thm23

__version__ = "0.1.0"
