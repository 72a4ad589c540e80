"""Proof theory of multiplicative intuitionistic linear logic: sequent calculi, cut
elimination, links of proof terms and a decision procedure for their equality."""

import json

from ._core import (
    DerivationError,
    ParseError,
    PreconditionError,
    TermTypeError,
    central_equal,
    check_il,
    check_s,
    clean,
    code,
    decode,
    derive,
    eliminate_cuts,
    eq_terms,
    generalize,
    is_balanced,
    is_central,
    is_cut_free,
    is_proper,
    links_json,
    normalize,
    normalize_sequent,
    oracle_equal,
    perm_normal_form,
    perm_of,
    render,
    term_type,
)


def links(term: str) -> dict:
    """Links of a term as a dict with keys type, edges and loops."""
    return json.loads(links_json(term))


__all__ = [name for name in dir() if not name.startswith("_")]
