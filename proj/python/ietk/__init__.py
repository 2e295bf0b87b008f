"""Exact arithmetic for finitely generated groups of interval exchange
transformations: circles and intervals over a symbolic number basis, canonical
IETs, word balls and orbits, invariant decomposition, wreath-product
realizations, and the associated decision procedures.

All numerics are exact: rationals travel as "p/q" strings, irrationals as
Q-linear combinations over the declared symbols.
"""

from ._core import (
    Basis,
    Domain,
    ExactReal,
    FinGenGroup,
    HjBuild,
    Iet,
    IetkError,
    Lamplighter,
    Point,
    SchemaError,
    Subdomain,
    UndecidedComparison,
    birkhoff_frequency,
    build_hj,
    commutation_set,
    decompose,
    difference_set_measure,
    distinguish_invariant,
    hj_evaluate,
    hj_normal_form,
    hj_tau_for,
    load_scene,
    verify_wreath_embedding,
    wreath_obstruction_witness,
)

__all__ = [
    "Basis",
    "Domain",
    "ExactReal",
    "FinGenGroup",
    "HjBuild",
    "Iet",
    "IetkError",
    "Lamplighter",
    "Point",
    "SchemaError",
    "Subdomain",
    "UndecidedComparison",
    "birkhoff_frequency",
    "build_hj",
    "commutation_set",
    "decompose",
    "difference_set_measure",
    "distinguish_invariant",
    "hj_evaluate",
    "hj_normal_form",
    "hj_tau_for",
    "load_scene",
    "verify_wreath_embedding",
    "wreath_obstruction_witness",
]
