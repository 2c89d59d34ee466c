"""Exact qubit/quartit invariant theory over Q(zeta_24)."""

from fractions import Fraction

from ._core import (
    CapExceeded,
    Catalog,
    CycNum,
    Error,
    Group,
    Matrix,
    NotNormalized,
    ParseError,
    Poly,
    UnknownName,
    __version__,
    bloch_map,
    closure,
    concurrence,
    expand_closed_form,
    glob_match,
    is_invariant,
    kron,
    proportional,
    relation_holds,
    reynolds_basis,
    second_hopf,
    stereographic,
)
from ._core import molien_series as _molien_series


def molien_series(group, order=40, threads=1):
    """Molien coefficients c_0..c_order as Fractions."""
    return [Fraction(c) for c in _molien_series(group, order, threads)]


__all__ = [
    "CapExceeded", "Catalog", "CycNum", "Error", "Group", "Matrix", "NotNormalized", "ParseError", "Poly",
    "UnknownName", "__version__", "bloch_map", "closure", "concurrence", "expand_closed_form", "glob_match",
    "is_invariant", "kron", "molien_series", "proportional", "relation_holds", "reynolds_basis", "second_hopf",
    "stereographic",
]
