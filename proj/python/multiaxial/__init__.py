"""Multiaxial decomposition of spin-j density matrices.

Matrices are numpy complex arrays in the m-descending basis; the spin is
inferred from the dimension, j = (n - 1) / 2.
"""

from ._core import (
    DomainError,
    Error,
    ParseError,
    StructuralError,
    ValidationError,
    analyze,
    bell,
    biaxial,
    clebsch_gordan,
    coherent,
    dicke,
    extract_tensors,
    format_state,
    ghz,
    is_separable,
    lu_equivalent,
    parse_state,
    pure_density,
    reconstruct_density,
    rotate,
    selftest,
    signature,
    sweep,
    triaxial,
    uniaxial,
    w,
    wigner_d,
)

__all__ = [name for name in dir() if not name.startswith("_")]
