"""liespin: invariant spinor equations on metric Lie algebras.

Blade-level exterior/Clifford algebra, explicit spinor representations,
left-invariant spin connections, Killing-type spinor solvers, a catalog of
model families, and basis-change classification of the low-dimensional
unimodular isomorphism classes.
"""

from .multivector import (
    Multivector,
    basis_vector,
    blade,
    clifford,
    form_hook,
    from_vector,
    hodge_star,
    interior,
    musical,
    pairing,
    scalar,
    volume,
    wedge,
    zero,
)

__all__ = [
    "Multivector",
    "basis_vector",
    "blade",
    "clifford",
    "form_hook",
    "from_vector",
    "hodge_star",
    "interior",
    "musical",
    "pairing",
    "scalar",
    "volume",
    "wedge",
    "zero",
]

__version__ = "0.1.0"
