"""Exact total-division arithmetic via directed lattices of rings.

The carrier of a structure built here is a disjoint union of exact rings
indexed by a finite lattice, with an absorbing error element at the
bottom.  Addition and multiplication land at the meet of their arguments'
nodes; division is total, falling back to the error element.
"""

from . import axioms, enumeration, latfile, morphisms, rings, terms
from .errors import MeadowError
from .lattice import DirectedLattice, Lattice, dl_validate, lattice_validate
from .meadow import (
    Decomposition,
    InverseWitness,
    Meadow,
    MeadowElement,
    PreMeadow,
    build_meadow,
    build_premeadow,
)
from .morphisms import (
    MeadowHom,
    MeadowIdeal,
    QuotientResult,
    adjoin_error,
    base_ring,
    glue,
    meadow_product,
    quotient,
    radical,
)
from .terms import eval_term, format_element, parse

__all__ = [
    "axioms",
    "enumeration",
    "latfile",
    "morphisms",
    "rings",
    "terms",
    "MeadowError",
    "DirectedLattice",
    "Lattice",
    "dl_validate",
    "lattice_validate",
    "Decomposition",
    "InverseWitness",
    "Meadow",
    "MeadowElement",
    "PreMeadow",
    "build_meadow",
    "build_premeadow",
    "MeadowHom",
    "MeadowIdeal",
    "QuotientResult",
    "adjoin_error",
    "base_ring",
    "glue",
    "meadow_product",
    "quotient",
    "radical",
    "eval_term",
    "format_element",
    "parse",
]
