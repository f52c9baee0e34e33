"""Constant symplectic 2-groupoids, Courant algebroids and Dirac structures over Q."""

from .bridge import (ConstantSymplectic2Groupoid, CsgTuple, csg_to_tuple, courant_to_tuple,
                     reduce_tuple, standard_example, standard_tuple, tuple_to_courant, tuple_to_csg)
from .courant import (ConstantCourantAlgebroid, anchor_apply, bracket, dee, new_algebroid,
                      pairing_sections, verify_axioms)
from .doldkan import ChainComplex3, LinearTwoGroupoid, extract, kan_check, realize, verify_simplicial
from .errors import ConstSympError, DimensionError, InvariantError, PreconditionError
from .exactla import Bilin, Mat, Subspace
from .forms import AlphaForm, ConstantTwoForm, build_from_C, reduce_to_C
from .poly import Poly, PolySection

__version__ = "0.1.0"

__all__ = [
    "ConstantSymplectic2Groupoid",
    "CsgTuple",
    "csg_to_tuple",
    "courant_to_tuple",
    "reduce_tuple",
    "standard_example",
    "standard_tuple",
    "tuple_to_courant",
    "tuple_to_csg",
    "ConstantCourantAlgebroid",
    "anchor_apply",
    "bracket",
    "dee",
    "new_algebroid",
    "pairing_sections",
    "verify_axioms",
    "ChainComplex3",
    "LinearTwoGroupoid",
    "extract",
    "kan_check",
    "realize",
    "verify_simplicial",
    "ConstSympError",
    "DimensionError",
    "InvariantError",
    "PreconditionError",
    "Bilin",
    "Mat",
    "Subspace",
    "AlphaForm",
    "ConstantTwoForm",
    "build_from_C",
    "reduce_to_C",
    "Poly",
    "PolySection",
]
