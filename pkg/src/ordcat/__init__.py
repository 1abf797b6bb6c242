"""Finite Ord-enriched category toolkit.

Preorders and monotone maps, the ideal calculus over them, Mal'tsev-type
deciders, quantale-enriched categories and a handful of algebraic replays.
Hot loops live in :mod:`ordcat._kernels` (numba, with a numpy fallback
selected by ``ORDCAT_DISABLE_NUMBA=1``).
"""

from ._kernels import BACKEND
from .errors import (
    AxiomError,
    NotMonotone,
    NotAPreorder,
    NotAnIdeal,
    OrdcatError,
    PreconditionError,
    ShapeMismatch,
)
from .preorder import FinPreorder, MonotoneMap, closure_preorder
from .relations import IdealRel, Rel

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AxiomError",
    "FinPreorder",
    "IdealRel",
    "MonotoneMap",
    "NotMonotone",
    "NotAPreorder",
    "NotAnIdeal",
    "OrdcatError",
    "PreconditionError",
    "Rel",
    "ShapeMismatch",
    "closure_preorder",
]
