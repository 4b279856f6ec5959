"""Exact symbolic engine for the q-deformed unitary pair, its cyclic
covering algebra, and the graded obstruction to lifting the quantum-group
structure, cross-validated by a truncated operator model."""

from .errors import DomainError
from .nfalgebra import Element, Word, embed_base, grade, mul, promote, star, u1_act, unembed
from .qtensor import TensorElement, TripleTensor, delta, tensor_of, zz_grade
from .scalars import Scalar, cyclotomic_poly, root_of_unity, scalar_eval
from .covering import (
    DeckElement,
    ModuleVector,
    assemble,
    deck_act,
    decompose,
    delta_L,
    delta_R,
    inner_product,
    is_invariant,
    isotypic,
    twist,
)
from .obstruction import GradedCandidate, ObstructionReport, counterexample_report

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Scalar", "cyclotomic_poly", "root_of_unity", "scalar_eval",
    "Element", "Word", "mul", "star", "grade", "u1_act", "embed_base", "promote", "unembed",
    "TensorElement", "TripleTensor", "delta", "tensor_of", "zz_grade",
    "DeckElement", "ModuleVector", "deck_act", "isotypic", "is_invariant",
    "decompose", "assemble", "twist", "inner_product", "delta_L", "delta_R",
    "GradedCandidate", "ObstructionReport", "counterexample_report",
    "__version__",
]
