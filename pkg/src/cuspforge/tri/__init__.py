from .core import Triangulation, Skeleton, ReversedEdge, InvalidGluing
from .isosig import isosig_encode, isosig_decode, MalformedSignature
from .moves import pachner_2_3, pachner_3_2, MovePreconditionFailed
from .simplify import greedy_simplify, exhaustive_simplify, ReducedTo, NoReductionWithin, BudgetExceeded
from .homology import homology_h1, AbelianGroup

__all__ = [
    "Triangulation", "Skeleton", "ReversedEdge", "InvalidGluing",
    "isosig_encode", "isosig_decode", "MalformedSignature",
    "pachner_2_3", "pachner_3_2", "MovePreconditionFailed",
    "greedy_simplify", "exhaustive_simplify", "ReducedTo", "NoReductionWithin", "BudgetExceeded",
    "homology_h1", "AbelianGroup",
]
