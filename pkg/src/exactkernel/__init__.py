"""Generic exact linear algebra kernel.

Coefficient domains with homomorphic rebinding, founding-scope dense and
sparse matrices, structural blackboxes, parallel building blocks and
early-terminated Chinese remaindering for integer rank and determinant.
"""

from .blackbox import (
    Compose,
    ComposeOwner,
    SubmatrixBB,
    SubmatrixOwner,
    Transpose,
    TransposeOwner,
    rebind_blackbox,
)
from .cra import Bounded, CraState, CraStats, EarlyStop, cra_run, crt_pair, hadamard_det_bound
from .domains import GF, ZZ, Hom, ModularField, PrimeStream
from .matrices import DenseMatrix, MatrixView, SparseMatrix, new_vector, rebind_dense
from .pbb import accumulate, accumulate_until, for_each, transform
from .solutions import det_mod_p, gauss_echelon, integer_det, integer_rank, rank_mod_p

__all__ = [
    "GF", "ZZ", "Hom", "ModularField", "PrimeStream",
    "DenseMatrix", "MatrixView", "SparseMatrix", "new_vector", "rebind_dense",
    "Compose", "ComposeOwner", "Transpose", "TransposeOwner", "SubmatrixBB",
    "SubmatrixOwner", "rebind_blackbox",
    "accumulate", "accumulate_until", "for_each", "transform",
    "Bounded", "CraState", "CraStats", "EarlyStop", "cra_run", "crt_pair",
    "hadamard_det_bound",
    "det_mod_p", "gauss_echelon", "integer_det", "integer_rank", "rank_mod_p",
]
