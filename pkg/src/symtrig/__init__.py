"""Symmetry reduced moment relaxations for Weyl-group invariant trigonometric polynomials."""

from .errors import SymtrigError
from .lattice import WeightSet, degree, matrix_order, weight_set
from .reptheory import (CharacterTable, PermRep, SymmetryAdaptedBasis, block_project,
                        build_perm_rep, character_table, irrep_matrices, multiplicities,
                        serre_basis)
from .rootsys import RootSystem, RootSystemId, build_root_system
from .sdp import SDPProblem, SolveResult, SolverConfig, block_size_report, build, certify, solve
from .trigpoly import (ToeplitzMat, TrigPoly, evaluate, from_toeplitz, is_invariant,
                       poly_from_json, poly_to_json, symmetrize, to_toeplitz)
from .weyl import GroupElement, WeylGroup, generate

__all__ = [
    "CharacterTable", "GroupElement", "PermRep", "RootSystem", "RootSystemId", "SDPProblem",
    "SolveResult", "SolverConfig", "SymmetryAdaptedBasis", "SymtrigError", "ToeplitzMat",
    "TrigPoly", "WeightSet", "WeylGroup", "block_project", "block_size_report", "build",
    "build_perm_rep", "build_root_system", "certify", "character_table", "degree", "evaluate",
    "from_toeplitz", "generate", "irrep_matrices", "is_invariant", "matrix_order",
    "multiplicities", "poly_from_json", "poly_to_json", "serre_basis", "solve", "symmetrize",
    "to_toeplitz", "weight_set",
]
