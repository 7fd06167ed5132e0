"""Exact computations around equivariant Tannakian models: polynomial forms on
simplices, local systems on finite simplicial sets, dg-categories of
representations, and G-cdga hom complexes, all over Q."""

from .exactla import CochainComplex, SparseMatrix, cohomology_dims, rank, sparse_kernel
from .groups import FiniteGroup
from .nabla import PolyForm, differential, integrate, pullback, wedge
from .simpset import (BudgetExceeded, EdgeLabeling, FinSimplicialSet, SimplicialMap, boundary_simplex,
                      rp2_6, standard_simplex, torus_3x3, universal_cover, universal_labeling)
from .repcat import Representation, hom, oplus, regular_representation, sign_rep, tensor, tensor_automorphisms
from .derham import LocalSystem, TdrHomComplex, adr_cohomology, constant_system
from .wordcat import Word, evaluate_word, parse_word, words_up_to_depth
from .eqcdga import PresentedGCdga, phi_comparison, regular_iso_check, rp2_model, t_cohomology

__version__ = "0.1.0"

__all__ = [
    "CochainComplex", "SparseMatrix", "cohomology_dims", "rank", "sparse_kernel", "FiniteGroup",
    "PolyForm", "differential", "integrate", "pullback", "wedge", "BudgetExceeded", "EdgeLabeling",
    "FinSimplicialSet", "SimplicialMap", "boundary_simplex", "rp2_6", "standard_simplex",
    "torus_3x3", "universal_cover", "universal_labeling", "Representation", "hom", "oplus",
    "regular_representation", "sign_rep", "tensor", "tensor_automorphisms", "LocalSystem",
    "TdrHomComplex", "adr_cohomology", "constant_system", "Word", "evaluate_word", "parse_word",
    "words_up_to_depth", "PresentedGCdga", "phi_comparison", "regular_iso_check", "rp2_model",
    "t_cohomology",
]
