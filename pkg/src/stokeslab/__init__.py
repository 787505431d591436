"""Exact Stokes data for quantum differential equations of projective spaces,
weighted projective spaces and Fano hypersurfaces, computed through the
monodromy identity and checked against closed-form tables."""

from .exact import Cyclotomic, RootOfUnity, cyclotomic_polynomial, root_of_unity_char_poly
from .qde import QdeProblem, eigenvalues, formal_monodromy, singular_directions, stokes_support
from .monodromy import indicial_exponents, monodromy_char_poly
from .solver import (InconsistentSystem, StokesData, StokesSystem, StuckSystem,
                     build_system, extend_all, solve, verify)
from .closedform import (dubrovin_check, gram_and_inverse, hypersurface_formula,
                         projective_formula)

__all__ = [
    "Cyclotomic", "RootOfUnity", "cyclotomic_polynomial", "root_of_unity_char_poly",
    "QdeProblem", "eigenvalues", "formal_monodromy", "singular_directions",
    "stokes_support", "indicial_exponents", "monodromy_char_poly",
    "build_system", "solve", "extend_all", "verify",
    "StokesSystem", "StokesData", "StuckSystem", "InconsistentSystem",
    "projective_formula", "hypersurface_formula", "gram_and_inverse", "dubrovin_check",
]

__version__ = "0.1.0"
