"""bscomb: exact Bott-Samelson gallery combinatorics.

Root systems and Weyl groups, combinatorial galleries with gallery-type
certificates, nested-structure projections with verified counting
bijections, a GKM-style fixed-point model of equivariant cohomology with a
triangular basis, and folding-category morphisms.  All arithmetic is exact
(integers and rationals).
"""

from .errors import (
    BscombError,
    InvalidInputError,
    NotInSpanError,
    ParseError,
    PropertyViolationError,
    ResourceLimitError,
    VerificationError,
)
from .gallery import Gallery, Gallerification, ReflSeq, galleries, is_gallery_type
from .gkm import FPFunction, basis, decompose, induced_map
from .nested import FSelection, NestedPlan, factor_fixed_points, project
from .foldcat import Morphism, PointedMorphism, enumerate_morphisms, verify_morphism
from .poly import Poly
from .rootsys import Reflection, Root, RootSystem, WeylElement, build_root_system

__all__ = [
    "BscombError", "InvalidInputError", "NotInSpanError", "ParseError",
    "PropertyViolationError", "ResourceLimitError", "VerificationError",
    "Gallery", "Gallerification", "ReflSeq", "galleries", "is_gallery_type",
    "FPFunction", "basis", "decompose", "induced_map",
    "FSelection", "NestedPlan", "factor_fixed_points", "project",
    "Morphism", "PointedMorphism", "enumerate_morphisms", "verify_morphism",
    "Poly",
    "Reflection", "Root", "RootSystem", "WeylElement", "build_root_system",
]

__version__ = "0.1.0"
