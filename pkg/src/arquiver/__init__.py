"""Exact-arithmetic Auslander-Reiten theory over bound quiver algebras."""

from .linalg import DEFAULT_PRIME
from .algebra import Algebra, Quiver, Relation, build_algebra
from .rep import Rep, RepMap, decompose, dual, hom_basis, is_indecomposable, iso
from .homological import SES, dtr, ext1, inj, proj, transpose, trd
from .stable import stable_hom
from .approx import Subcat

__all__ = [
    "DEFAULT_PRIME",
    "Algebra",
    "Quiver",
    "Relation",
    "build_algebra",
    "Rep",
    "RepMap",
    "decompose",
    "dual",
    "hom_basis",
    "is_indecomposable",
    "iso",
    "SES",
    "dtr",
    "ext1",
    "inj",
    "proj",
    "transpose",
    "trd",
    "stable_hom",
    "Subcat",
]
__version__ = "0.1.0"
