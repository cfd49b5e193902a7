"""Exact verification of Mackey and Green functor structure on twisted group categories."""

__version__ = "0.1.0"

from .kernels import BACKEND
from .groups import (
    FiniteGroup,
    SubgroupRef,
    builtin_group,
    load_group,
    double_coset_reps,
    left_coset_reps,
    parse_family,
)
from .zalgebra import (
    AbHom,
    CoefficientMode,
    FgAbelianGroup,
    ZAlgebra,
    builtin_ring,
    load_ring,
    parse_mode,
    smith_normal_form,
)
from .twisted import TGMorphism, TwistedCategory
from .functors import (
    Conj,
    Ind,
    RepSystem,
    Res,
    Theta,
    frobenius_check,
    mackey_axiom_suite,
)
from .mackey import (
    GreenFunctor,
    GreenModule,
    MackeyFunctor,
    family_limit,
    swan_vanishing_check,
    unit_in_induction_image,
    validate_green,
    validate_mackey,
    verify_induction_iso,
)
from .burnside import artin_solve, burnside_green_functor, perm_character, table_of_marks

__all__ = [
    "BACKEND", "FiniteGroup", "SubgroupRef", "builtin_group", "load_group", "double_coset_reps",
    "left_coset_reps", "parse_family", "AbHom", "CoefficientMode", "FgAbelianGroup", "ZAlgebra",
    "builtin_ring", "load_ring", "parse_mode", "smith_normal_form", "TGMorphism", "TwistedCategory",
    "Conj", "Ind", "RepSystem", "Res", "Theta", "frobenius_check", "mackey_axiom_suite",
    "GreenFunctor", "GreenModule", "MackeyFunctor", "family_limit", "swan_vanishing_check",
    "unit_in_induction_image", "validate_green", "validate_mackey", "verify_induction_iso",
    "artin_solve", "burnside_green_functor", "perm_character", "table_of_marks",
]
