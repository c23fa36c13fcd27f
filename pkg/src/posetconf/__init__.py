"""Finite posets, quiver representations over F_p, and configurations of subobjects."""

from .config import (
    ConfigMorphism,
    Configuration,
    SubobjectFamily,
    build_from_filtration,
    build_from_subobjects,
    check_config_morphism,
    extract_subobjects,
    kappa,
    quotient_configuration,
    subconfiguration,
    substitute,
    validate_config,
)
from .exactla import FieldSpec, Matrix
from .improve import best_search, enumerate_improvements, is_best, one_step_improve, split_pair_test
from .poset import FinitePoset, GluingSpec, glue_posets, validate_poset
from .quivercat import Quiver, Rep, RepMor, SubobjectCF

__all__ = [
    "ConfigMorphism",
    "Configuration",
    "FieldSpec",
    "FinitePoset",
    "GluingSpec",
    "Matrix",
    "Quiver",
    "Rep",
    "RepMor",
    "SubobjectCF",
    "SubobjectFamily",
    "best_search",
    "build_from_filtration",
    "build_from_subobjects",
    "check_config_morphism",
    "enumerate_improvements",
    "extract_subobjects",
    "glue_posets",
    "is_best",
    "kappa",
    "one_step_improve",
    "quotient_configuration",
    "split_pair_test",
    "subconfiguration",
    "substitute",
    "validate_config",
    "validate_poset",
]
