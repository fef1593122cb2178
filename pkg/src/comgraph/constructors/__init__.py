"""Constructions: the group catalog and the explicit semigroup realizers."""

from .groups import (
    ActionMap,
    BadGroupSpec,
    InvalidAction,
    JNotFound,
    abelian_product,
    alternating,
    build_group,
    catalog_names,
    cyclic,
    cyclic_action,
    dihedral,
    format_action,
    general_linear_3,
    generalized_quaternion,
    group_j,
    inversion_extension,
    natural_module,
    natural_module_action,
    parse_action,
    projective_special_linear_7,
    read_action,
    semidihedral,
    semidirect_product,
    special_linear,
    symmetric,
    validate_action,
    write_action,
)
from .semigroups import (
    NotDivisibleByFour,
    Obstructed,
    UnknownFixture,
    fixture_table,
    left_zero,
    realize_cycle_centrefree,
    realize_semigroup,
)

__all__ = [
    "ActionMap",
    "BadGroupSpec",
    "InvalidAction",
    "JNotFound",
    "NotDivisibleByFour",
    "Obstructed",
    "UnknownFixture",
    "abelian_product",
    "alternating",
    "build_group",
    "catalog_names",
    "cyclic",
    "cyclic_action",
    "dihedral",
    "fixture_table",
    "format_action",
    "general_linear_3",
    "generalized_quaternion",
    "group_j",
    "inversion_extension",
    "left_zero",
    "natural_module",
    "natural_module_action",
    "parse_action",
    "projective_special_linear_7",
    "read_action",
    "realize_cycle_centrefree",
    "realize_semigroup",
    "semidihedral",
    "semidirect_product",
    "special_linear",
    "symmetric",
    "validate_action",
    "write_action",
]
