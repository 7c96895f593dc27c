from .classfunc import (
    ClassFunction,
    as_integer,
    fixed_dimensions,
    induce,
    inner_product,
    perm_character,
    pullback,
    reduced_perm_character,
    restrict,
)
from .cyclotomic import Cyclotomic, cyclotomic_polynomial, totient
from .table import (
    CharacterTable,
    character_table,
    dixon_prime,
    first_fixed_element,
    fixed_point_free,
    is_character,
)

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "Cyclotomic",
    "as_integer",
    "character_table",
    "cyclotomic_polynomial",
    "dixon_prime",
    "first_fixed_element",
    "fixed_dimensions",
    "fixed_point_free",
    "induce",
    "inner_product",
    "is_character",
    "perm_character",
    "pullback",
    "reduced_perm_character",
    "restrict",
    "totient",
]
