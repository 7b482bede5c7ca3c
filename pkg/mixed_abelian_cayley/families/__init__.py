# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph
from mixed_abelian_cayley.constants import FamilyName
from mixed_abelian_cayley.errors import FamilyException
from mixed_abelian_cayley.family import Family
from mixed_abelian_cayley.families.baseDegree4 import BaseDegree4
from mixed_abelian_cayley.families.diamond import Diamond
from mixed_abelian_cayley.families.tShaped import TShaped
from mixed_abelian_cayley.families.tTileBase import TTileBase

FAMILIES: dict[FamilyName, type[Family]] = {
    FamilyName.BASE: BaseDegree4,
    FamilyName.DIAMOND: Diamond,
    FamilyName.T_TILE: TTileBase,
    FamilyName.T: TShaped,
}


def get_family(name: str) -> type[Family]:
    try:
        return FAMILIES[FamilyName(name)]
    except ValueError as e:
        known = ", ".join(family.value for family in FamilyName)
        raise FamilyException(f"Unknown family {name!r}; expected one of {known}.") from e


def base_degree4_family(k: int) -> MixedCayleyGraph:
    return BaseDegree4.build(k)


def diamond_family(k: int) -> MixedCayleyGraph:
    return Diamond.build(k)


def t_tile_base_family(k: int) -> MixedCayleyGraph:
    return TTileBase.build(k)


def t_family(k: int) -> MixedCayleyGraph:
    return TShaped.build(k)
