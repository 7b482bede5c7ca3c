# Standard Library Imports
from enum import Enum


class GeneratorRole(Enum):
    INVOLUTION = "INVOLUTION"
    PAIR = "PAIR"
    DIRECTED = "DIRECTED"


class MultinomialConvention(Enum):
    """How the improved bound weighs the boxes holding generators of known order

    EXACT counts the empty boxes too (r! / (s0! s1! ... ss!)), which is the
    ball-and-box count itself. PUBLISHED leaves the empty boxes out
    (r! / (s1! ... ss!)) which gives the larger commonly quoted value.
    """

    EXACT = "EXACT"
    PUBLISHED = "PUBLISHED"


class FamilyName(Enum):
    BASE = "base"
    DIAMOND = "diamond"
    T_TILE = "t-tile"
    T = "t"


# Line keys of the graph description file
DESCRIPTION_KEYS_BY_ROLE = {
    GeneratorRole.INVOLUTION: "inv",
    GeneratorRole.PAIR: "pair",
    GeneratorRole.DIRECTED: "dir",
}

# DegreeSpec string keys
DEGREE_SPEC_SCALAR_KEYS = ("r_a", "r_w", "z_w", "k")
DEGREE_SPEC_INDEXED_KEYS = ("r", "z")

### DESK-SCALE LIMITS ###

ORACLE_STATE_CAP = 2_000_000
SEARCH_ORDER_CAP = 5000
DOT_EXPORT_MAX_ORDER = 200
RANDOM_SOURCE_COUNT = 5

DEFAULT_MULTINOMIAL_CONVENTION = MultinomialConvention.EXACT

### CLI EXIT CODES ###

EXIT_SUCCESS = 0
EXIT_INVALID_INPUT = 2
EXIT_VERIFICATION_FAILURE = 3
