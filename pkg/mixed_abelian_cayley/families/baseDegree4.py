# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, circulant
from mixed_abelian_cayley.constants import FamilyName, GeneratorRole
from mixed_abelian_cayley.family import Family, Presentation
from mixed_abelian_cayley.lattice import IntMatrix


class BaseDegree4(Family):
    """Undirected degree 4 circulants attaining M_AC(0, 2, 0, k) = 2k^2 + 2k + 1"""

    name = FamilyName.BASE
    min_k = 1

    @classmethod
    def claimed_order(cls, k: int) -> int:
        return 2 * k**2 + 2 * k + 1

    @classmethod
    def build(cls, k: int) -> MixedCayleyGraph:
        """Circ(2k^2 + 2k + 1; +-k, +-(k+1))"""
        cls.check_diameter(k)
        return circulant(cls.claimed_order(k), pairs=(k, k + 1))

    @classmethod
    def presentation(cls, k: int) -> Presentation:
        cls.check_diameter(k)
        return Presentation(
            matrix=IntMatrix(((2 * k + 1, 1), (k + 1, -k))),
            roles=(GeneratorRole.PAIR, GeneratorRole.PAIR),
        )
