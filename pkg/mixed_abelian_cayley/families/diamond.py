# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, circulant
from mixed_abelian_cayley.constants import FamilyName, GeneratorRole
from mixed_abelian_cayley.errors import FamilyException
from mixed_abelian_cayley.family import Family, Presentation
from mixed_abelian_cayley.lattice import IntMatrix


class Diamond(Family):
    """Optimal graphs with one involution and two pairs: N = 4k^2, two below M_AC(1, 2, 0, k)"""

    name = FamilyName.DIAMOND
    min_k = 2

    @classmethod
    def claimed_order(cls, k: int) -> int:
        return 4 * k**2

    @classmethod
    def build(cls, k: int) -> MixedCayleyGraph:
        """Circ(4k^2; +-1, +-(2k-1), 2k^2)"""
        cls.check_diameter(k)
        N = cls.claimed_order(k)
        if (2 * (2 * k**2)) % N:
            raise FamilyException(f"2k^2 is not an involution of Z_{N}.")
        return circulant(N, involutions=(2 * k**2,), pairs=(1, 2 * k - 1))

    @classmethod
    def presentation(cls, k: int) -> Presentation:
        cls.check_diameter(k)
        return Presentation(
            matrix=IntMatrix(((2 * k, 2 * k), (2 * k - 1, -1))),
            roles=(GeneratorRole.PAIR, GeneratorRole.PAIR),
            involution=(k, k),
        )
