# Standard Library Imports
from typing import Optional

# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, MixedGenSet
from mixed_abelian_cayley.constants import FamilyName, GeneratorRole
from mixed_abelian_cayley.family import Family, Presentation
from mixed_abelian_cayley.lattice import AbelianGroup, IntMatrix


class TTileBase(Family):
    """Circulants with one pair and one directed step, N(k) = floor((2k+3)^2 / 6)

    At k = 1 and k = 2 the directed step has order 2 and the graph degenerates
    to an involution.
    """

    name = FamilyName.T_TILE
    min_k = 1

    @classmethod
    def claimed_order(cls, k: int) -> int:
        return (2 * k + 3) ** 2 // 6

    @classmethod
    def steps(cls, k: int) -> tuple[int, int, int]:
        """(N, pair, directed) for the residue of k modulo 3"""
        cls.check_diameter(k)
        match k % 3:
            case 0:
                x = k // 3
                return 6 * x**2 + 6 * x + 1, 1, 6 * x + 3
            case 2:
                x = (k + 1) // 3
                return 6 * x**2 + 2 * x, x, 3 * x + 1
            case _:
                x = (k + 2) // 3
                return 6 * x**2 - 2 * x, x, 3 * x - 1

    @classmethod
    def build(cls, k: int) -> MixedCayleyGraph:
        N, pair, directed = cls.steps(k)
        group = AbelianGroup((N,))
        return MixedCayleyGraph(group, MixedGenSet.normalize(group, pairs=(pair,), directed=(directed,)))

    @classmethod
    def presentation(cls, k: int) -> Optional[Presentation]:
        """Lattice presentations for k = 3x and k = 3x - 1

        The matrix printed for k = 3x - 2 has determinant 6x^2 - 3x rather
        than 6x^2 - 2x, so that branch has none.
        """
        cls.check_diameter(k)
        match k % 3:
            case 0:
                x = k // 3
                matrix = IntMatrix(((3 * x + 2, -x - 1), (-1, 2 * x + 1)))
            case 2:
                x = (k + 1) // 3
                matrix = IntMatrix(((3 * x + 1, -x), (0, 2 * x)))
            case _:
                return None
        return Presentation(matrix=matrix, roles=(GeneratorRole.PAIR, GeneratorRole.DIRECTED))
