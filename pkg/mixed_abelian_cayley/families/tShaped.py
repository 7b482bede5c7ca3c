# Standard Library Imports
from typing import Optional

# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, MixedGenSet, circulant
from mixed_abelian_cayley.constants import FamilyName, GeneratorRole
from mixed_abelian_cayley.errors import FamilyException
from mixed_abelian_cayley.family import Family, Presentation
from mixed_abelian_cayley.lattice import IntMatrix, group_from_matrix, map_vector


class TShaped(Family):
    """One involution, one pair and one directed step (r = 3, z = 1)

    k = 2: Circ(10; +-1, 2, 5)
    k = 3x - 1, x >= 2: Z_6x x Z_2x with (+-1, 0), (0, 1) and the involution (3x, x)
    k = 3x: Circ(12x^2 + 8x; +-1, 12x^2 + 2x - 1, 6x^2 + 4x)
    k = 3x + 1: Circ(12x^2 + 16x + 4; +-1, 6x + 5, 6x^2 + 8x + 2)
    """

    name = FamilyName.T
    min_k = 2

    @classmethod
    def claimed_order(cls, k: int) -> int:
        cls.check_diameter(k)
        if k == 2:
            return 10
        match k % 3:
            case 2:
                x = (k + 1) // 3
                return 12 * x**2
            case 0:
                x = k // 3
                return 12 * x**2 + 8 * x
            case _:
                x = (k - 1) // 3
                return 12 * x**2 + 16 * x + 4

    @classmethod
    def build(cls, k: int) -> MixedCayleyGraph:
        cls.check_diameter(k)
        if k == 2:
            return circulant(10, involutions=(5,), pairs=(1,), directed=(2,))
        match k % 3:
            case 2:
                return cls.two_factor_case((k + 1) // 3)
            case 0:
                x = k // 3
                N = cls.claimed_order(k)
                return circulant(
                    N, involutions=(6 * x**2 + 4 * x,), pairs=(1,), directed=(12 * x**2 + 2 * x - 1,)
                )
            case _:
                x = (k - 1) // 3
                N = cls.claimed_order(k)
                return circulant(
                    N, involutions=(6 * x**2 + 8 * x + 2,), pairs=(1,), directed=(6 * x + 5,)
                )

    @classmethod
    def two_factor_case(cls, x: int) -> MixedCayleyGraph:
        """Cay(Z_6x x Z_2x; (+-1, 0), (0, 1), (3x, x)), diameter 3x - 1

        Raises:
            FamilyException: At x = 1, where (0, 1) and (3, 1) are both involutions
        """
        if x < 2:
            raise FamilyException(
                f"The two-factor case needs x >= 2; at x={x} (0, 1) and (3x, x) are both involutions."
            )
        group, images = group_from_matrix(IntMatrix.diagonal((6 * x, 2 * x)))
        gens = MixedGenSet.create(
            group,
            involutions=(map_vector(images, (3 * x, x), group),),
            pairs=(images[0],),
            directed=(images[1],),
        )
        return MixedCayleyGraph(group, gens)

    @classmethod
    def presentation(cls, k: int) -> Optional[Presentation]:
        cls.check_diameter(k)
        if k == 2:
            return None
        match k % 3:
            case 2:
                x = (k + 1) // 3
                matrix, involution = IntMatrix.diagonal((6 * x, 2 * x)), (3 * x, x)
            case 0:
                x = k // 3
                matrix, involution = IntMatrix(((6 * x + 1, 1), (1, 2 * x + 1))), (3 * x + 1, x + 1)
            case _:
                x = (k - 1) // 3
                matrix, involution = IntMatrix(((6 * x + 5, -1), (-1, 2 * x + 1))), (3 * x + 2, x)
        return Presentation(
            matrix=matrix,
            roles=(GeneratorRole.PAIR, GeneratorRole.DIRECTED),
            involution=involution,
        )
