# Standard Library Import
import json
import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Optional

# Module Imports
from mixed_abelian_cayley.cayley import MixedCayleyGraph, MixedGenSet
from mixed_abelian_cayley.constants import FamilyName, GeneratorRole
from mixed_abelian_cayley.errors import FamilyException
from mixed_abelian_cayley.lattice import IntMatrix, group_from_matrix, map_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    """Cay(Z^n / Z^n M, ...) with a role for every unit vector and an optional involution"""

    matrix: IntMatrix
    roles: tuple[GeneratorRole, ...]
    involution: Optional[tuple[int, ...]] = None

    def build(self) -> MixedCayleyGraph:
        """Rebuild the graph through the Smith normal form of the matrix

        Steps are classified by their exact order, so a printed directed step
        of order 2 becomes an involution.
        """
        group, images = group_from_matrix(self.matrix)
        steps = {role: [] for role in GeneratorRole}
        for role, image in zip(self.roles, images):
            steps[role].append(image)
        if self.involution is not None:
            steps[GeneratorRole.INVOLUTION].append(map_vector(images, self.involution, group))
        gens = MixedGenSet.normalize(
            group,
            involutions=steps[GeneratorRole.INVOLUTION],
            pairs=steps[GeneratorRole.PAIR],
            directed=steps[GeneratorRole.DIRECTED],
        )
        return MixedCayleyGraph(group, gens)


@dataclass(frozen=True)
class FamilyCertificate:
    family: str
    claimed_k: int
    measured_k: int
    claimed_N: int
    N: int
    r: int
    z: int

    @property
    def holds(self) -> bool:
        return self.claimed_k == self.measured_k and self.claimed_N == self.N

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


class Family(ABC):
    name: FamilyName
    min_k: int = 1

    @classmethod
    def check_diameter(cls, k: int):
        if k < cls.min_k:
            raise FamilyException(
                f"The {cls.name.value} family starts at diameter {cls.min_k}, got k={k}."
            )

    ### CONSTRUCTION ###

    @classmethod
    @abstractmethod
    def claimed_order(cls, k: int) -> int:
        """Returns the order the family reaches at diameter k

        Args:
            k (int): Diameter

        Returns:
            int: The claimed number of vertices
        """
        raise NotImplementedError()

    @classmethod
    @abstractmethod
    def build(cls, k: int) -> MixedCayleyGraph:
        """Returns the member of the family with diameter k

        Args:
            k (int): Diameter

        Returns:
            MixedCayleyGraph: The graph, as a circulant or a two-factor group
        """
        raise NotImplementedError()

    @classmethod
    @abstractmethod
    def presentation(cls, k: int) -> Optional[Presentation]:
        """Returns the lattice presentation of the member with diameter k, if one is known

        Args:
            k (int): Diameter

        Returns:
            Optional[Presentation]: Matrix, unit vector roles and involution
        """
        raise NotImplementedError()

    ### CERTIFICATION ###

    @classmethod
    def certify(cls, k: int, graph: Optional[MixedCayleyGraph] = None) -> FamilyCertificate:
        """Measure the diameter and order of a member (built here unless given) by BFS"""
        graph = cls.build(k) if graph is None else graph
        certificate = FamilyCertificate(
            family=cls.name.value,
            claimed_k=k,
            measured_k=graph.diameter(),
            claimed_N=cls.claimed_order(k),
            N=graph.N,
            r=graph.r,
            z=graph.z,
        )
        if not certificate.holds:
            logger.warning("Family %s fails its certificate at k=%d: %s", cls.name.value, k, certificate)
        return certificate
