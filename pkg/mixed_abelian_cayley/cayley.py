# Standard Library Imports
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

# Third Party Imports
import networkx as nx
import numpy as np

# Module Imports
from mixed_abelian_cayley.bounds import DegreeSpec, mac_bound_improved
from mixed_abelian_cayley.constants import (
    DESCRIPTION_KEYS_BY_ROLE,
    DOT_EXPORT_MAX_ORDER,
    RANDOM_SOURCE_COUNT,
    GeneratorRole,
)
from mixed_abelian_cayley.errors import CertificationException, GeneratingSetException
from mixed_abelian_cayley.lattice import (
    AbelianGroup,
    GroupElement,
    IntMatrix,
    group_from_matrix,
    map_vector,
)

logger = logging.getLogger(__name__)

RawElement = Union[GroupElement, int, Sequence[int]]


def _as_element(group: AbelianGroup, g: RawElement) -> GroupElement:
    if isinstance(g, GroupElement):
        if not group.contains(g):
            raise GeneratingSetException(f"Element {g.coords} is not a reduced residue of {group}.")
        return g
    try:
        return group.element(g)
    except ValueError as e:
        raise GeneratingSetException(f"Element {g} does not belong to {group}.") from e


### GENERATING SETS ###


@dataclass(frozen=True)
class MixedGenSet:
    """Involutions, +-pairs (one representative each) and directed generators

    A pair g stands for the two steps g and -g; its stored representative is
    min(g, -g) in lexicographic residue order.
    """

    involutions: tuple[GroupElement, ...] = ()
    pairs: tuple[GroupElement, ...] = ()
    directed: tuple[GroupElement, ...] = ()

    @classmethod
    def create(
        cls,
        group: AbelianGroup,
        involutions: Iterable[RawElement] = (),
        pairs: Iterable[RawElement] = (),
        directed: Iterable[RawElement] = (),
    ) -> "MixedGenSet":
        """Strict constructor: canonicalize the pair representatives, sort, and validate

        Raises:
            GeneratingSetException: If any of the generating set invariants fails
        """
        pair_reps = []
        for g in pairs:
            g = _as_element(group, g)
            pair_reps.append(min(g, group.negate(g)))
        gens = cls(
            involutions=tuple(sorted(_as_element(group, g) for g in involutions)),
            pairs=tuple(sorted(pair_reps)),
            directed=tuple(sorted(_as_element(group, b) for b in directed)),
        )
        gens.validate(group)
        return gens

    @classmethod
    def normalize(
        cls,
        group: AbelianGroup,
        involutions: Iterable[RawElement] = (),
        pairs: Iterable[RawElement] = (),
        directed: Iterable[RawElement] = (),
    ) -> "MixedGenSet":
        """Lenient constructor that classifies raw steps by their exact order

        Zero steps and duplicates are dropped, steps of order 2 become
        involutions and a directed b whose inverse is also a step becomes a pair.
        """
        undirected: set[GroupElement] = set()
        for g in [*involutions, *pairs]:
            g = _as_element(group, g)
            if g != group.zero:
                undirected.update((g, group.negate(g)))
        forward: set[GroupElement] = set()
        for b in directed:
            b = _as_element(group, b)
            match group.element_order(b):
                case 1:
                    continue
                case 2:
                    undirected.add(b)
                case _:
                    forward.add(b)
        for b in sorted(forward):
            if group.negate(b) in forward or b in undirected:
                undirected.update((b, group.negate(b)))
        forward -= undirected

        return cls(
            involutions=tuple(sorted(g for g in undirected if group.element_order(g) == 2)),
            pairs=tuple(
                sorted(
                    {min(g, group.negate(g)) for g in undirected if group.element_order(g) > 2}
                )
            ),
            directed=tuple(sorted(forward)),
        )

    def validate(self, group: AbelianGroup):
        steps: list[GroupElement] = []
        for g in self.involutions:
            if not group.contains(g) or group.element_order(g) != 2:
                raise GeneratingSetException(f"Involution {g} of {group} must have order 2.")
            steps.append(g)
        for g in self.pairs:
            if not group.contains(g) or group.element_order(g) < 3:
                raise GeneratingSetException(
                    f"Pair {g} of {group} must have order at least 3; order-2 steps are involutions."
                )
            if g != min(g, group.negate(g)):
                raise GeneratingSetException(
                    f"Pair representative {g} of {group} is not min(g, -g)."
                )
            steps += [g, group.negate(g)]
        for b in self.directed:
            if not group.contains(b):
                raise GeneratingSetException(f"Directed generator {b} is not a residue of {group}.")
            match group.element_order(b):
                case 1:
                    raise GeneratingSetException("The zero element cannot be a directed generator.")
                case 2:
                    raise GeneratingSetException(
                        f"Directed generator {b} of {group} is an involution."
                    )
            steps.append(b)
        if len(set(steps)) != len(steps):
            raise GeneratingSetException(f"Generating set {self} repeats a step.")
        step_set = set(steps)
        for b in self.directed:
            if group.negate(b) in step_set:
                raise GeneratingSetException(
                    f"Directed generator {b} has its inverse in the generating set; use a pair."
                )

    @property
    def r(self) -> int:
        return len(self.involutions) + 2 * len(self.pairs)

    @property
    def z(self) -> int:
        return len(self.directed)

    def steps(self, group: AbelianGroup) -> list[tuple[GroupElement, GeneratorRole]]:
        """Out-neighbour offsets with their roles; an involution is one step"""
        steps = [(g, GeneratorRole.INVOLUTION) for g in self.involutions]
        for g in self.pairs:
            steps += [(g, GeneratorRole.PAIR), (group.negate(g), GeneratorRole.PAIR)]
        steps += [(b, GeneratorRole.DIRECTED) for b in self.directed]
        return steps

    def by_role(self) -> dict[GeneratorRole, tuple[GroupElement, ...]]:
        return {
            GeneratorRole.INVOLUTION: self.involutions,
            GeneratorRole.PAIR: self.pairs,
            GeneratorRole.DIRECTED: self.directed,
        }

    def __str__(self) -> str:
        parts = [f"{g}" for g in self.involutions]
        parts += [f"±{g}" for g in self.pairs]
        parts += [f"{b}>" for b in self.directed]
        return "{" + ", ".join(parts) + "}"


### ORDER CLASSES ###


def pair_order_class(order: int, k: int) -> Optional[int]:
    """Class s of a pair of order q >= 3, or None for undetermined order

    q lands in s = q // 2 when s < k. For even q that class counts 2s + 1 > q
    residues, so bounds built on it stay upper bounds.
    """
    s = order // 2
    return s if s < k else None


def directed_order_class(order: int, k: int) -> Optional[int]:
    """Class t = q - 1 of a directed generator of order q >= 3, or None when t >= k"""
    t = order - 1
    return t if t < k else None


def order_profile(group: AbelianGroup, gens: MixedGenSet, k: int) -> DegreeSpec:
    r_odd: dict[int, int] = {}
    z_ord: dict[int, int] = {}
    r_omega = z_omega = 0
    for g in gens.pairs:
        s = pair_order_class(group.element_order(g), k)
        if s is None:
            r_omega += 1
        else:
            r_odd[s] = r_odd.get(s, 0) + 1
    for b in gens.directed:
        t = directed_order_class(group.element_order(b), k)
        if t is None:
            z_omega += 1
        else:
            z_ord[t] = z_ord.get(t, 0) + 1
    return DegreeSpec(
        k=max(k, 1),
        r_alpha=len(gens.involutions),
        r_odd=r_odd,
        r_omega=r_omega,
        z_ord=z_ord,
        z_omega=z_omega,
    )


### GRAPHS ###


class MixedCayleyGraph:
    """Cay(group, gens), with vertices indexed densely in mixed radix order

    The successor table holds one column per step, so BFS is a sequence of
    frontier gathers.
    """

    def __init__(self, group: AbelianGroup, gens: MixedGenSet):
        gens.validate(group)
        self.group = group
        self.gens = gens
        self.steps = gens.steps(group)

        factors = np.array(group.invariant_factors, dtype=np.int64)
        self.successors = np.zeros((group.order, len(self.steps)), dtype=np.int64)
        if group.rank:
            coords = np.array(
                np.unravel_index(np.arange(group.order), group.invariant_factors)
            )
            for column, (step, _) in enumerate(self.steps):
                shifted = (coords + np.array(step.coords)[:, None]) % factors[:, None]
                self.successors[:, column] = np.ravel_multi_index(
                    tuple(shifted), group.invariant_factors
                )

        self._profile = self.distance_profile()
        if sum(self._profile) != group.order:
            raise GeneratingSetException(
                f"{gens} reaches {sum(self._profile)} of the {group.order} elements of {group}."
            )
        logger.debug("Built Cay(%s, %s) with N=%d, r=%d, z=%d", group, gens, self.N, self.r, self.z)

    @property
    def N(self) -> int:
        return self.group.order

    @property
    def r(self) -> int:
        return self.gens.r

    @property
    def z(self) -> int:
        return self.gens.z

    ### DISTANCES ###

    def distances(self, source: int = 0) -> np.ndarray:
        """BFS distance from the vertex with dense index `source`, -1 when unreachable"""
        distance = np.full(self.N, -1, dtype=np.int64)
        distance[source] = 0
        frontier = np.array([source], dtype=np.int64)
        level = 0
        while frontier.size and self.successors.shape[1]:
            level += 1
            reached = np.unique(self.successors[frontier].ravel())
            frontier = reached[distance[reached] < 0]
            distance[frontier] = level
        return distance

    def distance_profile(self, source: int = 0) -> list[int]:
        """Layer sizes of the BFS from `source`; index i holds the vertices at distance i"""
        distance = self.distances(source)
        return np.bincount(distance[distance >= 0]).tolist()

    def eccentricity(self, source: int = 0) -> int:
        return len(self.distance_profile(source)) - 1

    def diameter(self) -> int:
        """One BFS from 0 suffices since Cayley graphs are vertex-transitive"""
        return len(self._profile) - 1

    def sample_sources(self, count: int = RANDOM_SOURCE_COUNT, seed: int = 0) -> list[int]:
        rng = np.random.default_rng(seed)
        return sorted(rng.choice(self.N, size=min(count, self.N), replace=False).tolist())

    def vertex_transitivity_holds(self, count: int = RANDOM_SOURCE_COUNT, seed: int = 0) -> bool:
        """Smoke check: BFS from random sources gives the same eccentricity as from 0"""
        return all(
            self.eccentricity(source) == self.diameter()
            for source in self.sample_sources(count, seed)
        )

    ### ORDER PROFILE ###

    def degree_spec(self, k: Optional[int] = None) -> DegreeSpec:
        """DegreeSpec induced by the exact orders of the generators

        Args:
            k (Optional[int]): Diameter of the profile, the measured diameter when None
        """
        return order_profile(self.group, self.gens, self.diameter() if k is None else k)

    def improved_bound(self, k: Optional[int] = None) -> int:
        return mac_bound_improved(self.degree_spec(k))

    ### EXPORT ###

    def to_networkx(self) -> nx.DiGraph:
        """DiGraph on dense indices; undirected edges appear as two arcs"""
        graph = nx.DiGraph()
        for index, element in enumerate(self.group.elements()):
            graph.add_node(index, label=str(element))
        for column, (step, role) in enumerate(self.steps):
            for u, v in enumerate(self.successors[:, column].tolist()):
                graph.add_edge(u, v, role=role.value, step=str(step))
        return graph

    def __str__(self) -> str:
        return f"Cay({self.group}, {self.gens})"


def build(group: AbelianGroup, gens: MixedGenSet) -> MixedCayleyGraph:
    return MixedCayleyGraph(group, gens)


def circulant(
    N: int,
    involutions: Iterable[int] = (),
    pairs: Iterable[int] = (),
    directed: Iterable[int] = (),
) -> MixedCayleyGraph:
    """Circ(N; ...) with explicit generator roles"""
    group = AbelianGroup((N,) if N > 1 else ())
    return MixedCayleyGraph(group, MixedGenSet.create(group, involutions, pairs, directed))


### CONSTRUCTIONS ###


def cartesian_product(G1: MixedCayleyGraph, G2: MixedCayleyGraph) -> MixedCayleyGraph:
    """Cay(G1.group x G2.group, (gens1, 0) and (0, gens2)), presented through diag(M1, M2)"""
    M = IntMatrix.block_diagonal(
        IntMatrix.diagonal(G1.group.invariant_factors),
        IntMatrix.diagonal(G2.group.invariant_factors),
    )
    group, images = group_from_matrix(M)
    first, second = images[: G1.group.rank], images[G1.group.rank :]

    def embed(g: GroupElement, own: Sequence[GroupElement]) -> GroupElement:
        return map_vector(own, g.coords, group)

    roles = {role: [] for role in GeneratorRole}
    for graph, own in ((G1, first), (G2, second)):
        for role, elements in graph.gens.by_role().items():
            roles[role] += [embed(g, own) for g in elements]
    gens = MixedGenSet.create(
        group,
        involutions=roles[GeneratorRole.INVOLUTION],
        pairs=roles[GeneratorRole.PAIR],
        directed=roles[GeneratorRole.DIRECTED],
    )
    return MixedCayleyGraph(group, gens)


def contract_involution(G: MixedCayleyGraph, b: RawElement) -> MixedCayleyGraph:
    """Quotient by {0, b}, contracting every edge generated by the involution b

    Raises:
        GeneratingSetException: If b is not one of the involutions of G
        CertificationException: If the contracted diameter is not D - 1 or D
    """
    b = _as_element(G.group, b)
    if b not in G.gens.involutions:
        raise GeneratingSetException(f"{b} is not an involution of {G.gens}.")

    # 2b lies in the lattice, so every nonzero b_j is d_j / 2 and row j may give way to b
    j = max(index for index, coord in enumerate(b.coords) if coord)
    M = IntMatrix.diagonal(G.group.invariant_factors).with_row(j, b.coords)
    group, images = group_from_matrix(M)

    def project(elements: Iterable[GroupElement]) -> list[GroupElement]:
        return [map_vector(images, g.coords, group) for g in elements]

    quotient = MixedCayleyGraph(
        group,
        MixedGenSet.normalize(
            group,
            involutions=project(g for g in G.gens.involutions if g != b),
            pairs=project(G.gens.pairs),
            directed=project(G.gens.directed),
        ),
    )

    if quotient.N * 2 != G.N:
        raise CertificationException(f"Contracting {b} in {G} gave order {quotient.N}.")
    if quotient.diameter() not in (G.diameter() - 1, G.diameter()):
        raise CertificationException(
            f"Contracting {b} in {G} changed the diameter from {G.diameter()} to {quotient.diameter()}."
        )
    return quotient


@dataclass(frozen=True)
class RowStretch:
    original: MixedCayleyGraph
    stretched: MixedCayleyGraph
    matrix: IntMatrix
    row_index: int
    alpha: int

    @property
    def D(self) -> int:
        return self.original.diameter()

    @property
    def D_stretched(self) -> int:
        return self.stretched.diameter()

    @property
    def increases_by_one(self) -> bool:
        return self.D_stretched == self.D + 1


def unit_vector_graph(M: IntMatrix) -> MixedCayleyGraph:
    """Cay(Z^n / Z^n M, {e_1, ..., e_n}) with the unit vectors as directed steps"""
    group, images = group_from_matrix(M)
    return MixedCayleyGraph(group, MixedGenSet.normalize(group, directed=images))


def stretch_row(M: IntMatrix, row_index: int, alpha: int) -> RowStretch:
    """Multiply row u of M by alpha and add the steps 2u, ..., alpha u

    The diameter is measured on both graphs and reported, never assumed.

    Args:
        M (IntMatrix): Nonsingular matrix of the original graph
        row_index (int): Index of the row u
        alpha (int): Stretch factor, at least 2

    Returns:
        RowStretch: Both graphs and the stretched matrix
    """
    if alpha < 2:
        raise ValueError(f"Stretch factor must be at least 2, got {alpha}.")
    if not 0 <= row_index < M.n:
        raise ValueError(f"Row {row_index} does not exist in a {M.n}x{M.n} matrix.")

    original = unit_vector_graph(M)
    stretched_matrix = M.with_row_scaled(row_index, alpha)
    group, images = group_from_matrix(stretched_matrix)
    u = M[row_index]
    multiples = [map_vector(images, [j * entry for entry in u], group) for j in range(2, alpha + 1)]
    stretched = MixedCayleyGraph(group, MixedGenSet.normalize(group, directed=[*images, *multiples]))

    stretch = RowStretch(original, stretched, stretched_matrix, row_index, alpha)
    if not stretch.increases_by_one:
        logger.warning(
            "Stretching row %d of %s by %d moved the diameter from %d to %d, not to %d",
            row_index,
            M.rows,
            alpha,
            stretch.D,
            stretch.D_stretched,
            stretch.D + 1,
        )
    return stretch


### DESCRIPTION FILES ###


def _format_element(g: GroupElement) -> str:
    return ",".join(str(coord) for coord in g.coords)


def format_graph_description(G: MixedCayleyGraph) -> str:
    lines = [f"group {G.group}"]
    for role, elements in G.gens.by_role().items():
        lines += [f"{DESCRIPTION_KEYS_BY_ROLE[role]} {_format_element(g)}" for g in elements]
    return "\n".join(lines) + "\n"


def parse_graph_description(text: str) -> MixedCayleyGraph:
    """Parse `group Z4xZ12` followed by `inv`, `pair` and `dir` lines; `#` starts a comment"""
    roles_by_key = {key: role for role, key in DESCRIPTION_KEYS_BY_ROLE.items()}
    group = None
    elements: dict[GeneratorRole, list[tuple[int, ...]]] = {role: [] for role in GeneratorRole}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        value = value.strip()
        if key == "group":
            if group is not None:
                raise ValueError(f"Line {number}: the group is given twice.")
            group = AbelianGroup.parse(value)
        elif key in roles_by_key:
            try:
                coords = tuple(int(coord) for coord in value.split(","))
            except ValueError as e:
                raise ValueError(f"Line {number}: cannot parse element {value!r}.") from e
            elements[roles_by_key[key]].append(coords)
        else:
            raise ValueError(f"Line {number}: unknown key {key!r}.")
    if group is None:
        raise ValueError("Graph description does not name its group.")
    gens = MixedGenSet.create(
        group,
        involutions=elements[GeneratorRole.INVOLUTION],
        pairs=elements[GeneratorRole.PAIR],
        directed=elements[GeneratorRole.DIRECTED],
    )
    return MixedCayleyGraph(group, gens)


def read_graph_file(path: Union[str, Path]) -> MixedCayleyGraph:
    return parse_graph_description(Path(path).read_text())


def write_graph_file(G: MixedCayleyGraph, path: Union[str, Path]):
    Path(path).write_text(format_graph_description(G))


def to_dot(G: MixedCayleyGraph, max_order: int = DOT_EXPORT_MAX_ORDER) -> str:
    """DOT text; each undirected edge is drawn once without arrowheads"""
    if G.N > max_order:
        raise ValueError(f"DOT export is limited to {max_order} vertices, the graph has {G.N}.")
    graph = G.to_networkx()
    lines = ["digraph G {"]
    for node, label in graph.nodes(data="label"):
        lines.append(f'  {node} [label="{label}"];')
    for u, v, role in graph.edges(data="role"):
        if role == GeneratorRole.DIRECTED.value:
            lines.append(f"  {u} -> {v};")
        elif u <= v:
            lines.append(f"  {u} -> {v} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
