# Standard Library Imports
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

# Module Imports
from mixed_abelian_cayley.bounds import DegreeSpec, mac_bound, mac_bound_improved
from mixed_abelian_cayley.cayley import (
    MixedCayleyGraph,
    MixedGenSet,
    directed_order_class,
    order_profile,
    pair_order_class,
)
from mixed_abelian_cayley.constants import (
    DEFAULT_MULTINOMIAL_CONVENTION,
    SEARCH_ORDER_CAP,
    MultinomialConvention,
)
from mixed_abelian_cayley.errors import (
    DegreeSpecException,
    GeneratingSetException,
    SearchCapException,
)
from mixed_abelian_cayley.lattice import AbelianGroup, GroupElement, enumerate_abelian_groups

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchSpec:
    """Target profile of a search: r_alpha involutions, r_omega pairs, z_omega directed steps

    N_max defaults to M_AC of the profile.
    """

    r_alpha: int
    r_omega: int
    z_omega: int
    k: int
    N_max: Optional[int] = None
    N_min: int = 1

    def __post_init__(self):
        for name in ("r_alpha", "r_omega", "z_omega"):
            if getattr(self, name) < 0:
                raise DegreeSpecException(f"Search count {name} must be nonnegative.")
        if self.k < 1:
            raise DegreeSpecException(f"Search diameter must be positive, got {self.k}.")
        if self.N_max is None:
            object.__setattr__(self, "N_max", mac_bound(self.r_alpha, self.r_omega, self.z_omega, self.k))

    @property
    def degree_spec(self) -> DegreeSpec:
        return DegreeSpec(k=self.k, r_alpha=self.r_alpha, r_omega=self.r_omega, z_omega=self.z_omega)

    def __str__(self) -> str:
        return f"r_a={self.r_alpha} r_w={self.r_omega} z_w={self.z_omega} k={self.k}"


@dataclass(frozen=True)
class Witness:
    group: AbelianGroup
    gens: MixedGenSet

    def build(self) -> MixedCayleyGraph:
        return MixedCayleyGraph(self.group, self.gens)

    def sort_key(self) -> tuple:
        return (self.group.invariant_factors, self.gens.involutions, self.gens.pairs, self.gens.directed)

    def __str__(self) -> str:
        return f"Cay({self.group}, {self.gens})"


@dataclass(frozen=True)
class GroupOutcome:
    group: AbelianGroup
    pruned: bool
    examined_sets: int
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class SearchResult:
    spec: SearchSpec
    best_N: int
    witnesses: tuple[Witness, ...]
    pruned_groups: int
    examined_sets: int
    rejected: tuple[AbelianGroup, ...] = ()

    def recertify(self, convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION) -> bool:
        """Every witness rebuilds, has the searched degrees, diameter <= k and order within its own bound"""
        for witness in self.witnesses:
            try:
                graph = witness.build()
            except GeneratingSetException:
                return False
            if graph.N != self.best_N or graph.diameter() > self.spec.k:
                return False
            if (
                len(witness.gens.involutions),
                len(witness.gens.pairs),
                len(witness.gens.directed),
            ) != (self.spec.r_alpha, self.spec.r_omega, self.spec.z_omega):
                return False
            if graph.N > mac_bound_improved(graph.degree_spec(self.spec.k), convention):
                return False
        return True


@lru_cache(maxsize=None)
def _improved_bound(spec: DegreeSpec, convention: MultinomialConvention) -> int:
    return mac_bound_improved(spec, convention)


### PRUNING ###


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prune_group(
    G: AbelianGroup,
    spec: SearchSpec,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> int:
    """Largest improved bound over the order classes G can offer each generator slot

    Element orders of G are exactly the divisors of its exponent. A slot with no
    element of order >= 3 available keeps the undetermined class, which only
    raises the bound.

    Args:
        G (AbelianGroup): Candidate group
        spec (SearchSpec): Target profile

    Returns:
        int: Upper bound on the order of any graph of the profile on G; G is rejected when below |G|
    """
    orders = [q for q in _divisors(G.exponent) if q >= 3]
    pair_classes = sorted({pair_order_class(q, spec.k) or 0 for q in orders}) or [0]
    directed_classes = sorted({directed_order_class(q, spec.k) or 0 for q in orders}) or [0]

    best = 0
    # class 0 stands for undetermined order
    for pair_choice in itertools.combinations_with_replacement(pair_classes, spec.r_omega):
        for directed_choice in itertools.combinations_with_replacement(directed_classes, spec.z_omega):
            r_odd: dict[int, int] = {}
            z_ord: dict[int, int] = {}
            for s in pair_choice:
                if s:
                    r_odd[s] = r_odd.get(s, 0) + 1
            for t in directed_choice:
                if t:
                    z_ord[t] = z_ord.get(t, 0) + 1
            profile = DegreeSpec(
                k=spec.k,
                r_alpha=spec.r_alpha,
                r_odd=r_odd,
                r_omega=pair_choice.count(0),
                z_ord=z_ord,
                z_omega=directed_choice.count(0),
            )
            best = max(best, _improved_bound(profile, convention))
    logger.debug("Group %s of order %d: order-aware bound %d", G, G.order, best)
    return best


### GENERATING SETS ###


def _unit_image(G: AbelianGroup, gens: MixedGenSet, u: int) -> MixedGenSet:
    def scale(g: GroupElement) -> GroupElement:
        return G.scalar_mul(g, u)

    return MixedGenSet(
        involutions=tuple(sorted(scale(g) for g in gens.involutions)),
        pairs=tuple(sorted(min(scale(g), G.negate(scale(g))) for g in gens.pairs)),
        directed=tuple(sorted(scale(b) for b in gens.directed)),
    )


def _canonical_key(gens: MixedGenSet) -> tuple:
    return (gens.involutions, gens.pairs, gens.directed)


def is_unit_orbit_minimum(G: AbelianGroup, gens: MixedGenSet) -> bool:
    """Whether gens is the least member of its orbit under multiplication by units"""
    key = _canonical_key(gens)
    return all(key <= _canonical_key(_unit_image(G, gens, u)) for u in G.units())


def enumerate_gen_sets(
    G: AbelianGroup,
    spec: SearchSpec,
    min_order: Optional[int] = None,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> Iterator[MixedGenSet]:
    """Admissible generating sets of G for the profile, each once up to slot order

    Cyclic groups are further reduced to one set per unit orbit. With
    `min_order`, sets whose own order profile bounds the graph below it are skipped.
    """
    elements = list(G.elements())
    involutions = G.elements_of_order(2)
    pairs = [g for g in elements if G.element_order(g) >= 3 and g <= G.negate(g)]
    directed = [g for g in elements if G.element_order(g) >= 3]

    for invs in itertools.combinations(involutions, spec.r_alpha):
        for prs in itertools.combinations(pairs, spec.r_omega):
            pair_steps = set(prs) | {G.negate(g) for g in prs}
            for drs in itertools.combinations(directed, spec.z_omega):
                if any(b in pair_steps or G.negate(b) in drs for b in drs):
                    continue
                gens = MixedGenSet(invs, prs, drs)
                if G.is_cyclic and not is_unit_orbit_minimum(G, gens):
                    continue
                if min_order is not None:
                    bound = _improved_bound(order_profile(G, gens, spec.k), convention)
                    if bound < min_order:
                        continue
                yield gens


def search_group(
    G: AbelianGroup,
    spec: SearchSpec,
    prune: bool = True,
    all_witnesses: bool = False,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> GroupOutcome:
    """Try every admissible generating set of G; one (N, group) task of the search"""
    if prune and prune_group(G, spec, convention) < G.order:
        return GroupOutcome(G, pruned=True, examined_sets=0, witnesses=())

    examined = 0
    witnesses = []
    for gens in enumerate_gen_sets(G, spec, G.order if prune else None, convention):
        examined += 1
        try:
            graph = MixedCayleyGraph(G, gens)
        except GeneratingSetException:
            continue
        if graph.diameter() <= spec.k:
            witnesses.append(Witness(G, gens))
            if not all_witnesses:
                break
    return GroupOutcome(G, pruned=False, examined_sets=examined, witnesses=tuple(witnesses))


### SEARCH DRIVER ###


class OptimalSearch:
    """Walks N down from N_max and stops at the first order with a witness"""

    def __init__(
        self,
        spec: SearchSpec,
        prune: bool = True,
        all_witnesses: bool = False,
        jobs: int = 1,
        cap: int = SEARCH_ORDER_CAP,
        convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
    ):
        # Ensure valid attributes
        if spec.N_max > cap:
            raise SearchCapException(f"N_max = {spec.N_max} exceeds the search cap {cap}.")
        if spec.N_min < 1 or spec.N_min > spec.N_max:
            raise SearchCapException(f"Empty search range [{spec.N_min}, {spec.N_max}].")
        if jobs < 1:
            raise ValueError(f"Number of jobs must be positive, got {jobs}.")

        self.spec = spec
        self.prune = prune
        self.all_witnesses = all_witnesses
        self.jobs = jobs
        self.convention = convention
        self.result: Optional[SearchResult] = None

    def _outcomes(self, groups: list[AbelianGroup], executor: Optional[ProcessPoolExecutor]) -> list[GroupOutcome]:
        arguments = (self.spec, self.prune, self.all_witnesses, self.convention)
        if executor is None:
            return [search_group(G, *arguments) for G in groups]
        futures = [executor.submit(search_group, G, *arguments) for G in groups]
        return [future.result() for future in futures]

    def run(self) -> SearchResult:
        pruned_groups = examined_sets = 0
        rejected: list[AbelianGroup] = []
        executor = ProcessPoolExecutor(max_workers=self.jobs) if self.jobs > 1 else None
        try:
            for N in range(self.spec.N_max, self.spec.N_min - 1, -1):
                groups = enumerate_abelian_groups(N)
                outcomes = self._outcomes(groups, executor)
                pruned = [outcome.group for outcome in outcomes if outcome.pruned]
                pruned_groups += len(pruned)
                rejected += pruned
                examined_here = sum(outcome.examined_sets for outcome in outcomes)
                examined_sets += examined_here
                logger.info(
                    "N=%d: %d groups, %d pruned, %d generating sets examined",
                    N,
                    len(groups),
                    len(pruned),
                    examined_here,
                )
                witnesses = sorted(
                    (witness for outcome in outcomes for witness in outcome.witnesses),
                    key=Witness.sort_key,
                )
                if witnesses:
                    if not self.all_witnesses:
                        witnesses = witnesses[:1]
                    self.result = SearchResult(
                        self.spec, N, tuple(witnesses), pruned_groups, examined_sets, tuple(rejected)
                    )
                    return self.result
        finally:
            if executor is not None:
                executor.shutdown()

        logger.warning("No witness for %s in [%d, %d]", self.spec, self.spec.N_min, self.spec.N_max)
        self.result = SearchResult(self.spec, 0, (), pruned_groups, examined_sets, tuple(rejected))
        return self.result

    def write_search_report(self) -> tuple[str, ...]:
        if self.result is None:
            raise ValueError("The search has not run yet.")
        report: tuple[str, ...] = (f"Search {self.spec}",)
        values = {
            "best_N": self.result.best_N,
            "witnesses": len(self.result.witnesses),
            "pruned_groups": self.result.pruned_groups,
            "examined_sets": self.result.examined_sets,
            "rejected": ", ".join(str(G) for G in self.result.rejected) or None,
        }
        field_name_length = max(len(name) for name in values)
        format_string = f"    {{field_name:{field_name_length}s}}: {{value}}"
        for name, value in values.items():
            if value is not None:
                report += (format_string.format(field_name=name, value=value),)
        for number, witness in enumerate(self.result.witnesses):
            report += (f"Witness #{number + 1}: {witness}",)
        return report


def search_optimal(
    spec: SearchSpec,
    prune: bool = True,
    all_witnesses: bool = False,
    jobs: int = 1,
    cap: int = SEARCH_ORDER_CAP,
    convention: MultinomialConvention = DEFAULT_MULTINOMIAL_CONVENTION,
) -> SearchResult:
    """Largest order N in [N_min, N_max] with a mixed Abelian Cayley graph of the profile and diameter <= k

    Args:
        spec (SearchSpec): Profile, diameter and order range
        prune (bool): Reject groups and generating sets by the order-aware bound
        all_witnesses (bool): Report every witness at the best order instead of the first
        jobs (int): Worker processes; (N, group) pairs are the unit of work
        cap (int): Largest N_max accepted

    Returns:
        SearchResult: Best order and witnesses, sorted by group chain then generating set
    """
    return OptimalSearch(spec, prune, all_witnesses, jobs, cap, convention).run()
