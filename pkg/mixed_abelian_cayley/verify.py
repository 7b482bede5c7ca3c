"""Acceptance criteria, run one by one into a PASS/FAIL table"""

# Standard Library Imports
import itertools
import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

# Module Imports
from mixed_abelian_cayley.bounds import (
    DegreeSpec,
    MooreParams,
    mac_bound,
    mac_bound_combinatorial_form,
    mac_bound_generating_function_form,
    mac_bound_improved,
    moore_count_oracle,
    moore_mixed_general,
)
from mixed_abelian_cayley.cayley import (
    MixedCayleyGraph,
    cartesian_product,
    circulant,
    contract_involution,
)
from mixed_abelian_cayley.constants import FamilyName, MultinomialConvention
from mixed_abelian_cayley.errors import CayleyGraphException
from mixed_abelian_cayley.families import FAMILIES
from mixed_abelian_cayley.lattice import AbelianGroup, IntMatrix, group_from_matrix, smith_normal_form
from mixed_abelian_cayley.search import SearchSpec, search_optimal

logger = logging.getLogger(__name__)

WORKED_EXAMPLE_MATRIX = IntMatrix(((3, -2, 0), (0, 4, 1), (0, 0, 2)))

FAMILY_DIAMETERS = {
    FamilyName.BASE: range(1, 11),
    FamilyName.DIAMOND: range(2, 13),
    FamilyName.T_TILE: range(1, 11),
    FamilyName.T: range(2, 13),
}

# (r_alpha, r_omega, z_omega, k) -> best order
DESK_SCALE_OPTIMA = {
    (1, 2, 0, 2): 16,
    (1, 1, 1, 2): 10,
    (0, 2, 0, 2): 13,
}


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass(frozen=True)
class Criterion:
    name: str
    check: Callable[[], tuple[bool, str]]
    slow: bool = False

    def run(self) -> CriterionResult:
        start = time.perf_counter()
        try:
            passed, detail = self.check()
        except (CayleyGraphException, ValueError) as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        return CriterionResult(self.name, passed, detail, time.perf_counter() - start)


### BOUNDS ###


def check_bound_table() -> tuple[bool, str]:
    spec = DegreeSpec(k=7, r_alpha=1, z_ord={3: 2})
    values = {
        "M_AC(1,0,2,7)": mac_bound(1, 0, 2, 7),
        "exact": mac_bound_improved(spec, MultinomialConvention.EXACT),
        "published": mac_bound_improved(spec, MultinomialConvention.PUBLISHED),
        "oracle": moore_count_oracle(spec),
    }
    passed = values == {"M_AC(1,0,2,7)": 64, "exact": 32, "published": 34, "oracle": 32}
    return passed, ", ".join(f"{name}={value}" for name, value in values.items())


def check_closed_forms() -> tuple[bool, str]:
    cases = list(itertools.product(range(5), range(5), range(5), range(1, 9)))
    mismatches = [
        case
        for case in cases
        if mac_bound_generating_function_form(*case) != mac_bound_combinatorial_form(*case)
    ]
    return not mismatches, f"{len(cases)} cases, mismatches {mismatches[:3]}"


def check_symmetry() -> tuple[bool, str]:
    count = 0
    failures = []
    for r1, r2, z in itertools.product(range(4), repeat=3):
        for k in range(1, 7):
            for nu in range(-r2, min(r1, z) + 1):
                count += 1
                if mac_bound(r1, r2, z, k) != mac_bound(r1 - nu, r2 + nu, z - nu, k):
                    failures.append((r1, r2, z, k, nu))
    return not failures, f"{count} cases, failures {failures[:3]}"


def _class_counts(classes: range) -> list[dict[int, int]]:
    """Every assignment of a count in 0..2 to each class, zero counts left out"""
    return [
        {c: count for c, count in zip(classes, counts) if count}
        for counts in itertools.product(range(3), repeat=len(classes))
    ]


def oracle_grid(max_generators: int = 4) -> Iterator[DegreeSpec]:
    """Profiles with every count <= 2, odd classes s <= 3 and directed classes t <= 3, mixed freely"""
    for k in range(1, 6):
        odd_options = _class_counts(range(1, min(3, k) + 1))
        directed_options = _class_counts(range(2, min(3, k) + 1))
        for r_alpha, r_omega, z_omega in itertools.product(range(3), repeat=3):
            for r_odd, z_ord in itertools.product(odd_options, directed_options):
                generators = r_alpha + r_omega + z_omega + sum(r_odd.values()) + sum(z_ord.values())
                if 1 <= generators <= max_generators:
                    yield DegreeSpec(
                        k=k, r_alpha=r_alpha, r_odd=r_odd, r_omega=r_omega, z_ord=z_ord, z_omega=z_omega
                    )


def check_oracle() -> tuple[bool, str]:
    count = 0
    failures = []
    for spec in oracle_grid():
        count += 1
        if mac_bound_improved(spec) != moore_count_oracle(spec):
            failures.append(str(spec))
    return not failures, f"{count} profiles, failures {failures[:2]}"


def check_moore_general() -> tuple[bool, str]:
    count = 0
    failures = []
    for r, z in itertools.product(range(5), repeat=2):
        if r + z == 0 or (r, z) == (1, 0):
            continue
        params = MooreParams.from_degrees(r, z)
        for k in range(1, 11):
            count += 1
            if moore_mixed_general(r, z, k, check=False) != params.closed_form(k):
                failures.append((r, z, k))
    for r_alpha, r_omega, z_omega in itertools.product(range(3), repeat=3):
        if r_alpha + r_omega + z_omega == 0 or (r_alpha + 2 * r_omega, z_omega) == (1, 0):
            continue
        for k in range(1, 11):
            count += 1
            if mac_bound(r_alpha, r_omega, z_omega, k) > moore_mixed_general(
                r_alpha + 2 * r_omega, z_omega, k
            ):
                failures.append(("dominance", r_alpha, r_omega, z_omega, k))
    return not failures, f"{count} cases, failures {failures[:3]}"


### LATTICE ###


def check_worked_example() -> tuple[bool, str]:
    decomposition = smith_normal_form(WORKED_EXAMPLE_MATRIX)
    group, images = group_from_matrix(WORKED_EXAMPLE_MATRIX)
    classes = sorted(min(g.coords[0], -g.coords[0] % 24) for g in images) if group.rank else []
    # images are fixed up to an automorphism of Z_24, i.e. a unit
    matches = any(
        sorted(min(u * c % 24, -u * c % 24) for c in classes) == [2, 3, 12] for u in group.units()
    )
    passed = (
        decomposition.diagonal == (1, 1, 24)
        and decomposition.identity_holds()
        and decomposition.is_unimodular()
        and group == AbelianGroup((24,))
        and matches
    )
    return passed, f"S=diag{decomposition.diagonal}, group {group}, images {[str(g) for g in images]}"


### FAMILIES ###


def check_families() -> tuple[bool, str]:
    failures = []
    count = 0
    for name, diameters in FAMILY_DIAMETERS.items():
        for k in diameters:
            count += 1
            if not FAMILIES[name].certify(k).holds:
                failures.append(f"{name.value}@{k}")
    return not failures, f"{count} members, failures {failures}"


### CAYLEY CONSTRUCTIONS ###


def small_product_pairs() -> list[tuple[MixedCayleyGraph, MixedCayleyGraph]]:
    k2 = circulant(2, involutions=(1,))
    c5 = circulant(5, pairs=(1,))
    c4 = circulant(4, pairs=(1,))
    d3 = circulant(3, directed=(1,))
    d4 = circulant(4, directed=(1,))
    c6 = circulant(6, involutions=(3,), pairs=(1,))
    return [
        (k2, k2),
        (c5, c5),
        (k2, c5),
        (c4, d3),
        (d3, d4),
        (d3, d3),
        (c6, k2),
        (c4, c4),
        (d4, c5),
        (c6, d3),
    ]


def check_graph_constructions() -> tuple[bool, str]:
    count = 0
    failures = []
    for name in (FamilyName.DIAMOND, FamilyName.T, FamilyName.T_TILE):
        for k in range(FAMILIES[name].min_k, 9):
            graph = FAMILIES[name].build(k)
            for b in graph.gens.involutions:
                count += 1
                quotient = contract_involution(graph, b)
                if quotient.N * 2 != graph.N or quotient.diameter() not in (k - 1, k):
                    failures.append(f"{name.value}@{k}")
    for first, second in small_product_pairs():
        count += 1
        if cartesian_product(first, second).diameter() != first.diameter() + second.diameter():
            failures.append(f"{first} x {second}")
    return not failures, f"{count} checks, failures {failures}"


### SEARCH ###


def check_desk_scale_optima() -> tuple[bool, str]:
    details = []
    passed = True
    for profile, expected in DESK_SCALE_OPTIMA.items():
        pruned = search_optimal(SearchSpec(*profile))
        full = search_optimal(SearchSpec(*profile), prune=False)
        ok = pruned.best_N == full.best_N == expected and pruned.recertify()
        passed &= ok
        details.append(f"{profile}: {pruned.best_N}/{full.best_N}")
    return passed, ", ".join(details)


def check_search_k3() -> tuple[bool, str]:
    result = search_optimal(SearchSpec(1, 1, 1, 3))
    expected = FAMILIES[FamilyName.T].claimed_order(3)
    return result.best_N == expected and result.recertify(), f"best_N={result.best_N}"


CRITERIA: tuple[Criterion, ...] = (
    Criterion("bounds.table", check_bound_table),
    Criterion("bounds.closed-forms", check_closed_forms),
    Criterion("bounds.symmetry", check_symmetry),
    Criterion("bounds.oracle", check_oracle),
    Criterion("lattice.worked-example", check_worked_example),
    Criterion("families.certification", check_families),
    Criterion("search.desk-scale", check_desk_scale_optima),
    Criterion("search.k3", check_search_k3, slow=True),
    Criterion("cayley.constructions", check_graph_constructions),
    Criterion("bounds.moore-general", check_moore_general),
)


def run_criteria(
    prefix: Optional[str] = None,
    include_slow: bool = False,
    criteria: tuple[Criterion, ...] = CRITERIA,
) -> list[CriterionResult]:
    """Run every criterion whose name starts with `prefix`

    Args:
        prefix (Optional[str]): Name prefix filter, e.g. `bounds`
        include_slow (bool): Also run the criteria marked slow

    Returns:
        list[CriterionResult]: One result per criterion run, in table order
    """
    results = []
    for criterion in criteria:
        if prefix is not None and not criterion.name.startswith(prefix):
            continue
        if criterion.slow and not include_slow:
            continue
        logger.info("Running %s", criterion.name)
        results.append(criterion.run())
    return results


def format_results(results: list[CriterionResult]) -> tuple[str, ...]:
    name_length = max((len(result.name) for result in results), default=4)
    report: tuple[str, ...] = tuple()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        report += (f"{result.name:{name_length}s}  {status}  {result.seconds:7.2f}s  {result.detail}",)
    return report
