# Standard Library Imports
import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Optional

# Module Imports
from mixed_abelian_cayley.bounds import (
    DegreeSpec,
    improved_bound_terms,
    mac_bound,
    mac_bound_order5,
    moore_layers,
    moore_mixed_general,
    parse_mixed_degrees,
)
from mixed_abelian_cayley.cayley import (
    format_graph_description,
    read_graph_file,
    to_dot,
    write_graph_file,
)
from mixed_abelian_cayley.constants import (
    EXIT_INVALID_INPUT,
    EXIT_SUCCESS,
    EXIT_VERIFICATION_FAILURE,
    SEARCH_ORDER_CAP,
    MultinomialConvention,
)
from mixed_abelian_cayley.errors import (
    CertificationException,
    DegreeSpecException,
    FamilyException,
    GeneratingSetException,
    OracleCapException,
    SearchCapException,
    SingularMatrixException,
)
from mixed_abelian_cayley.families import get_family
from mixed_abelian_cayley.lattice import (
    enumerate_abelian_groups,
    group_from_matrix,
    read_matrix_file,
    smith_normal_form,
)
from mixed_abelian_cayley.search import OptimalSearch, SearchSpec
from mixed_abelian_cayley.verify import format_results, run_criteria

logger = logging.getLogger(__name__)

INVALID_INPUT_EXCEPTIONS = (
    OSError,
    ValueError,
    DegreeSpecException,
    GeneratingSetException,
    SingularMatrixException,
    FamilyException,
    OracleCapException,
    SearchCapException,
)


def _emit(args: argparse.Namespace, record: dict, lines: tuple[str, ...]):
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print("\n".join(lines))


def _field_lines(record: dict) -> tuple[str, ...]:
    field_name_length = max(len(name) for name in record)
    return tuple(f"{name:{field_name_length}s}: {value}" for name, value in record.items())


### BOUNDS ###


def cmd_bound(args: argparse.Namespace) -> int:
    convention = MultinomialConvention(args.convention.upper())
    match args.kind:
        case "general":
            r, z, k = parse_mixed_degrees(args.profile)
            value = moore_mixed_general(r, z, k)
            record = {"r": r, "z": z, "k": k, "bound": value, "layers": list(moore_layers(r, z, k))}
        case "mac":
            spec = DegreeSpec.parse(args.profile).coarsened()
            value = mac_bound(spec.r_alpha, spec.r_omega, spec.z_omega, spec.k)
            record = {"spec": str(spec), "bound": value}
        case "improved":
            spec = DegreeSpec.parse(args.profile)
            terms = improved_bound_terms(spec, convention)
            value = sum(term.value for term in terms)
            record = {"spec": str(spec), "convention": convention.value, "bound": value}
            if args.explain:
                record["terms"] = [asdict(term) for term in terms if term.value]
        case "order5":
            spec = DegreeSpec.parse(args.profile)
            if spec.z_ord or set(spec.r_odd_map) - {2}:
                raise DegreeSpecException(f"{spec} has known orders other than pairs of order 5.")
            value = mac_bound_order5(
                spec.r_alpha, spec.r_odd_map.get(2, 0), spec.r_omega, spec.z_omega, spec.k
            )
            record = {"spec": str(spec), "bound": value}

    lines = (str(value),)
    if "convention" in record:
        lines += (f"convention: {record['convention']}",)
    if args.explain and "terms" in record:
        lines += tuple(
            f"i_a={term['i_alpha']} i_w={term['i_omega']} balls={term['finite_balls']} "
            f"weight={term['finite_weight']} binomial={term['binomial']} -> {term['value']}"
            for term in record["terms"]
        )
    _emit(args, record, lines)
    return EXIT_SUCCESS


### LATTICE ###


def cmd_snf(args: argparse.Namespace) -> int:
    M = read_matrix_file(args.matrix)
    decomposition = smith_normal_form(M)
    record = {
        "U": [list(row) for row in decomposition.U.rows],
        "S": [list(row) for row in decomposition.S.rows],
        "V": [list(row) for row in decomposition.V.rows],
        "diagonal": list(decomposition.diagonal),
    }
    lines = (f"U =\n{decomposition.U}", f"S =\n{decomposition.S}", f"V =\n{decomposition.V}")
    if M.det() != 0:
        group, images = group_from_matrix(M)
        record["group"] = str(group)
        record["images"] = [list(g.coords) for g in images]
        lines += (f"group: {group}", "images: " + " ".join(f"({g})" for g in images))
    _emit(args, record, lines)
    return EXIT_SUCCESS


def cmd_group(args: argparse.Namespace) -> int:
    groups = enumerate_abelian_groups(args.order)
    record = {"order": args.order, "groups": [str(G) for G in groups]}
    _emit(args, record, tuple(str(G) for G in groups))
    return EXIT_SUCCESS


### GRAPHS ###


def _certificate_record(graph, k: Optional[int] = None) -> dict:
    return {
        "group": str(graph.group),
        "N": graph.N,
        "r": graph.r,
        "z": graph.z,
        "diameter": graph.diameter(),
        "distance_profile": graph.distance_profile(),
        "degree_spec": str(graph.degree_spec(k)),
        "improved_bound": graph.improved_bound(k),
    }


def cmd_family(args: argparse.Namespace) -> int:
    family = get_family(args.name)
    graph = family.build(args.k)
    certificate = family.certify(args.k, graph)
    if args.out is not None:
        write_graph_file(graph, args.out)
    record = asdict(certificate)
    record["description"] = format_graph_description(graph)
    lines = ((format_graph_description(graph).rstrip(),) if args.out is None else ()) + (
        certificate.to_json(),
    )
    _emit(args, record, lines)
    return EXIT_SUCCESS if certificate.holds else EXIT_VERIFICATION_FAILURE


def cmd_certify(args: argparse.Namespace) -> int:
    graph = read_graph_file(args.graph)
    record = _certificate_record(graph)
    if args.dot is not None:
        Path(args.dot).write_text(to_dot(graph))
    _emit(args, record, _field_lines(record))
    return EXIT_SUCCESS


### SEARCH ###


def cmd_search(args: argparse.Namespace) -> int:
    spec = SearchSpec(
        r_alpha=args.r_alpha,
        r_omega=args.r_omega,
        z_omega=args.z_omega,
        k=args.k,
        N_max=args.n_max,
        N_min=args.n_min,
    )
    search = OptimalSearch(
        spec,
        prune=not args.no_prune,
        all_witnesses=args.all_witnesses,
        jobs=args.jobs,
        cap=args.cap,
    )
    result = search.run()
    record = {
        "spec": str(spec),
        "best_N": result.best_N,
        "pruned_groups": result.pruned_groups,
        "examined_sets": result.examined_sets,
        "rejected": [str(G) for G in result.rejected],
        "witnesses": [format_graph_description(witness.build()) for witness in result.witnesses],
    }
    _emit(args, record, search.write_search_report())
    return EXIT_SUCCESS


### VERIFICATION ###


def cmd_verify_all(args: argparse.Namespace) -> int:
    results = run_criteria(args.filter, args.include_slow)
    record = {
        "results": [
            {"name": result.name, "passed": result.passed, "detail": result.detail}
            for result in results
        ]
    }
    _emit(args, record, format_results(results))
    return EXIT_SUCCESS if all(result.passed for result in results) else EXIT_VERIFICATION_FAILURE


### ENTRY POINT ###


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixed-cayley",
        description="Moore bounds, Smith normal forms, families and searches for mixed Abelian Cayley graphs",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")

    subparsers = parser.add_subparsers(dest="command", required=True)

    # bound
    bound_p = subparsers.add_parser("bound", parents=[common], help="Evaluate a Moore-type bound")
    bound_p.add_argument("kind", choices=("general", "mac", "improved", "order5"))
    bound_p.add_argument("profile", help='e.g. "r_a=1 z[3]=2 k=7", or "r=2 z=0 k=5" for general')
    bound_p.add_argument("--explain", action="store_true", help="Print the terms of the improved bound")
    bound_p.add_argument(
        "--convention",
        choices=tuple(convention.value.lower() for convention in MultinomialConvention),
        default="exact",
        help="Multinomial weighting of the improved bound",
    )
    bound_p.set_defaults(func=cmd_bound)

    # snf
    snf_p = subparsers.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    snf_p.add_argument("matrix", type=Path)
    snf_p.set_defaults(func=cmd_snf)

    # group
    group_p = subparsers.add_parser("group", parents=[common], help="Abelian groups of a given order")
    group_p.add_argument("order", type=int)
    group_p.set_defaults(func=cmd_group)

    # family
    family_p = subparsers.add_parser("family", parents=[common], help="Build and certify a family member")
    family_p.add_argument("--name", required=True)
    family_p.add_argument("--k", type=int, required=True)
    family_p.add_argument("--out", type=Path, help="Graph description file to write")
    family_p.set_defaults(func=cmd_family)

    # certify
    certify_p = subparsers.add_parser("certify", parents=[common], help="Certify a graph description file")
    certify_p.add_argument("graph", type=Path)
    certify_p.add_argument("--dot", type=Path, help="Also write a DOT drawing")
    certify_p.set_defaults(func=cmd_certify)

    # search
    search_p = subparsers.add_parser("search", parents=[common], help="Bound-pruned optimal search")
    search_p.add_argument("--r-alpha", type=int, default=0)
    search_p.add_argument("--r-omega", type=int, default=0)
    search_p.add_argument("--z-omega", type=int, default=0)
    search_p.add_argument("--k", type=int, required=True)
    search_p.add_argument("--n-max", type=int, default=None)
    search_p.add_argument("--n-min", type=int, default=1)
    search_p.add_argument("--no-prune", action="store_true")
    search_p.add_argument("--all-witnesses", action="store_true")
    search_p.add_argument("--jobs", type=int, default=1)
    search_p.add_argument("--cap", type=int, default=SEARCH_ORDER_CAP)
    search_p.set_defaults(func=cmd_search)

    # verify-all
    verify_p = subparsers.add_parser("verify-all", parents=[common], help="Run the acceptance criteria")
    verify_p.add_argument("--filter", default=None, help="Only criteria whose name starts with this")
    verify_p.add_argument("--include-slow", action="store_true")
    verify_p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except CertificationException as e:
        logger.error("%s", e)
        return EXIT_VERIFICATION_FAILURE
    except INVALID_INPUT_EXCEPTIONS as e:
        logger.error("%s", e)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
