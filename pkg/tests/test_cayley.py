# Standard Library Imports
import logging
from collections import Counter

# Third Party Imports
import networkx as nx
import pytest

# Module Imports
from mixed_abelian_cayley.bounds import DegreeSpec
from mixed_abelian_cayley.cayley import (
    MixedCayleyGraph,
    MixedGenSet,
    build,
    cartesian_product,
    circulant,
    contract_involution,
    format_graph_description,
    parse_graph_description,
    read_graph_file,
    stretch_row,
    to_dot,
    write_graph_file,
)
from mixed_abelian_cayley.errors import GeneratingSetException
from mixed_abelian_cayley.families import FAMILIES
from mixed_abelian_cayley.lattice import AbelianGroup, IntMatrix, group_from_matrix
from mixed_abelian_cayley.verify import small_product_pairs

Z10 = AbelianGroup((10,))


def networkx_profile(graph: MixedCayleyGraph, source: int = 0) -> list[int]:
    lengths = nx.single_source_shortest_path_length(graph.to_networkx(), source)
    counts = Counter(lengths.values())
    return [counts[distance] for distance in range(max(counts) + 1)]


class TestMixedGenSet:
    @pytest.mark.parametrize(
        "roles",
        [
            {"involutions": [3]},
            {"pairs": [5]},
            {"directed": [2, 8]},
            {"directed": [5]},
            {"directed": [0]},
            {"involutions": [5], "directed": [5]},
            {"pairs": [1], "directed": [9]},
            {"pairs": [1, 9]},
            {"involutions": [(5, 0)]},
        ],
    )
    def test_invariant_violations(self, roles):
        with pytest.raises(GeneratingSetException):
            MixedGenSet.create(Z10, **roles)

    def test_pair_representative(self):
        assert MixedGenSet.create(Z10, pairs=[9]).pairs == (Z10.element(1),)

    def test_degrees(self):
        gens = MixedGenSet.create(Z10, involutions=[5], pairs=[1], directed=[2])
        assert (gens.r, gens.z) == (3, 1)

    def test_normalize(self):
        Z8 = AbelianGroup((8,))
        gens = MixedGenSet.normalize(Z8, pairs=[1], directed=[4, 0])
        assert gens == MixedGenSet.create(Z8, involutions=[4], pairs=[1])
        gens = MixedGenSet.normalize(Z8, directed=[3, 5, 1, 1])
        assert gens == MixedGenSet.create(Z8, pairs=[3], directed=[1])
        gens = MixedGenSet.normalize(Z8, pairs=[1], directed=[7, 2])
        assert gens == MixedGenSet.create(Z8, pairs=[1], directed=[2])


class TestBuild:
    def test_circulant_24(self):
        graph = circulant(24, involutions=(12,), pairs=(2,), directed=(3,))
        assert (graph.N, graph.r, graph.z) == (24, 3, 1)

    def test_circulant_10(self, circ10):
        assert (circ10.N, circ10.r, circ10.z) == (10, 3, 1)
        assert circ10.diameter() == 2
        assert circ10.distance_profile() == [1, 4, 5]

    def test_one_vertex(self, one_vertex):
        assert one_vertex.N == 1
        assert one_vertex.diameter() == 0
        assert one_vertex.distance_profile() == [1]

    def test_non_generating(self):
        with pytest.raises(GeneratingSetException):
            build(Z10, MixedGenSet.create(Z10, pairs=[2]))
        with pytest.raises(GeneratingSetException):
            build(Z10, MixedGenSet())

    def test_diamond_36(self, circ36):
        profile = circ36.distance_profile()
        assert circ36.diameter() == 3
        assert sum(profile) == 36
        assert len(profile) == 4

    def test_networkx_oracle(self, circ10, circ36):
        for graph in (circ10, circ36, FAMILIES[next(iter(FAMILIES))].build(4)):
            assert networkx_profile(graph) == graph.distance_profile()
            assert graph.to_networkx().number_of_nodes() == graph.N

    def test_out_degree(self, circ10):
        out_degrees = {degree for _, degree in circ10.to_networkx().out_degree()}
        assert out_degrees == {circ10.r + circ10.z}

    def test_vertex_transitivity(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 6):
                graph = family.build(k)
                assert graph.vertex_transitivity_holds()
                assert networkx_profile(graph, graph.N - 1) == graph.distance_profile(graph.N - 1)


class TestDegreeSpec:
    def test_undetermined_orders(self, circ10):
        assert circ10.degree_spec(2) == DegreeSpec(k=2, r_alpha=1, r_omega=1, z_omega=1)

    def test_known_orders(self):
        graph = circulant(12, pairs=(4, 1), directed=(3,))
        assert graph.degree_spec(3) == DegreeSpec(k=3, r_odd={1: 1}, r_omega=1, z_omega=1)
        assert graph.degree_spec(4) == DegreeSpec(k=4, r_odd={1: 1}, r_omega=1, z_ord={3: 1})

    def test_order_within_improved_bound(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 9):
                graph = family.build(k)
                assert graph.N <= graph.improved_bound()


class TestCartesianProduct:
    def test_two_involutions(self):
        k2 = circulant(2, involutions=(1,))
        product = cartesian_product(k2, k2)
        assert product.group == AbelianGroup((2, 2))
        assert len(product.gens.involutions) == 2
        assert product.diameter() == 2

    def test_with_one_vertex(self, circ10, one_vertex):
        product = cartesian_product(circ10, one_vertex)
        assert product.group == circ10.group
        assert product.distance_profile() == circ10.distance_profile()

    def test_five_cycles(self):
        c5 = circulant(5, pairs=(1,))
        product = cartesian_product(c5, c5)
        assert product.group == AbelianGroup((5, 5))
        assert product.diameter() == 4

    def test_block_presentation(self, circ10, circ36):
        product = cartesian_product(circ10, circ36)
        group, _ = group_from_matrix(IntMatrix.diagonal((10, 36)))
        assert product.group == group
        assert (product.r, product.z) == (circ10.r + circ36.r, circ10.z + circ36.z)

    def test_diameter_additivity(self):
        for first, second in small_product_pairs():
            assert cartesian_product(first, second).diameter() == first.diameter() + second.diameter()


class TestContraction:
    def test_diamond_36(self, circ36):
        quotient = contract_involution(circ36, 18)
        assert quotient.N == 18
        assert quotient.diameter() in (2, 3)

    def test_single_edge(self):
        quotient = contract_involution(circulant(2, involutions=(1,)), 1)
        assert quotient.N == 1
        assert quotient.diameter() == 0

    def test_circulant_10(self, circ10):
        quotient = contract_involution(circ10, 5)
        assert quotient.N == 5
        assert quotient.diameter() in (1, 2)

    def test_not_an_involution(self, circ10):
        with pytest.raises(GeneratingSetException):
            contract_involution(circ10, 1)

    def test_family_graphs(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 9):
                graph = family.build(k)
                for b in graph.gens.involutions:
                    quotient = contract_involution(graph, b)
                    assert quotient.N * 2 == graph.N
                    assert quotient.diameter() in (k - 1, k)


class TestStretchRow:
    def test_cycle_doubling_is_reported(self, caplog):
        with caplog.at_level(logging.WARNING):
            stretch = stretch_row(IntMatrix(((5,),)), 0, 2)
        assert stretch.D == 4
        assert stretch.stretched.N == 10
        assert stretch.D_stretched == 9
        assert not stretch.increases_by_one
        assert "not to 5" in caplog.text

    def test_identity(self):
        stretch = stretch_row(IntMatrix.identity(1), 0, 3)
        assert stretch.stretched.group == AbelianGroup((3,))
        assert stretch.D == 0
        assert stretch.D_stretched == 1
        assert stretch.increases_by_one

    def test_identity_two_rows(self):
        stretch = stretch_row(IntMatrix.identity(2), 1, 3)
        assert stretch.stretched.N == 3
        assert stretch.increases_by_one

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            stretch_row(IntMatrix.identity(2), 0, 1)
        with pytest.raises(ValueError):
            stretch_row(IntMatrix.identity(2), 2, 2)


class TestDescriptionFiles:
    def test_format(self, circ36):
        assert format_graph_description(circ36) == "group Z36\ninv 18\npair 1\npair 5\n"

    def test_round_trip(self, circ10, tmp_path):
        path = tmp_path / "circ10.graph"
        write_graph_file(circ10, path)
        graph = read_graph_file(path)
        assert graph.group == circ10.group
        assert graph.gens == circ10.gens

    def test_two_factor_group(self):
        graph = parse_graph_description("# k = 5\ngroup Z4xZ12\ninv 2,6\npair 0,1\ndir 1,0\n")
        assert graph.N == 48
        assert graph.diameter() == 5

    def test_one_vertex(self):
        assert parse_graph_description("group Z1\n").diameter() == 0

    @pytest.mark.parametrize(
        "text",
        ["inv 5\n", "group Z10\ngroup Z10\n", "group Z10\nedge 1\n", "group Z10\npair a\n"],
    )
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_graph_description(text)

    def test_dot(self, circ10):
        dot = to_dot(circ10)
        assert dot.startswith("digraph")
        assert "dir=none" in dot
        with pytest.raises(ValueError):
            to_dot(circulant(250, pairs=(1,)))
