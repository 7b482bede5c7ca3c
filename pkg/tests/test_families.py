# Standard Library Imports
import json
import logging

# Third Party Imports
import pytest

# Module Imports
from mixed_abelian_cayley.bounds import mac_bound
from mixed_abelian_cayley.constants import FamilyName
from mixed_abelian_cayley.errors import FamilyException
from mixed_abelian_cayley.families import (
    FAMILIES,
    base_degree4_family,
    diamond_family,
    get_family,
    t_family,
    t_tile_base_family,
)
from mixed_abelian_cayley.families.baseDegree4 import BaseDegree4
from mixed_abelian_cayley.families.diamond import Diamond
from mixed_abelian_cayley.families.tShaped import TShaped
from mixed_abelian_cayley.families.tTileBase import TTileBase
from mixed_abelian_cayley.lattice import AbelianGroup


class TestBaseDegree4:
    def test_small_members(self):
        assert base_degree4_family(1).N == 5
        assert base_degree4_family(2).N == 13
        assert base_degree4_family(3).diameter() == 3

    def test_attains_abelian_cayley_bound(self):
        for k in range(1, 12):
            graph = BaseDegree4.build(k)
            assert graph.N == mac_bound(0, 2, 0, k)
            assert graph.diameter() == k


class TestDiamond:
    def test_small_members(self):
        graph = diamond_family(3)
        assert graph.N == 36
        assert graph.diameter() == 3
        assert (graph.r, graph.z) == (5, 0)

    def test_two_below_abelian_cayley_bound(self):
        for k in range(2, 12):
            assert mac_bound(1, 2, 0, k) - Diamond.claimed_order(k) == 2
            assert Diamond.build(k).diameter() == k

    def test_starts_at_two(self):
        with pytest.raises(FamilyException):
            Diamond.build(1)


class TestTTileBase:
    def test_floor_formula(self):
        for k in range(1, 16):
            graph = t_tile_base_family(k)
            assert graph.N == (2 * k + 3) ** 2 // 6
            assert graph.diameter() == k

    def test_degenerate_members(self):
        # the directed step has order 2 at k = 1 and k = 2
        for k in (1, 2):
            graph = TTileBase.build(k)
            assert (len(graph.gens.involutions), len(graph.gens.pairs), graph.z) == (1, 1, 0)

    def test_one_pair_one_directed(self):
        for k in range(3, 16):
            graph = TTileBase.build(k)
            assert (graph.r, graph.z) == (2, 1)

    def test_steps(self):
        assert TTileBase.steps(3) == (13, 1, 9)


class TestTShaped:
    def test_smallest_member(self):
        graph = t_family(2)
        assert graph.N == 10
        assert graph.distance_profile() == [1, 4, 5]

    def test_degrees(self):
        for k in range(2, 15):
            graph = TShaped.build(k)
            assert (graph.r, graph.z) == (3, 1)
            assert graph.N == TShaped.claimed_order(k)
            assert graph.diameter() == k

    def test_two_factor_case(self):
        graph = TShaped.two_factor_case(2)
        assert graph.group == AbelianGroup((4, 12))
        assert graph.diameter() == 5

    def test_two_factor_case_needs_two(self):
        with pytest.raises(FamilyException):
            TShaped.two_factor_case(1)

    def test_orders(self):
        assert [TShaped.claimed_order(k) for k in range(2, 8)] == [10, 20, 32, 48, 64, 84]


class TestPresentations:
    def test_rebuild_matches_construction(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 12):
                presentation = family.presentation(k)
                if presentation is None:
                    continue
                rebuilt = presentation.build()
                graph = family.build(k)
                assert rebuilt.N == graph.N
                assert (rebuilt.r, rebuilt.z) == (graph.r, graph.z)
                assert rebuilt.distance_profile() == graph.distance_profile()

    def test_missing_presentations(self):
        assert TShaped.presentation(2) is None
        assert TTileBase.presentation(1) is None
        assert TTileBase.presentation(4) is None

    def test_determinants(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 12):
                presentation = family.presentation(k)
                if presentation is not None:
                    assert abs(presentation.matrix.det()) == family.claimed_order(k)


class TestCertification:
    def test_all_families(self):
        for family in FAMILIES.values():
            for k in range(family.min_k, 10):
                certificate = family.certify(k)
                assert certificate.holds, certificate

    def test_certificate_json(self):
        record = json.loads(Diamond.certify(2).to_json())
        assert record == {
            "family": "diamond",
            "claimed_k": 2,
            "measured_k": 2,
            "claimed_N": 16,
            "N": 16,
            "r": 5,
            "z": 0,
        }

    def test_failing_certificate_is_logged(self, caplog):
        with caplog.at_level(logging.WARNING):
            certificate = TShaped.certify(4, graph=Diamond.build(2))
        assert not certificate.holds
        assert certificate.N == 16
        assert "fails its certificate" in caplog.text


class TestRegistry:
    def test_names(self):
        for name in FamilyName:
            assert get_family(name.value) is FAMILIES[name]

    def test_unknown(self):
        with pytest.raises(FamilyException):
            get_family("petersen")
