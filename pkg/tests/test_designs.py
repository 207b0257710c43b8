import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from macc.designs import (
    Design,
    ResolvableDesign,
    catalog_design,
    catalog_design_names,
    catalog_gdd,
    catalog_oa,
    check_divisibility,
    complete_design,
    dual_of_gdd,
    dual_of_resolvable,
    linear_oa,
    oa_to_resolvable,
    resolvable_to_oa,
    transversal_gdd,
    trivial_oa,
    verify_gdd,
    verify_oa,
    verify_resolvable,
    verify_t_design,
)
from macc.errors import (
    InvalidInputError,
    InvalidParametersError,
    NotFoundError,
    UnsupportedParametersError,
)

# The 2-(4,2,6,3,1) cross resolvable design used by the duality fixtures.
EXAMPLE_RESOLVABLE = ResolvableDesign(
    4,
    (
        ((1, 3), (2, 4)),
        ((1, 2), (3, 4)),
        ((1, 4), (2, 3)),
    ),
    strength=2,
    cross_number=1,
)

OA_322_ROWS = ((1, 1, 1), (2, 1, 2), (1, 2, 2), (2, 2, 1))


class TestCompleteDesign:
    def test_all_pairs_of_four(self):
        d = complete_design(4, 2)
        assert d.blocks == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
        assert (d.strength, d.index) == (2, 1)

    def test_block_count_7_3(self):
        assert complete_design(7, 3).num_blocks == 35

    def test_degenerate_single_block(self):
        d = complete_design(5, 5)
        assert d.blocks == ((1, 2, 3, 4, 5),)

    def test_oversized_block_rejected(self):
        with pytest.raises(InvalidParametersError):
            complete_design(3, 4)


class TestCatalog:
    def test_fano_blocks(self):
        d = catalog_design("fano-7-3-1")
        assert d.blocks == (
            (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (1, 5, 6), (2, 6, 7), (1, 3, 7),
        )

    def test_affine_blocks(self):
        d = catalog_design("affine-9-3-1")
        assert d.num_blocks == 12
        assert d.blocks[:3] == ((1, 4, 7), (2, 5, 8), (3, 6, 9))

    def test_biplane_blocks(self):
        d = catalog_design("biplane-7-4-2")
        assert d.blocks == (
            (1, 2, 3, 5), (2, 3, 4, 6), (3, 4, 5, 7), (1, 4, 5, 6),
            (2, 5, 6, 7), (1, 3, 6, 7), (1, 2, 4, 7),
        )

    def test_unknown_name(self):
        with pytest.raises(NotFoundError):
            catalog_design("projective-13-4-1")

    @pytest.mark.parametrize("name", catalog_design_names())
    def test_catalog_tags_verify(self, name):
        d = catalog_design(name)
        assert verify_t_design(d, d.strength, d.index).ok

    @pytest.mark.parametrize("name", catalog_design_names())
    def test_catalog_divisibility(self, name):
        d = catalog_design(name)
        assert check_divisibility(d.strength, d.block_size, d.index, d.num_points)


class TestVerifyTDesign:
    def test_fano_replication(self):
        rep = verify_t_design(catalog_design("fano-7-3-1"), 2, 1)
        assert rep.ok
        assert rep.replication == 3
        assert rep.derived_indices == {1: Fraction(3), 2: Fraction(1)}

    def test_pairs_design(self):
        assert verify_t_design(complete_design(5, 2), 2, 1).ok

    def test_wrong_index_fails_at_first_pair(self):
        rep = verify_t_design(catalog_design("fano-7-3-1"), 2, 2)
        assert not rep.ok
        assert "{1, 2}" in rep.first_violation

    def test_biplane_index_two(self):
        rep = verify_t_design(catalog_design("biplane-7-4-2"), 2, 2)
        assert rep.ok
        assert rep.replication == 4

    def test_replication_identity(self):
        # K * L = r * v for every verified catalog design
        for name in catalog_design_names():
            d = catalog_design(name)
            rep = verify_t_design(d, d.strength, d.index)
            assert d.num_blocks * d.block_size == rep.replication * d.num_points

    def test_strength_guard(self):
        with pytest.raises(InvalidParametersError):
            verify_t_design(catalog_design("fano-7-3-1"), 4, 1)

    def test_points_cap(self):
        with pytest.raises(UnsupportedParametersError):
            verify_t_design(Design(30, ((1, 2),)), 1, 1)


class TestDivisibility:
    def test_fano_parameters(self):
        assert check_divisibility(2, 3, 1, 7)

    def test_eight_points_fail(self):
        # i=0 needs C(3,2)=3 to divide C(8,2)=28
        assert not check_divisibility(2, 3, 1, 8)

    @given(st.integers(1, 8), st.integers(1, 4))
    def test_partition_condition(self, multiple, block):
        assert check_divisibility(1, block, 1, block * multiple)

    @given(st.integers(2, 12), st.integers(1, 6), st.integers(1, 3))
    def test_complete_design_always_passes(self, v, l, lam):
        if l <= v:
            assert check_divisibility(l, l, lam, v)


class TestTransversalGdd:
    def test_canonical_12_blocks(self):
        g = transversal_gdd(3, 2, 2)
        assert g.blocks == (
            ((1, 1), (2, 1)), ((1, 1), (2, 2)), ((1, 1), (3, 1)), ((1, 1), (3, 2)),
            ((1, 2), (2, 1)), ((1, 2), (2, 2)), ((1, 2), (3, 1)), ((1, 2), (3, 2)),
            ((2, 1), (3, 1)), ((2, 1), (3, 2)), ((2, 2), (3, 1)), ((2, 2), (3, 2)),
        )
        assert verify_gdd(g, 2, 1).ok

    def test_single_block(self):
        g = transversal_gdd(2, 1, 2)
        assert g.blocks == (((1, 1), (2, 1)),)

    def test_count_matches_enumeration(self):
        g = transversal_gdd(4, 2, 2)
        assert g.num_blocks == 24
        # independent enumeration of all transversal pairs
        brute = {
            ((u1, v1), (u2, v2))
            for u1, u2 in itertools.combinations(range(1, 5), 2)
            for v1 in (1, 2)
            for v2 in (1, 2)
        }
        assert set(g.blocks) == brute

    def test_verifies_across_sizes(self):
        for m, q, t in [(3, 2, 2), (4, 3, 2), (5, 2, 3), (4, 2, 1)]:
            assert verify_gdd(transversal_gdd(m, q, t), t, 1).ok


class TestVerifyGdd:
    def test_catalog_gdd_passes(self):
        g = catalog_gdd("gdd-3-2-3-1")
        assert verify_gdd(g, 2, 1).ok

    def test_wrong_index_fails(self):
        g = catalog_gdd("gdd-3-2-3-1")
        rep = verify_gdd(g, 2, 2)
        assert not rep.ok

    def test_block_count_checked(self):
        g = catalog_gdd("gdd-3-2-3-1")
        assert verify_gdd(g, 2, 1).expected_num_blocks == 4


class TestOrthogonalArrays:
    def test_catalog_oa_passes_strength_two(self):
        oa = catalog_oa("oa-3-2-2")
        assert oa.rows == OA_322_ROWS
        assert verify_oa(oa, 2, 1).ok

    def test_catalog_oa_fails_strength_three(self):
        rep = verify_oa(catalog_oa("oa-3-2-2"), 3, 1)
        assert not rep.ok
        assert "row count" in rep.first_violation

    def test_trivial_oa_cube(self):
        oa = trivial_oa(3, 2)
        assert oa.rows[:2] == ((1, 1, 1), (1, 1, 2))
        assert oa.rows[-1] == (2, 2, 2)
        assert verify_oa(oa, 3, 1).ok

    def test_trivial_oa_strength_two_exhaustive(self):
        assert verify_oa(trivial_oa(2, 3), 2, 1).ok

    @given(st.integers(1, 4), st.integers(2, 3))
    def test_trivial_oa_column_balance(self, m, q):
        oa = trivial_oa(m, q)
        for u in range(m):
            column = [row[u] for row in oa.rows]
            for v in range(1, q + 1):
                assert column.count(v) == q ** (m - 1)

    def test_linear_oa_strength_two(self):
        oa = linear_oa(3, 3, 2)
        assert oa.num_rows == 9
        assert verify_oa(oa, 2, 1).ok

    def test_linear_oa_full_strength_matches_trivial(self):
        assert linear_oa(3, 3, 3).rows == trivial_oa(3, 3).rows

    def test_linear_oa_two_two_two(self):
        oa = linear_oa(2, 2, 2)
        assert sorted(oa.rows) == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_linear_oa_rejects_wide_arrays(self):
        with pytest.raises(UnsupportedParametersError):
            linear_oa(4, 2, 3)

    def test_linear_oa_rejects_composite_alphabet(self):
        with pytest.raises(InvalidParametersError):
            linear_oa(3, 4, 2)


class TestDuality:
    def test_resolvable_verifies(self):
        assert verify_resolvable(EXAMPLE_RESOLVABLE, 2, 1).ok

    def test_dual_is_catalog_gdd(self):
        g = dual_of_resolvable(EXAMPLE_RESOLVABLE)
        assert g.canonical() == catalog_gdd("gdd-3-2-3-1").canonical()

    def test_single_class_dual(self):
        rd = ResolvableDesign(2, (((1,), (2,)),), strength=1, cross_number=1)
        g = dual_of_resolvable(rd)
        assert g.num_groups == 1
        assert g.blocks == (((1, 1),), ((1, 2),))

    def test_dual_of_dual_roundtrip(self):
        g = dual_of_resolvable(EXAMPLE_RESOLVABLE)
        back = dual_of_gdd(g)
        assert back.canonical() == EXAMPLE_RESOLVABLE.canonical()

    def test_resolvable_to_oa_matches_catalog(self):
        oa = resolvable_to_oa(EXAMPLE_RESOLVABLE)
        assert oa.rows == OA_322_ROWS
        assert (oa.strength, oa.index, oa.num_symbols) == (2, 1, 2)

    def test_oa_to_resolvable_matches_example(self):
        rd = oa_to_resolvable(catalog_oa("oa-3-2-2"))
        assert rd.canonical() == EXAMPLE_RESOLVABLE.canonical()

    def test_single_column_oa(self):
        rows = ((1,), (2,), (3,))
        from macc.designs import OrthogonalArray

        rd = oa_to_resolvable(OrthogonalArray(3, 1, 1, rows))
        assert rd.num_classes == 1
        assert rd.parallel_classes == (((1,), (2,), (3,)),)

    def test_roundtrip_identity_on_example(self):
        rd = oa_to_resolvable(resolvable_to_oa(EXAMPLE_RESOLVABLE))
        assert rd.canonical() == EXAMPLE_RESOLVABLE.canonical()

    @pytest.mark.parametrize(
        "oa_builder",
        [
            lambda: trivial_oa(2, 2), lambda: trivial_oa(2, 3), lambda: trivial_oa(3, 2),
            lambda: trivial_oa(3, 3), lambda: trivial_oa(4, 2),
            lambda: linear_oa(2, 2, 1), lambda: linear_oa(2, 3, 1), lambda: linear_oa(3, 3, 1),
            lambda: linear_oa(3, 3, 2), lambda: linear_oa(2, 5, 1), lambda: linear_oa(3, 5, 2),
            lambda: linear_oa(4, 5, 2), lambda: linear_oa(5, 5, 2), lambda: linear_oa(5, 5, 3),
            lambda: linear_oa(4, 7, 2), lambda: linear_oa(2, 3, 2), lambda: trivial_oa(5, 2),
            lambda: trivial_oa(1, 4), lambda: linear_oa(3, 7, 2), lambda: catalog_oa("oa-3-2-2"),
        ],
    )
    def test_oa_roundtrips(self, oa_builder):
        oa = oa_builder()
        rd = oa_to_resolvable(oa)
        assert verify_resolvable(rd, oa.strength, oa.index).ok
        back = resolvable_to_oa(rd)
        assert back.rows == oa.rows
        gdd = dual_of_resolvable(rd)
        assert verify_gdd(gdd, oa.strength, oa.index).ok
        assert dual_of_gdd(gdd).canonical() == rd.canonical()

    def test_non_resolvable_rejected(self):
        broken = ResolvableDesign(4, (((1, 2), (2, 3)),), strength=1, cross_number=1)
        with pytest.raises(InvalidInputError):
            dual_of_resolvable(broken)

    def test_untagged_needs_strength(self):
        rd = ResolvableDesign(4, (((1, 2), (3, 4)),))
        with pytest.raises(InvalidInputError):
            resolvable_to_oa(rd)


class TestGddDualExampleEntry:
    def test_flattened_blocks(self):
        d = catalog_design("gdd-dual-example")
        assert d.blocks == ((1, 3, 5), (2, 3, 6), (1, 4, 6), (2, 4, 5))
        assert verify_t_design(d, 1, 2).ok


@given(st.integers(2, 9), st.data())
def test_complete_design_replication(v, data):
    l = data.draw(st.integers(1, v))
    d = complete_design(v, l)
    rep = verify_t_design(d, l, 1)
    assert rep.ok
    assert d.num_blocks * l == rep.replication * v
    assert rep.replication == math.comb(v - 1, l - 1)
