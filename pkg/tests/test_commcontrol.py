import pytest

from qcov.commcontrol import (
    CyclicFun,
    comult,
    comult3,
    cover_embed,
    deck_translate,
    expand_table_left,
    expand_table_right,
    fixed_algebra_report,
    full_report,
    hopf_structure_report,
    lemma_equivariance_report,
    restriction_check,
    table_star,
    translate_table,
)
from qcov.errors import DomainError
from qcov.scalars import Scalar

PAIRS = [(2, 2), (3, 2), (2, 3)]


class TestComultTable:
    def test_point_mass_gives_antidiagonal(self):
        table = comult(CyclicFun.delta(2, 1))
        as_str = [[str(v) for v in row] for row in table]
        assert as_str == [["0", "1"], ["1", "0"]]

    def test_constant_gives_all_ones(self):
        table = comult(CyclicFun.constant(2, 1))
        assert table == [[Scalar.one(2)] * 2] * 2

    @pytest.mark.parametrize("m", range(1, 7))
    def test_coassociativity_exhaustive(self, m):
        for i in range(m):
            f = CyclicFun.delta(m, i)
            table = comult(f)
            left = expand_table_left(table, m)
            right = expand_table_right(table, m)
            assert left == right == comult3(f)

    def test_star_compatibility(self):
        m = 4
        f = CyclicFun(4, tuple(Scalar.zeta(4, i) for i in range(4)), 4)
        assert comult(f.star()) == table_star(comult(f))


class TestCoverEmbed:
    def test_point_mass_pattern(self):
        e = cover_embed(CyclicFun.delta(2, 0, order=4), 2)
        assert [str(v) for v in e.values] == ["1", "0", "1", "0"]

    def test_constant_goes_to_constant(self):
        e = cover_embed(CyclicFun.constant(2, 1, order=4), 2)
        assert e == CyclicFun.constant(4, 1, order=4)

    def test_star_homomorphism_on_random_pairs(self, rng):
        for _ in range(60):
            m, n = rng.choice(PAIRS)
            order = m * n
            f = CyclicFun(m, tuple(
                Scalar.rational(order, rng.randint(-2, 2))
                * Scalar.zeta(order, rng.randrange(order)) for _ in range(m)), order)
            g = CyclicFun(m, tuple(
                Scalar.rational(order, rng.randint(-2, 2)) for _ in range(m)), order)
            assert cover_embed(f * g, n) == cover_embed(f, n) * cover_embed(g, n)
            assert cover_embed(f + g, n) == cover_embed(f, n) + cover_embed(g, n)
            assert cover_embed(f.star(), n) == cover_embed(f, n).star()


class TestDeckTranslate:
    def test_index_shift(self):
        assert deck_translate(CyclicFun.delta(4, 1, order=4), 2) == CyclicFun.delta(4, 3, order=4)

    def test_zero_shift_is_identity(self):
        f = CyclicFun.delta(4, 1, order=4)
        assert deck_translate(f, 0) == f

    def test_fixed_functions_are_the_embedded_base(self):
        m, n = 2, 2
        mn = m * n
        for i in range(mn):
            f = cover_embed(CyclicFun.delta(m, i % m, order=mn), n)
            assert deck_translate(f, m) == f


class TestEquivarianceForms:
    @pytest.mark.parametrize("m,n", PAIRS)
    def test_one_leg_always_holds(self, m, n):
        report = lemma_equivariance_report(m, n)
        assert report["one_leg_holds_everywhere"]

    @pytest.mark.parametrize("m,n", PAIRS)
    def test_two_leg_fails_for_nontrivial_shifts(self, m, n):
        report = lemma_equivariance_report(m, n)
        assert report["two_leg_fails_for_all_nontrivial"]

    def test_recorded_witness(self):
        report = lemma_equivariance_report(2, 2)
        witness = [c for c in report["cases"] if c["basis"] == 1 and c["h"] == 2]
        assert len(witness) == 1
        assert witness[0]["one_leg"] and not witness[0]["two_leg"]

    def test_trivial_shift_satisfies_both(self):
        report = lemma_equivariance_report(2, 2)
        for case in report["cases"]:
            if case["h"] == 0:
                assert case["one_leg"] and case["two_leg"]

    def test_two_leg_table_shapes_differ(self):
        # explicit tables behind the witness
        mn = 4
        f = CyclicFun.delta(mn, 1, order=mn)
        table = comult(f)
        lifted = comult(deck_translate(f, 2))
        assert lifted == translate_table(table, mn, 2, 0)
        assert lifted != translate_table(table, mn, 2, 2)


class TestRestrictionAndFixedAlgebra:
    @pytest.mark.parametrize("m,n", PAIRS)
    def test_restriction(self, m, n):
        assert restriction_check(m, n)["status"] == "pass"

    @pytest.mark.parametrize("m,n", PAIRS)
    def test_fixed_algebra(self, m, n):
        report = fixed_algebra_report(m, n)
        assert report["status"] == "pass"
        assert report["orbit_count"] == m

    @pytest.mark.parametrize("m,n", PAIRS)
    def test_hopf_structure(self, m, n):
        assert hopf_structure_report(m * n)["status"] == "pass"

    def test_full_report_bundles_everything(self):
        report = full_report(2, 2)
        assert report["hopf"]["status"] == "pass"
        assert report["restriction"]["status"] == "pass"
        assert report["fixed_algebra"]["status"] == "pass"
        assert report["equivariance"]["one_leg_holds_everywhere"]

    def test_oversized_ring_rejected(self):
        with pytest.raises(DomainError):
            full_report(5, 3)
