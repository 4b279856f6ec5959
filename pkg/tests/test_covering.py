import pytest

from qcov.covering import (
    DeckElement,
    ModuleVector,
    action_properties,
    assemble,
    coaction_check,
    deck_act,
    deck_act_leg,
    deck_act_vector,
    decompose,
    delta_L,
    delta_R,
    embed_tensor_leg,
    equivariance_check,
    inner_product,
    is_invariant,
    isotypic,
    linearity_report,
    module_vector,
    twist,
)
from qcov.errors import DomainError
from qcov.nfalgebra import Element, Word, basis_words, embed_base, promote, unembed
from qcov.qtensor import TensorElement, delta
from qcov.scalars import Scalar

from conftest import random_base_element, random_element


class TestDeckAction:
    def test_root_generator_flips_sign(self):
        g = DeckElement(2, 1)
        assert deck_act(g, Element.gamma(2)) == Element.gamma(2).scale(-1)

    def test_embedded_base_fixed(self):
        g = DeckElement(2, 1)
        x = embed_base(Element.beta(1), 2)
        assert deck_act(g, x) == x

    def test_inverse_phase_reduced(self):
        g = DeckElement(3, 1)
        acted = deck_act(g, Element.gamma_star(3))
        assert acted == Element.gamma_star(3).scale(Scalar.zeta(3, 2))

    def test_group_law(self, rng):
        for _ in range(30):
            n = rng.choice([2, 3, 4])
            x = random_element(rng, n)
            a, b = rng.randrange(n), rng.randrange(n)
            assert deck_act(DeckElement(n, a), deck_act(DeckElement(n, b), x)) == deck_act(
                DeckElement(n, (a + b) % n), x)

    def test_action_properties_report(self):
        for n in (2, 3):
            report = action_properties(n, count=60, seed=1)
            assert report["status"] == "pass"
            assert report["moved_by"] == list(range(1, n))


class TestIsotypic:
    def test_degree_zero_word_invariant(self):
        x = Element.gamma(2) * Element.gamma_star(2)
        assert is_invariant(x)
        # the deck action fixes it, confirming the class computation
        assert deck_act(DeckElement(2, 1), x) == x

    def test_root_generator_in_class_one(self):
        assert list(isotypic(Element.gamma(2))) == [1]

    def test_embedded_base_in_class_zero(self, rng):
        for _ in range(20):
            a = random_base_element(rng)
            assert is_invariant(embed_base(a, 3))

    def test_strictness_witness(self):
        x = Element.gamma(2) * Element.gamma_star(2)
        assert is_invariant(x) and unembed(x) is None


class TestModuleSplit:
    def test_slot_placement(self):
        x = embed_base(Element.beta(1), 2) * Element.gamma(2)  # gt^3
        v = decompose(x)
        assert v.coeffs[1] == promote(Element.beta(1), 2)
        assert v.coeffs[0].is_zero

    def test_overflow_word_carries_base_generator(self):
        for n in (2, 3):
            v = decompose(Element(n, {Word(0, n + 1, 0): 1}))
            assert v.coeffs[1] == promote(Element.beta(1), n)

    def test_unit_in_slot_zero(self):
        v = decompose(Element.one(2))
        assert v.coeffs[0] == Element.one(1, 2)

    def test_rejects_outside_module(self):
        with pytest.raises(DomainError):
            decompose(Element.gamma_star(2))

    @pytest.mark.parametrize("n", [2, 3])
    def test_round_trip_on_short_words(self, n):
        count = 0
        for w in basis_words(6):
            if w.gs % n:
                continue
            el = Element.from_word(n, w)
            assert assemble(decompose(el)) == el
            count += 1
        assert count > 50

    def test_assemble_matches_engine_product(self, rng):
        for _ in range(50):
            n = rng.choice([2, 3])
            slots = [random_base_element(rng, order=n) for _ in range(n)]
            v = ModuleVector(n, tuple(slots))
            direct = Element.zero(n)
            for j, a in enumerate(slots):
                direct = direct + embed_base(a, n) * Element.from_word(n, Word(0, j, 0))
            assert assemble(v) == direct
            assert decompose(direct).coeffs == v.coeffs


class TestTwist:
    def test_alpha_gains_root_factor(self):
        assert twist(Element.alpha(1, 2), 1) == Element.alpha(1, 2).scale(Scalar.t(2, -1))

    def test_no_alpha_letters_fixed(self):
        assert twist(Element.beta(1, 2), 1) == Element.beta(1, 2)

    def test_n_fold_composition_gives_q(self):
        x = Element.alpha(1, 3)
        out = x
        for _ in range(3):
            out = twist(out, 1)
        assert out == x.scale(Scalar.t(3, -3))

    def test_defining_identity(self, rng):
        # gt^j embed(a) == embed(twist^j a) gt^j in the covering algebra
        for _ in range(100):
            n = rng.choice([2, 3])
            a = random_base_element(rng, order=n)
            j = rng.randrange(n)
            gj = Element.from_word(n, Word(0, j, 0))
            assert gj * embed_base(a, n) == embed_base(twist(a, j), n) * gj

    def test_twist_identity_confirmed_numerically(self):
        from qcov.matrep import build, eval_element

        rep = build(0.5, n=2, N=32, L=4)
        a = Element.alpha(1, 2)
        unnormalised = eval_element(rep, Element.gamma(2)) @ eval_element(
            rep, embed_base(a, 2))
        normalised = eval_element(rep, embed_base(twist(a, 1), 2) * Element.gamma(2))
        assert rep.margin_residual(unnormalised - normalised, 3) < 1e-12

    def test_twisted_product_law(self, rng):
        for _ in range(200):
            n = rng.choice([2, 3])
            a = random_base_element(rng, order=n)
            b = random_base_element(rng, order=n)
            j, k = rng.randrange(n), rng.randrange(n)
            gj = Element.from_word(n, Word(0, j, 0))
            gk = Element.from_word(n, Word(0, k, 0))
            lhs = (embed_base(a, n) * gj) * (embed_base(b, n) * gk)
            carry = Element.beta(1, n) ** ((j + k) // n)
            rhs = embed_base(a * twist(b, j) * carry, n) * Element.from_word(
                n, Word(0, (j + k) % n, 0))
            assert lhs == rhs


class TestInnerProduct:
    def test_unit_pairing_counts_the_group(self):
        for n in (1, 2, 3):
            assert inner_product(Element.one(n), Element.one(n)) == Element.one(n).scale(n)

    def test_cross_class_pairing_vanishes(self):
        for n in (2, 3):
            assert inner_product(Element.gamma(n), Element.alpha(n)).is_zero

    def test_self_pairing_of_root_generator(self):
        for n in (2, 3):
            expected = (Element.gamma(n) * Element.gamma_star(n)).scale(n)
            assert inner_product(Element.gamma(n), Element.gamma(n)) == expected

    def test_hermitian_symmetry_and_invariance(self, rng):
        for _ in range(80):
            n = rng.choice([2, 3])
            x = random_element(rng, n)
            y = random_element(rng, n)
            ip = inner_product(x, y)
            assert is_invariant(ip)
            assert ip.star() == inner_product(y, x)

    def test_right_linearity_over_embedded_base(self, rng):
        for _ in range(80):
            n = rng.choice([2, 3])
            x = random_element(rng, n)
            y = random_element(rng, n)
            a = embed_base(random_base_element(rng, order=n), n)
            assert inner_product(x, y * a) == inner_product(x, y) * a


class TestOneSidedComultiplications:
    def test_right_map_on_root_generator(self):
        v = module_vector(2, Element.zero(1), Element.one(1))
        assert delta_R(v) == TensorElement(1, 2, {(Word(0, 0, 0), Word(0, 1, 0)): 1})

    def test_left_map_on_root_generator(self):
        v = module_vector(2, Element.zero(1), Element.one(1))
        assert delta_L(v) == TensorElement(2, 1, {(Word(0, 1, 0), Word(0, 0, 0)): 1})

    @pytest.mark.parametrize("n", [2, 3])
    def test_restriction_to_embedded_base(self, n):
        for w in basis_words(4):
            a = promote(Element.from_word(1, w), n)
            x = embed_base(a, n)
            assert delta_R(x) == embed_tensor_leg(delta(a), "right", n)
            assert delta_L(x) == embed_tensor_leg(delta(a), "left", n)

    def test_mixed_word_expansion(self):
        x = embed_base(Element.beta(1), 2) * Element.gamma(2)
        expected = TensorElement(1, 2, {
            (Word(0, 1, 0), Word(1, 1, 0)): 1,
            (Word(-1, 0, 0), Word(0, 3, 0)): 1,
        })
        assert delta_R(x) == expected

    def test_propagates_module_error(self):
        with pytest.raises(DomainError):
            delta_R(Element.gamma_star(2))

    def test_coaction_identities(self, rng):
        v = module_vector(2, Element.zero(1), Element.one(1))
        assert coaction_check(v)["status"] == "pass"
        for _ in range(30):
            n = rng.choice([2, 3])
            v = module_vector(n, *[random_base_element(rng, order=n, nwords=1)
                                   for _ in range(n)])
            assert coaction_check(v)["status"] == "pass"

    def test_one_leg_equivariance(self, rng):
        for _ in range(30):
            n = rng.choice([2, 3])
            v = module_vector(n, *[random_base_element(rng, order=n, nwords=1)
                                   for _ in range(n)])
            assert equivariance_check(v)["status"] == "pass"

    def test_equivariance_phase_example(self):
        # deck-acting embed(bt) gt multiplies only the covering leg by -1
        n = 2
        x = embed_base(Element.beta(1), n) * Element.gamma(n)
        gx = deck_act(DeckElement(n, 1), x)
        assert delta_R(gx) == deck_act_leg(delta_R(x), "right", 1)
        assert delta_R(gx) == delta_R(x).scale(Scalar.rational(n, -1))

    def test_left_linearity_holds(self, rng):
        for _ in range(40):
            n = rng.choice([2, 3])
            v = module_vector(n, *[random_base_element(rng, order=n, nwords=1)
                                   for _ in range(n)])
            a = random_base_element(rng, order=n, nwords=1)
            b = random_base_element(rng, order=n, nwords=1)
            assert linearity_report(v, a, b)["status"] == "pass"

    def test_right_linearity_residual_witness(self):
        v = module_vector(2, Element.zero(1), Element.one(1))
        report = linearity_report(v, Element.one(1), Element.alpha(1))
        res = report["right_residual"]
        assert not res.is_zero
        expected = TensorElement(2, 1, {
            (Word(0, 1, 2), Word(0, 1, 0)): Scalar.t(2, 2) - Scalar.t(2, 1),
        })
        assert res == expected

    def test_right_residual_vanishes_on_base(self, rng):
        for _ in range(20):
            n = rng.choice([2, 3])
            a = random_base_element(rng, order=n, nwords=1)
            v = decompose(embed_base(a, n))
            report = linearity_report(
                v, random_base_element(rng, order=n, nwords=1),
                random_base_element(rng, order=n, nwords=1))
            assert report["right_residual"].is_zero

    def test_vector_deck_action_matches_element_action(self, rng):
        for _ in range(20):
            n = rng.choice([2, 3])
            v = module_vector(n, *[random_base_element(rng, order=n, nwords=1)
                                   for _ in range(n)])
            m = rng.randrange(n)
            acted = deck_act_vector(DeckElement(n, m), v)
            assert assemble(acted) == deck_act(DeckElement(n, m), assemble(v))
