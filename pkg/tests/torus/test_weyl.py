from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pynct.algebra.matrix import identity, inverse_int
from pynct.catalog import conjugator_for, expected_action_tables, form_for
from pynct.torus.forms import companion_form_space
from pynct.torus.params import ParamScalar, theta
from pynct.torus.weyl import (
    NormalWord, PhaseExponent, WeylElement, act, action_table, cocycle, commutator_phase, conjugacy_check,
    generator, identity_element, inverse, multiply, normal_order, ordered_product, power
)
from pynct.validation import HypothesisViolation, UsageError
from tests.support import int_vectors

GENERIC = companion_form_space(8).general_member()


def elements(d: int = 4):
    phases = st.fractions(min_value=-4, max_value=4, max_denominator=6)
    return st.builds(lambda t, x: WeylElement(phase=PhaseExponent.of(t), exponent=x), phases, int_vectors(d, 4))


class TestPhaseExponent:

    def test_reduced_mod_2(self):
        assert PhaseExponent.of(3) == PhaseExponent.of(1)
        assert PhaseExponent.of(Fraction(-1, 2)).t == ParamScalar.constant(Fraction(3, 2))
        assert PhaseExponent.of(theta() + 2) == PhaseExponent.of(theta())
        assert PhaseExponent.of(2).is_trivial()
        assert not PhaseExponent.of(theta(2)).is_trivial()

    def test_arithmetic(self):
        a, b = PhaseExponent.of(Fraction(3, 2)), PhaseExponent.of(Fraction(1, 2))
        assert (a + b).is_trivial()
        assert a - b == PhaseExponent.of(1)
        assert -a == b

    def test_str(self):
        assert str(PhaseExponent.of(theta())) == "exp(pi*i*(theta))"
        assert str(PhaseExponent.of(theta(-1))) == "exp(pi*i*(-theta))"

    def test_json(self):
        phase = PhaseExponent.of(theta() + Fraction(1, 3))
        assert PhaseExponent.from_json(phase.to_json()) == phase


class TestElements:

    def test_generator(self):
        assert generator(3, 2).exponent == (0, 1, 0)
        assert generator(3, 2).phase.is_trivial()
        with pytest.raises(UsageError):
            generator(3, 4)
        with pytest.raises(UsageError):
            generator(3, 0)

    def test_identity(self):
        assert identity_element(2) == WeylElement(exponent=[0, 0])

    def test_json(self):
        g = WeylElement(phase=PhaseExponent.of(theta()), exponent=[1, -2])
        assert g.to_json()["exponent"] == [1, -2]
        assert WeylElement.from_json(g.to_json()) == g
        with pytest.raises(UsageError):
            WeylElement.from_json({"exponent": [1]})


class TestMultiplication:

    def test_cocycle(self, theta_split):
        assert cocycle(theta_split, [1, 0, 0, 0], [0, 1, 0, 0]) == PhaseExponent.of(theta(-1))
        assert cocycle(theta_split, [0, 1, 0, 0], [1, 0, 0, 0]) == PhaseExponent.of(theta())
        assert cocycle(theta_split, [1, 0, 0, 0], [0, 0, 1, 0]).is_trivial()
        with pytest.raises(UsageError):
            cocycle(theta_split, [1, 0], [0, 1, 0, 0])

    def test_generators_commute_up_to_phase(self, theta_split):
        assert commutator_phase(theta_split, 1, 2) == PhaseExponent.of(theta(-2))
        assert commutator_phase(theta_split, 2, 1) == PhaseExponent.of(theta(2))
        assert commutator_phase(theta_split, 1, 3).is_trivial()
        assert commutator_phase(theta_split, 3, 3).is_trivial()

    def test_power(self, theta_split):
        g = multiply(theta_split, generator(4, 1), generator(4, 2))
        assert power(theta_split, g, 0) == identity_element(4)
        assert power(theta_split, g, 1) == g
        assert power(theta_split, g, -1) == inverse(theta_split, g)
        assert power(theta_split, g, 3).exponent == (3, 3, 0, 0)

    def test_normal_order(self, theta_split):
        word = normal_order(theta_split, [-1, -1, -1, 0])
        assert word.phase == PhaseExponent.of(theta())
        assert word.render() == "exp(pi*i*(theta)) u1* u2* u3*"

    @settings(max_examples=100, deadline=None)
    @given(elements(), elements(), elements())
    def test_associativity(self, g, h, k):
        assert multiply(GENERIC, multiply(GENERIC, g, h), k) == multiply(GENERIC, g, multiply(GENERIC, h, k))

    @settings(max_examples=100, deadline=None)
    @given(elements())
    def test_inverse(self, g):
        assert multiply(GENERIC, g, inverse(GENERIC, g)) == identity_element(4)
        assert multiply(GENERIC, inverse(GENERIC, g), g) == identity_element(4)

    @settings(max_examples=100, deadline=None)
    @given(int_vectors(4, 4))
    def test_normal_order_round_trip(self, y):
        word = normal_order(GENERIC, y)
        product = ordered_product(GENERIC, y)
        assert product.exponent == tuple(y)
        assert product.phase == -word.phase


class TestNormalWord:

    def test_render(self):
        assert NormalWord(powers=[0, 0]).render() == "1"
        assert NormalWord(powers=[2, -1, 0, -3]).render() == "u1^2 u2* u4^-3"
        assert str(NormalWord(phase=PhaseExponent.of(Fraction(1, 2)), powers=[0, 0])) == "exp(pi*i*(1/2)) 1"

    def test_json(self):
        word = NormalWord(phase=PhaseExponent.of(theta()), powers=[1, 0])
        assert word.to_json()["text"] == "exp(pi*i*(theta)) u1"
        assert NormalWord.from_json(word.to_json()) == word


class TestAction:

    @pytest.mark.parametrize("n", [5, 8, 10, 12])
    def test_action_tables(self, n, dim4, theta_split):
        A = dim4["A_{n}".format(n=n)].matrix
        assert [w.render() for w in action_table(A, theta_split)] == expected_action_tables()[n]

    def test_outside_isotropy(self, dim4, theta_split):
        C5 = dim4["C_5"].matrix
        with pytest.raises(HypothesisViolation):
            action_table(C5, theta_split)
        with pytest.raises(HypothesisViolation):
            act(C5, generator(4, 1), theta_split)
        assert act(C5, generator(4, 1)).exponent == tuple(C5.col(0))

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([5, 8, 10, 12]), elements(), elements())
    def test_action_is_multiplicative(self, dim4, theta_split, n, g, h):
        A = dim4["A_{n}".format(n=n)].matrix
        left = act(A, multiply(theta_split, g, h), theta_split)
        right = multiply(theta_split, act(A, g, theta_split), act(A, h, theta_split))
        assert left == right

    @pytest.mark.parametrize("n", [5, 8, 10, 12])
    def test_conjugacy(self, n, dim4, theta_split):
        B = dim4[conjugator_for(n)].matrix
        report = conjugacy_check(inverse_int(B), dim4[form_for(n)].matrix, dim4["C_{n}".format(n=n)].matrix)
        assert report.passed
        assert report.psi == dim4["A_{n}".format(n=n)].matrix
        assert report.Theta == theta_split
        assert report.to_json()["passed"]

    def test_conjugacy_records_failures(self, dim4, theta_split):
        report = conjugacy_check(identity(4), theta_split, dim4["C_5"].matrix)
        assert not report.passed
        assert [c.name for c in report.checks if not c.passed] == [
            "A in isotropy of source form", "psi(A) in isotropy of transported form"
        ]
