from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pyrsistent import InvariantException

from pynct.algebra.cyclotomic import cyclotomic_companion
from pynct.algebra.matrix import IntMatrix, apply, identity, mat_pow
from pynct.torus.forms import prime_form, skew_from_coordinates
from pynct.torus.params import ParamMatrix, ParamScalar, skew_from_upper, theta
from pynct.torus.simplicity import (
    DegeneracyVerdict, fixed_vector, is_free_outside_origin, is_nondegenerate, require_free, verify_witness
)
from pynct.validation import HypothesisViolation, UsageError
from tests.support import brute_force_witness, int_vectors, unimodular_matrices

MU = ParamScalar.parameter("mu")
SWAP = IntMatrix([[0, 1], [1, 0]])


class TestIsNondegenerate:

    def test_split_form(self, theta_split):
        verdict = is_nondegenerate(theta_split)
        assert verdict.nondegenerate
        assert verdict.witness is None

    def test_prime_forms(self):
        for p in (3, 5, 7):
            assert is_nondegenerate(prime_form(p)).nondegenerate

    def test_one_parameter_on_a_plane(self):
        verdict = is_nondegenerate(skew_from_upper(3, {(1, 2): theta()}))
        assert not verdict.nondegenerate
        assert verdict.witness == (0, 0, 1)

    def test_constant_part_scales_witness(self):
        Theta = skew_from_upper(3, {(1, 2): theta(), (1, 3): Fraction(1, 2), (2, 3): Fraction(1, 3)})
        verdict = is_nondegenerate(Theta)
        assert verdict.witness == (0, 0, 6)
        assert verify_witness(Theta, verdict.witness)
        assert not verify_witness(Theta, [0, 0, 3])

    def test_two_parameters(self):
        Theta = skew_from_upper(4, {(1, 2): theta(), (3, 4): MU})
        assert is_nondegenerate(Theta).nondegenerate
        verdict = is_nondegenerate(skew_from_upper(4, {(1, 2): theta(), (1, 3): MU}))
        assert verdict.witness == (0, 0, 0, 1)

    def test_constant_form_is_degenerate(self):
        Theta = ParamMatrix([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
        verdict = is_nondegenerate(Theta)
        assert not verdict.nondegenerate
        assert verify_witness(Theta, verdict.witness)
        assert next(x for x in verdict.witness if x != 0) > 0

    def test_zero_size_one(self):
        verdict = is_nondegenerate(ParamMatrix([[0]]))
        assert verdict.witness == (1,)

    def test_flip_generic_form(self):
        Theta = skew_from_upper(3, {(1, 2): theta(), (1, 3): MU, (2, 3): ParamScalar.parameter("nu")})
        assert is_nondegenerate(Theta).nondegenerate

    def test_not_skew(self):
        with pytest.raises(UsageError):
            is_nondegenerate(ParamMatrix([[0, 1], [1, 0]]))


@settings(max_examples=100, deadline=None)
@given(int_vectors(3, 4), st.integers(min_value=1, max_value=6))
def test_constant_forms_have_verified_witnesses(values, denominator):
    Theta = skew_from_coordinates(3, [Fraction(v, denominator) for v in values])
    verdict = is_nondegenerate(Theta)
    assert not verdict.nondegenerate
    assert verify_witness(Theta, verdict.witness)
    assert brute_force_witness(Theta, denominator) is not None


@settings(max_examples=100, deadline=None)
@given(int_vectors(2, 12))
def test_witness_is_least_multiple_of_the_free_direction(values):
    a, b = Fraction(values[0], 4), Fraction(values[1], 3)
    Theta = skew_from_upper(3, {(1, 2): theta(), (1, 3): a, (2, 3): b})
    m = a.denominator * b.denominator
    verdict = is_nondegenerate(Theta)
    assert verdict.witness == (0, 0, m)
    assert verify_witness(Theta, verdict.witness)


@settings(max_examples=100, deadline=None)
@given(unimodular_matrices(4))
def test_nondegeneracy_is_a_lattice_invariant(U):
    Theta = skew_from_upper(4, {(1, 2): theta(), (3, 4): theta()})
    assert is_nondegenerate(Theta.congruent(U)).nondegenerate


class TestVerdict:

    def test_json(self):
        verdict = DegeneracyVerdict(nondegenerate=False, witness=[0, 0, 6])
        assert verdict.to_json() == {"nondegenerate": False, "witness": [0, 0, 6]}
        assert DegeneracyVerdict.from_json(verdict.to_json()) == verdict

    def test_invariant(self):
        with pytest.raises(InvariantException):
            DegeneracyVerdict(nondegenerate=True, witness=[1, 0])
        with pytest.raises(InvariantException):
            DegeneracyVerdict(nondegenerate=False, witness=[0, 0])

    def test_bad_json(self):
        with pytest.raises(UsageError):
            DegeneracyVerdict.from_json({"witness": None})


class TestFreeness:

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
    def test_companion_is_free(self, n):
        assert is_free_outside_origin(cyclotomic_companion(n), n)
        require_free(cyclotomic_companion(n), n)

    def test_flip_is_free(self):
        assert is_free_outside_origin(-identity(3), 2)

    def test_swap_is_not_free(self):
        k, x = fixed_vector(SWAP, 2)
        assert k == 1
        assert apply(SWAP, list(x)) == list(x)
        with pytest.raises(HypothesisViolation):
            require_free(SWAP, 2)

    def test_block_sum(self):
        C3 = cyclotomic_companion(3)
        A = IntMatrix([[C3[0, 0], C3[0, 1], 0], [C3[1, 0], C3[1, 1], 0], [0, 0, -1]])
        k, x = fixed_vector(A, 6)
        assert k == 2
        assert x in [(0, 0, 1), (0, 0, -1)]
        assert apply(mat_pow(A, k), list(x)) == list(x)

    def test_identity(self):
        assert fixed_vector(identity(2), 1) is None

    def test_wrong_order(self):
        with pytest.raises(UsageError):
            fixed_vector(SWAP, 3)
