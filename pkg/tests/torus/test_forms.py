from fractions import Fraction

import pytest
from hypothesis import given, settings

from pynct.algebra.cyclotomic import cyclotomic_companion
from pynct.algebra.matrix import IntMatrix, identity, mat_mul
from pynct.torus.forms import (
    SkewFormSpace, average_form, canonical_nondegenerate_seed, companion_form_space, elementary_skew,
    extended_symmetry_check, extended_symmetry_defect, invariant_form_space, is_invariant, is_isotropy_member,
    isotropy_closure_check, matches_prime_form, parameter_names, prime_form, skew_from_coordinates,
    toeplitz_form_check, upper_coordinates
)
from pynct.torus.params import ParamMatrix, ParamScalar, skew_from_upper, theta
from pynct.torus.simplicity import is_nondegenerate
from pynct.validation import UsageError
from tests.support import int_vectors

MU = ParamScalar.parameter("mu")


def test_upper_coordinates():
    assert upper_coordinates(3) == [(0, 1), (0, 2), (1, 2)]


def test_parameter_names():
    assert parameter_names(0) == []
    assert parameter_names(1) == ["theta"]
    assert parameter_names(2) == ["theta", "mu"]
    assert parameter_names(3) == ["theta0", "theta1", "theta2"]


def test_skew_builders():
    assert elementary_skew(2, 0, 1) == IntMatrix([[0, 1], [-1, 0]])
    assert skew_from_coordinates(3, [1, 2, 3]) == IntMatrix([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])


class TestInvariantFormSpace:

    def test_identity(self):
        space = invariant_form_space(identity(3))
        assert space.dimension == 3
        assert space.general_member() == skew_from_upper(
            3, {(1, 2): ParamScalar.parameter("theta0"), (1, 3): ParamScalar.parameter("theta1"),
                (2, 3): ParamScalar.parameter("theta2")})

    def test_one_dimensional(self):
        space = invariant_form_space(IntMatrix([[-1]]))
        assert space.dimension == 0
        assert space.general_member() == ParamMatrix([[0]])

    @pytest.mark.parametrize("n", [5, 8, 10, 12])
    def test_dimension_four(self, n, dim4):
        space = companion_form_space(n)
        assert space.dimension == 2
        assert list(space.names) == ["theta", "mu"]
        assert space.general_member() == dim4["generic_{n}".format(n=n)].matrix

    def test_relations_of_order_five(self):
        Theta = companion_form_space(5).general_member()
        assert Theta[0, 3] == -MU
        assert Theta[1, 2] == theta()

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_prime_dimension(self, p):
        space = companion_form_space(p)
        assert space.dimension == (p - 1) // 2
        member = space.general_member()
        assert toeplitz_form_check(member)
        assert matches_prime_form(member)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 10, 12])
    def test_members_are_invariant(self, n):
        C = cyclotomic_companion(n)
        space = companion_form_space(n)
        assert is_invariant(C, space.general_member())
        for b in space.basis:
            assert is_invariant(C, b)

    @pytest.mark.parametrize("n", [5, 7, 8, 9, 12])
    def test_companion_forms_are_toeplitz(self, n):
        assert toeplitz_form_check(companion_form_space(n).general_member())

    def test_not_unimodular(self):
        with pytest.raises(UsageError):
            invariant_form_space(IntMatrix([[2, 0], [0, 1]]))

    def test_contains(self):
        space = companion_form_space(5)
        assert space.contains(prime_form(5))
        assert space.contains(prime_form(5) * Fraction(1, 3))
        assert not space.contains(skew_from_upper(4, {(1, 2): theta()}))
        assert SkewFormSpace(d=2, basis=[], names=[]).contains(ParamMatrix([[0, 0], [0, 0]]))

    def test_json(self):
        space = companion_form_space(8)
        data = space.to_json()
        assert data["names"] == ["theta", "mu"]
        assert SkewFormSpace.from_json(data) == space

    def test_json_bad(self):
        with pytest.raises(UsageError):
            SkewFormSpace.from_json({"d": 2})


def test_is_invariant_flip():
    Theta = skew_from_upper(3, {(1, 2): theta(), (1, 3): MU, (2, 3): Fraction(1, 2)})
    assert is_invariant(-identity(3), Theta)
    assert is_isotropy_member(-identity(3), Theta)
    assert not is_invariant(IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]), Theta)


def test_isotropy_closure(dim4, theta_split):
    generators = [dim4["A_{n}".format(n=n)].matrix for n in (5, 8, 10, 12)]
    assert isotropy_closure_check(generators, theta_split)
    assert not isotropy_closure_check(generators + [dim4["C_5"].matrix], theta_split)


def test_average_form_is_invariant(c7):
    Theta = skew_from_upper(6, {(1, 2): theta(), (2, 5): Fraction(1, 3), (3, 6): MU})
    assert is_invariant(c7, average_form(c7, 7, Theta))


def test_average_form_of_invariant_form(c5):
    Theta = companion_form_space(5).general_member()
    assert average_form(c5, 5, Theta) == Theta * 5


def test_average_form_wrong_order(c5):
    with pytest.raises(UsageError):
        average_form(c5, 4, prime_form(5))


@pytest.mark.parametrize("n", range(3, 13))
def test_seed_is_invariant_and_nondegenerate(n):
    seed = canonical_nondegenerate_seed(n)
    assert is_invariant(cyclotomic_companion(n), seed)
    assert is_nondegenerate(seed).nondegenerate
    assert seed.parameters() == ["theta"]


def test_seed_name():
    assert canonical_nondegenerate_seed(5, "mu").parameters() == ["mu"]


def test_seed_out_of_range():
    with pytest.raises(UsageError):
        canonical_nondegenerate_seed(2)


def test_prime_form_shape():
    Theta = prime_form(5)
    t0, t1 = ParamScalar.parameter("theta0"), ParamScalar.parameter("theta1")
    assert [Theta[0, j] for j in range(4)] == [0, t0, t1, -t1]
    assert Theta[1, 3] == t1
    assert Theta.is_skew()


def test_prime_form_custom_params():
    assert prime_form(3, ["mu"]) == skew_from_upper(2, {(1, 2): MU})
    assert prime_form(3, [Fraction(1, 2)]) == skew_from_upper(2, {(1, 2): Fraction(1, 2)})


def test_prime_form_errors():
    with pytest.raises(UsageError):
        prime_form(9)
    with pytest.raises(UsageError):
        prime_form(2)
    with pytest.raises(UsageError):
        prime_form(7, ["a"])


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prime_form_invariant(p):
    assert is_invariant(cyclotomic_companion(p), prime_form(p))
    assert matches_prime_form(prime_form(p))


def test_toeplitz_check():
    assert toeplitz_form_check(ParamMatrix([[0, 1], [-1, 0]]))
    assert not toeplitz_form_check(skew_from_upper(3, {(1, 2): theta(), (2, 3): MU}))


def test_matches_prime_form_rejects():
    # Toeplitz but the reflection relation fails
    assert not matches_prime_form(skew_from_upper(4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 3): 1, (2, 4): 1,
                                                      (1, 4): 1}))
    # size 8 is not one less than a prime
    assert not matches_prime_form(ParamMatrix([[0] * 8 for _ in range(8)]))


def test_extended_symmetry():
    swap = IntMatrix([[0, 1], [1, 0]])
    half = skew_from_upper(2, {(1, 2): Fraction(1, 2)})
    assert extended_symmetry_defect(swap, half) == skew_from_upper(2, {(1, 2): 1})
    assert extended_symmetry_check(swap, half)
    assert not extended_symmetry_check(swap, skew_from_upper(2, {(1, 2): theta()}))
    assert extended_symmetry_defect(identity(2), half).is_zero()


@settings(max_examples=100, deadline=None)
@given(int_vectors(15, 3))
def test_averaged_forms_lie_in_space(values):
    C = cyclotomic_companion(7)
    averaged = average_form(C, 7, skew_from_coordinates(6, values))
    assert is_invariant(C, averaged)
    assert companion_form_space(7).contains(averaged)
    assert matches_prime_form(averaged)


def test_closure_over_products(c8):
    Theta = companion_form_space(8).general_member()
    assert is_invariant(mat_mul(c8, c8), Theta)
