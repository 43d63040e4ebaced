from fractions import Fraction

import pytest

from pynct.algebra.matrix import IntMatrix, RatMatrix
from pynct.torus.params import ParamMatrix, ParamScalar, ZERO, as_param_matrix, skew_from_upper, theta
from pynct.validation import UsageError

MU = ParamScalar.parameter("mu")


class TestParamScalar:

    def test_zero(self):
        assert ZERO.is_zero()
        assert ZERO == 0
        assert ParamScalar(coeffs={"theta": 0}).is_zero()

    def test_arithmetic(self):
        s = theta() + 1 - MU
        assert s.const == 1
        assert s.coefficient("theta") == 1
        assert s.coefficient("mu") == -1
        assert s - s == ZERO
        assert 2 * s == s + s
        assert s / 2 == s * Fraction(1, 2)
        assert 3 - theta() == -(theta() - 3)

    def test_cancellation_drops_names(self):
        assert (theta() - theta()).parameters() == []

    def test_nonlinear_product(self):
        with pytest.raises(UsageError):
            theta() * MU

    def test_constant_product(self):
        assert theta() * ParamScalar.constant(2) == theta(2)

    def test_integrality(self):
        assert ParamScalar.constant(3).is_integral()
        assert not ParamScalar.constant(Fraction(1, 2)).is_integral()
        assert not theta().is_integral()

    def test_equality_with_rationals(self):
        assert ParamScalar.constant(Fraction(1, 2)) == Fraction(1, 2)
        assert theta() != 0
        assert hash(ParamScalar.constant(2)) == hash(2)

    def test_str(self):
        assert str(ZERO) == "0"
        assert str(theta()) == "theta"
        assert str(-theta()) == "-theta"
        assert str(theta() + 1) == "1 + theta"
        assert str(MU.scale(Fraction(-1, 2)) + theta()) == "-1/2*mu + theta"

    def test_json(self):
        s = theta(Fraction(1, 3)) + Fraction(-1, 2)
        assert s.to_json() == {"const": "-1/2", "coeffs": {"theta": "1/3"}}
        assert ParamScalar.from_json(s.to_json()) == s
        assert ParamScalar.from_json("3/4") == Fraction(3, 4)

    def test_json_bad(self):
        with pytest.raises(UsageError):
            ParamScalar.from_json([1])

    def test_coerce_rejects(self):
        with pytest.raises(UsageError):
            ParamScalar.coerce(0.5)

    def test_empty_name(self):
        with pytest.raises(UsageError):
            ParamScalar.parameter("")


class TestParamMatrix:

    def test_skew_from_upper(self):
        M = skew_from_upper(3, {(1, 2): theta(), (2, 3): 1})
        assert M[0, 1] == theta()
        assert M[1, 0] == -theta()
        assert M[2, 1] == -1
        assert M.is_skew()

    def test_skew_from_upper_bad_index(self):
        with pytest.raises(UsageError):
            skew_from_upper(2, {(2, 1): 1})

    def test_decompose(self):
        M = skew_from_upper(2, {(1, 2): theta() + Fraction(1, 2)})
        constant, parts = M.decompose()
        assert constant == RatMatrix([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
        assert parts == {"theta": RatMatrix([[0, 1], [-1, 0]])}
        assert M.parameters() == ["theta"]

    def test_combination(self):
        E = IntMatrix([[0, 1], [-1, 0]])
        M = ParamMatrix.combination([E], ["mu"], constant=E)
        assert M[0, 1] == MU + 1

    def test_combination_mismatch(self):
        with pytest.raises(UsageError):
            ParamMatrix.combination([IntMatrix([[0]])], [])

    def test_congruent(self):
        M = skew_from_upper(2, {(1, 2): theta()})
        # 2 x 2 skew forms scale by the determinant
        A = IntMatrix([[2, 1], [1, 1]])
        assert M.congruent(A) == M
        assert M.congruent(IntMatrix([[0, 1], [1, 0]])) == -M

    def test_bilinear_alternating(self):
        M = skew_from_upper(3, {(1, 2): theta(), (1, 3): MU, (2, 3): Fraction(1, 3)})
        assert M.bilinear([1, 2, 3], [1, 2, 3]) == 0
        assert M.bilinear([1, 0, 0], [0, 1, 0]) == -theta()

    def test_left_right_mul(self):
        M = skew_from_upper(2, {(1, 2): theta()})
        A = IntMatrix([[1, 0], [0, 2]])
        assert M.right_mul(A)[0, 1] == theta(2)
        assert M.left_mul(A)[1, 0] == theta(-2)

    def test_equality_with_exact(self):
        assert ParamMatrix([[0, 1], [-1, 0]]) == IntMatrix([[0, 1], [-1, 0]])
        assert as_param_matrix(IntMatrix([[1]])) == ParamMatrix([[1]])

    def test_not_skew(self):
        assert not ParamMatrix([[0, theta()], [theta(), 0]]).is_skew()
        assert not ParamMatrix([[1, 0], [0, -1]]).is_skew()
        assert not ParamMatrix([[0, 1]]).is_skew()

    def test_json(self):
        M = skew_from_upper(2, {(1, 2): theta() - 1})
        data = M.to_json()
        assert data["entries"][0][1] == {"const": "-1", "coeffs": {"theta": "1"}}
        assert ParamMatrix.from_json(data) == M

    def test_json_plain_entries(self):
        M = ParamMatrix.from_json({"rows": 1, "cols": 2, "entries": [["1/2", "0"]]})
        assert M == RatMatrix([[Fraction(1, 2), 0]])

    def test_json_bad_shape(self):
        with pytest.raises(UsageError):
            ParamMatrix.from_json({"rows": 2, "cols": 2, "entries": [["0", "0"]]})

    @pytest.mark.parametrize("entries", [5, [1, 2], [["0", "1"], ["-1"]], [[["theta"], "0"], ["0", "0"]]])
    def test_json_malformed_entries(self, entries):
        with pytest.raises(UsageError):
            ParamMatrix.from_json({"rows": 2, "cols": 2, "entries": entries})

    def test_pretty_str(self):
        assert skew_from_upper(2, {(1, 2): theta()}).pretty_str() == "[     0   theta]\n[-theta       0]"
