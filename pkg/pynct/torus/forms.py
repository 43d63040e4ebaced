"""The :mod:`forms` module computes the skew forms Theta that are invariant under an integer matrix A.

A matrix A in GL_d(Z) acts canonically on the noncommutative torus of Theta exactly when A^t Theta A = Theta. The
solutions form a rational vector space (the invariant-form space of A), which ``invariant_form_space`` returns
with an explicit basis. A basis element is attached to a formal parameter name so that the generic member of the
space can be written down and tested symbolically.

Besides the general solver the module builds the structured forms known for cyclotomic companion matrices: the
averaged seed that is always nondegenerate, the constant-superdiagonal (Toeplitz) shape shared by all invariant
forms of a companion matrix, and the reflection-symmetric shape of the prime case.

"""
from __future__ import annotations

from typing import List, Sequence, Tuple, Union

from pyrsistent import CheckedPVector, PClass, field

from pynct.algebra.cyclotomic import cyclotomic_companion, is_prime
from pynct.algebra.exactla import rat_kernel
from pynct.algebra.matrix import IntMatrix, RatMatrix, identity, inverse_int, mat_mul, rank_q, _ExactMatrix
from pynct.torus.params import ParamMatrix, ParamScalar, ZERO, as_param_matrix
from pynct.utils import JsonSaveable
from pynct.validation import UsageError, check_order, check_same_shape, check_skew, check_unimodular


class FormBasis(CheckedPVector):
    """Rational skew matrices spanning an invariant-form space."""

    __type__ = RatMatrix


class ParameterNames(CheckedPVector):
    """Names of the formal parameters attached to basis elements."""

    __type__ = str


def upper_coordinates(d: int) -> List[Tuple[int, int]]:
    """Return the 0-based upper-triangle positions (i, j), i < j, in row-major order."""
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def parameter_names(k: int) -> List[str]:
    """Return the names given to the basis of a k-dimensional form space.

    One or two parameters are called theta and mu; larger spaces use theta0, theta1, ...
    """
    if k <= 2:
        return ["theta", "mu"][:k]
    return ["theta{i}".format(i=i) for i in range(k)]


def elementary_skew(d: int, i: int, j: int) -> IntMatrix:
    """Return E_ij - E_ji (0-based indices)."""
    rows = [[0] * d for _ in range(d)]
    rows[i][j] = 1
    rows[j][i] = -1
    return IntMatrix(rows)


def skew_from_coordinates(d: int, values: Sequence) -> RatMatrix:
    """Return the skew matrix with the given upper-triangle values in row-major order."""
    rows = [[0] * d for _ in range(d)]
    for (i, j), v in zip(upper_coordinates(d), values):
        rows[i][j] = v
        rows[j][i] = -v
    return RatMatrix(rows)


def _coordinates(M: _ExactMatrix) -> List:
    return [M[i, j] for i, j in upper_coordinates(M.rows)]


class SkewFormSpace(JsonSaveable, PClass):
    """A rational basis of the skew forms invariant under a fixed matrix.

    Attributes
    ----------
    d : int
        Size of the forms.
    basis : FormBasis
        Linearly independent rational skew matrices.
    names : ParameterNames
        One parameter name per basis element.

    """

    d = field(type=int, mandatory=True)
    basis = field(type=FormBasis, mandatory=True, factory=FormBasis.create)
    names = field(type=ParameterNames, mandatory=True, factory=ParameterNames.create)

    __invariant__ = lambda s: (len(s.basis) == len(s.names), "one parameter name per basis element")

    @property
    def dimension(self) -> int:
        """Return the dimension of the space."""
        return len(self.basis)

    def general_member(self) -> ParamMatrix:
        """Return sum_i names[i] * basis[i] with formal parameters; the zero form for a zero space."""
        if not self.basis:
            return ParamMatrix([[ZERO] * self.d for _ in range(self.d)])
        return ParamMatrix.combination(list(self.basis), list(self.names))

    def contains(self, Theta) -> bool:
        """Return True if the constant part and every parameter coefficient of Theta lie in the span."""
        Theta = as_param_matrix(Theta)
        check_same_shape("compare", (self.d, self.d), Theta.shape)
        constant, parts = Theta.decompose()
        span = [_coordinates(b) for b in self.basis]
        base_rank = len(span)
        for M in [constant] + list(parts.values()):
            if M.is_zero():
                continue
            if not span or rank_q(RatMatrix(span + [_coordinates(M)])) > base_rank:
                return False
        return True

    def to_json(self) -> dict:
        """Return the JSON form listing basis matrices and parameter names."""
        return {
            "d": self.d,
            "names": list(self.names),
            "basis": [b.to_json() for b in self.basis],
        }

    @staticmethod
    def from_json(data: dict) -> SkewFormSpace:
        """Load a space from its JSON form."""
        try:
            return SkewFormSpace(d=data["d"], names=data["names"],
                                 basis=[RatMatrix.from_json(b) for b in data["basis"]])
        except (KeyError, TypeError):
            raise UsageError.bad_format("form space", "expected keys d, names and basis")


def invariant_form_space(A: IntMatrix) -> SkewFormSpace:
    """Return a basis of {Theta skew : A^t Theta A = Theta} for A in GL_d(Z).

    The linear map Theta -> Theta - A^t Theta A is written on the upper-triangle coordinates and its kernel taken
    over Q. Elimination runs over the coordinates in reverse order so that the free coordinates, one per basis
    element, are the earliest ones in row-major order. Each basis element has a 1 at its own free coordinate and a
    0 at the other free coordinates.
    """
    check_unimodular(A)
    d = A.rows
    coords = upper_coordinates(d)
    if not coords:
        return SkewFormSpace(d=d, basis=[], names=[])
    At = A.T
    images = []
    for i, j in coords:
        E = elementary_skew(d, i, j)
        images.append(_coordinates(E - mat_mul(mat_mul(At, E), A)))
    m = len(coords)
    constraint = IntMatrix([[images[c][r] for c in reversed(range(m))] for r in range(m)])
    vectors = [list(reversed(v.flat())) for v in reversed(rat_kernel(constraint))]
    basis = [skew_from_coordinates(d, v) for v in vectors]
    return SkewFormSpace(d=d, basis=basis, names=parameter_names(len(basis)))


def is_invariant(A: _ExactMatrix, Theta) -> bool:
    """Return True if A^t Theta A = Theta exactly, i.e. A lies in the isotropy group of Theta."""
    Theta = as_param_matrix(Theta)
    check_same_shape("compare", A.shape, Theta.shape)
    return Theta.congruent(A) == Theta


is_isotropy_member = is_invariant


def isotropy_closure_check(matrices: Sequence[IntMatrix], Theta) -> bool:
    """Return True if the isotropy group of Theta contains the inverses and pairwise products of the matrices.

    Returns False as soon as some given matrix is itself not in the isotropy group.
    """
    Theta = as_param_matrix(Theta)
    if not all(is_invariant(A, Theta) for A in matrices):
        return False
    for A in matrices:
        if not is_invariant(inverse_int(A), Theta):
            return False
        for B in matrices:
            if not is_invariant(mat_mul(A, B), Theta):
                return False
    return True


def average_form(A: IntMatrix, n: int, Theta) -> ParamMatrix:
    """Return sum_{k=0}^{n-1} (A^k)^t Theta (A^k) for A of order dividing n."""
    check_order(A, n)
    Theta = as_param_matrix(Theta)
    check_skew(Theta)
    check_same_shape("average", A.shape, Theta.shape)
    total = None
    power = identity(A.rows)
    for _ in range(n):
        term = Theta.congruent(power)
        total = term if total is None else total + term
        power = mat_mul(power, A)
    return total


def canonical_nondegenerate_seed(n: int, name: str = "theta") -> ParamMatrix:
    """Return name * sum_k (C_n^k)^t (C_n^t - C_n) C_n^k, a C_n-invariant form that is always nondegenerate."""
    if n < 3:
        raise UsageError.out_of_range("n", n, 3)
    C = cyclotomic_companion(n)
    total = average_form(C, n, C.T - C)
    return ParamMatrix.combination([total.constant_matrix()], [name])


def _first_row_offsets(p: int, params: Sequence[ParamScalar]) -> List[ParamScalar]:
    d = p - 1
    half = d // 2
    offsets = [ZERO]
    for o in range(1, d):
        if o <= half:
            offsets.append(params[o - 1])
        else:
            offsets.append(-params[d - o])
    return offsets


def prime_form(p: int, params: Sequence[Union[str, ParamScalar]] = None) -> ParamMatrix:
    """Return the (p-1) x (p-1) invariant form shape of the companion matrix C_p for an odd prime p.

    Entry (i, j), i < j, depends only on the offset o = j - i. Offsets 1 ... (p-1)/2 carry the parameters
    theta0 ... theta_{(p-3)/2}; the remaining offsets are fixed by the reflection t_o + t_{p-o} = 0.
    """
    if p < 3 or not is_prime(p):
        raise UsageError.not_prime(p)
    k = (p - 1) // 2
    if params is None:
        params = ["theta{i}".format(i=i) for i in range(k)]
    if len(params) != k:
        raise UsageError.dimension_mismatch("build prime form with parameters", (k,), (len(params),))
    params = [ParamScalar.parameter(x) if isinstance(x, str) else ParamScalar.coerce(x) for x in params]
    d = p - 1
    t = _first_row_offsets(p, params)
    rows = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            rows[i][j] = t[j - i]
            rows[j][i] = -t[j - i]
    return ParamMatrix(rows)


def toeplitz_form_check(Theta) -> bool:
    """Return True if every superdiagonal of the skew matrix Theta is constant.

    Matrices of size 1 or 2 pass vacuously.
    """
    Theta = as_param_matrix(Theta)
    check_skew(Theta)
    d = Theta.rows
    return all(Theta[i, j] == Theta[0, j - i] for i in range(1, d) for j in range(i + 1, d))


def matches_prime_form(Theta) -> bool:
    """Return True if Theta has the shape built by ``prime_form`` for the prime p = size + 1."""
    Theta = as_param_matrix(Theta)
    check_skew(Theta)
    d = Theta.rows
    if d % 2 != 0 or not is_prime(d + 1) or not toeplitz_form_check(Theta):
        return False
    t = [ZERO] + [Theta[0, o] for o in range(1, d)]
    return all(t[o] + t[d + 1 - o] == 0 for o in range(2, d))


def extended_symmetry_defect(A: IntMatrix, Theta) -> ParamMatrix:
    """Return K_A = Theta - (A^-1)^t Theta A^-1 for A in GL_d(Z)."""
    check_unimodular(A)
    Theta = as_param_matrix(Theta)
    check_same_shape("compare", A.shape, Theta.shape)
    return Theta - Theta.congruent(inverse_int(A))


def extended_symmetry_check(A: IntMatrix, Theta) -> bool:
    """Return True if K_A is an integer skew matrix.

    Such matrices A form a group that acts on the torus of Theta up to the inner correction given by K_A.
    """
    return extended_symmetry_defect(A, Theta).is_integral()


def companion_form_space(n: int) -> SkewFormSpace:
    """Return the invariant-form space of the cyclotomic companion matrix C_n."""
    return invariant_form_space(cyclotomic_companion(n))
