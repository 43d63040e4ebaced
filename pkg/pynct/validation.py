"""Module for validating inputs and raising informative errors."""
from typing import Sequence


class ToolkitError(Exception):
    """Base class of all errors raised by pynct."""


class UsageError(ToolkitError, ValueError):
    """Error raised when an operation is called with inputs outside of its domain."""

    @classmethod
    def dimension_mismatch(cls, op: str, left, right):
        """Raise UsageError when two operands have incompatible shapes."""
        return cls("Cannot {op} shapes {a} and {b}.".format(op=op, a=left, b=right))

    @classmethod
    def not_square(cls, shape):
        """Raise UsageError when a square matrix is required."""
        return cls("Expected a square matrix, got shape {s}.".format(s=shape))

    @classmethod
    def not_unimodular(cls, det):
        """Raise UsageError when a matrix is not in GL_d(Z)."""
        return cls("Expected an integer matrix with determinant +1 or -1, got determinant {d}.".format(d=det))

    @classmethod
    def order_mismatch(cls, n: int):
        """Raise UsageError when A^n is not the identity."""
        return cls("Matrix does not satisfy A^{n} = I.".format(n=n))

    @classmethod
    def out_of_range(cls, name: str, value, low, high=None):
        """Raise UsageError when an integer argument is out of range."""
        if high is None:
            return cls("Expected {name} >= {lo}, got {v}.".format(name=name, lo=low, v=value))
        return cls("Expected {lo} <= {name} <= {hi}, got {v}.".format(name=name, lo=low, hi=high, v=value))

    @classmethod
    def not_skew(cls):
        """Raise UsageError when a skew-symmetric matrix is required."""
        return cls("Expected a skew-symmetric matrix (zero diagonal, transpose equal to negation).")

    @classmethod
    def not_monic(cls, poly):
        """Raise UsageError when a companion matrix is requested for an unsuitable polynomial."""
        return cls("Companion matrices require a monic polynomial of degree >= 1 with nonzero constant term, "
                   "got {p}.".format(p=poly))

    @classmethod
    def not_prime(cls, p: int):
        """Raise UsageError when an odd prime is required."""
        return cls("Expected an odd prime, got {p}.".format(p=p))

    @classmethod
    def not_integral(cls, value):
        """Raise UsageError when an integer is required."""
        return cls("Expected an integer entry, got {v}.".format(v=value))

    @classmethod
    def bad_format(cls, what: str, reason: str):
        """Raise UsageError when a JSON document cannot be decoded."""
        return cls("Malformed {w}: {r}".format(w=what, r=reason))


class HypothesisViolation(ToolkitError):
    """Error raised when the hypothesis of a theorem does not hold for the given input."""

    @classmethod
    def not_free(cls, k: int, vector):
        """Raise HypothesisViolation when some A^k fixes a nonzero lattice vector."""
        return cls("Action is not free outside the origin: A^{k} fixes {v}.".format(k=k, v=list(vector)))

    @classmethod
    def degenerate_form(cls, witness):
        """Raise HypothesisViolation when a form is degenerate."""
        return cls("Form is degenerate, witness x = {w} has integral image.".format(w=list(witness)))

    @classmethod
    def not_invariant(cls):
        """Raise HypothesisViolation when a form is not invariant under the acting matrix."""
        return cls("Form is not invariant under the acting matrix.")

    @classmethod
    def not_in_isotropy(cls):
        """Raise HypothesisViolation when a matrix is not in the isotropy group of a form."""
        return cls("Matrix is not in the isotropy group of the form (A^t Theta A != Theta).")

    @classmethod
    def invalid_certificate(cls, reason: str):
        """Raise HypothesisViolation when a partition certificate is invalid."""
        return cls("Invalid partition certificate: {r}".format(r=reason))


class SearchBoundExceeded(ToolkitError):
    """Error raised when an exhaustive search would exceed its configured bound."""

    @classmethod
    def degree(cls, d: int, bound: int):
        """Raise SearchBoundExceeded when the dimension is above the partition search bound."""
        return cls("Search bound exceeded: d = {d} > {b}.".format(d=d, b=bound))


class VerificationFailure(ToolkitError):
    """Error raised when two independent exact computations disagree."""

    @classmethod
    def method_disagreement(cls, what: str, values: dict):
        """Raise VerificationFailure when methods computing the same quantity disagree."""
        return cls("Methods disagree on {w}: {v}.".format(w=what, v=values))

    @classmethod
    def closed_form(cls, n: int, computed, expected):
        """Raise VerificationFailure when a computed value disagrees with a closed form."""
        return cls("s1({n}) = {c} disagrees with the closed form value {e}.".format(n=n, c=computed, e=expected))

    @classmethod
    def not_integral(cls, what: str, value):
        """Raise VerificationFailure when an average that must be an integer is not."""
        return cls("{w} is not an integer: {v}.".format(w=what, v=value))

    @classmethod
    def fixture(cls, name: str, reason: str):
        """Raise VerificationFailure when a fixture file fails a load-time check."""
        return cls("Fixture {n} failed verification: {r}".format(n=name, r=reason))


def check_square(shape: Sequence[int]):
    """Raise UsageError if the shape is not square."""
    if shape[0] != shape[1]:
        raise UsageError.not_square(shape)


def check_same_shape(op: str, left: Sequence[int], right: Sequence[int]):
    """Raise UsageError if the shapes differ."""
    if tuple(left) != tuple(right):
        raise UsageError.dimension_mismatch(op, left, right)


def check_vector_length(op: str, d: int, vector: Sequence[int]):
    """Raise UsageError if the vector does not have length d."""
    if len(vector) != d:
        raise UsageError.dimension_mismatch(op, (d,), (len(vector),))


def check_unimodular(A):
    """Raise UsageError if A is not a square integer matrix with determinant +1 or -1."""
    from pynct.algebra.matrix import det
    check_square(A.shape)
    d = det(A)
    if abs(d) != 1:
        raise UsageError.not_unimodular(d)


def check_order(A, n: int):
    """Raise UsageError if A^n is not the identity."""
    from pynct.algebra.matrix import mat_pow, identity
    check_square(A.shape)
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    if mat_pow(A, n) != identity(A.shape[0]):
        raise UsageError.order_mismatch(n)


def check_skew(Theta):
    """Raise UsageError if the parametrized matrix is not skew-symmetric."""
    check_square(Theta.shape)
    if not Theta.is_skew():
        raise UsageError.not_skew()
