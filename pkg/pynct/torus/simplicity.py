"""The :mod:`simplicity` module decides when the noncommutative torus of a skew form is simple.

The torus of Theta is simple exactly when Theta is nondegenerate: no nonzero integer vector x has Theta x integral.
For a parametrized form Theta = Theta_0 + sum theta_i Theta_i, with the parameters independent over Q together
with 1, the vector x must be killed by every Theta_i and must make Theta_0 x integral. Both conditions are lattice
conditions, so the question is settled exactly by integer kernels and a congruence lattice.

"""
from __future__ import annotations

from typing import List, Optional

from pyrsistent import PClass, field

from pynct.algebra.exactla import congruence_lattice, int_kernel
from pynct.algebra.matrix import IntMatrix, apply, from_columns, identity, mat_mul
from pynct.torus.params import as_param_matrix
from pynct.utils import JsonSaveable, sup_norm
from pynct.validation import HypothesisViolation, UsageError, check_order, check_skew, check_vector_length


def _optional_vector(v):
    return None if v is None else tuple(int(x) for x in v)


class DegeneracyVerdict(JsonSaveable, PClass):
    """The result of a nondegeneracy test.

    Attributes
    ----------
    nondegenerate : bool
        True if no nonzero integer vector x has Theta x integral.
    witness : Optional[tuple]
        A nonzero x with Theta x integral. Present iff the form is degenerate.

    """

    nondegenerate = field(type=bool, mandatory=True)
    witness = field(initial=None, factory=_optional_vector)

    __invariant__ = lambda v: (
        v.nondegenerate == (v.witness is None) and (v.witness is None or any(v.witness)),
        "a witness is a nonzero vector present exactly when the form is degenerate"
    )

    def to_json(self) -> dict:
        """Return ``{"nondegenerate": bool, "witness": [ints] | null}``."""
        return {
            "nondegenerate": self.nondegenerate,
            "witness": None if self.witness is None else list(self.witness),
        }

    @staticmethod
    def from_json(data: dict) -> DegeneracyVerdict:
        """Load a verdict from its JSON form."""
        try:
            return DegeneracyVerdict(nondegenerate=data["nondegenerate"], witness=data["witness"])
        except (KeyError, TypeError):
            raise UsageError.bad_format("verdict", "expected keys nondegenerate and witness")


def _parameter_lattice(Theta) -> List[List[int]]:
    """Return a basis of the integer vectors killed by every parameter coefficient matrix."""
    d = Theta.rows
    _, parts = Theta.decompose()
    if not parts:
        return identity(d).tolist()
    rows = []
    for M in parts.values():
        rows.extend((M * M.denominator_lcm()).to_integer().tolist())
    return [v.flat() for v in int_kernel(IntMatrix(rows))]


def _witness_key(v):
    return sup_norm(v), tuple(-x for x in v)


def is_nondegenerate(Theta) -> DegeneracyVerdict:
    """Decide whether a skew form is nondegenerate.

    Let K hold a basis of the lattice L of vectors killed by all parameter coefficients. A vector x = K z of L has
    Theta x integral iff N Theta_0 K z = 0 (mod N), where N clears the denominators of Theta_0 K. The form is
    degenerate iff L is nonzero. The witness is chosen among the basis vectors of the solution lattice and their
    negatives: least sup-norm first, ties going to the lexicographically largest vector. The witness therefore has a
    positive first nonzero entry, e.g. (1, 0, 0) rather than (-1, 0, 0).

    Parameters
    ----------
    Theta : ParamMatrix
        A skew form whose parameters are independent over Q together with 1.

    Returns
    -------
    DegeneracyVerdict

    """
    Theta = as_param_matrix(Theta)
    check_skew(Theta)
    lattice = _parameter_lattice(Theta)
    if not lattice:
        return DegeneracyVerdict(nondegenerate=True)
    K = from_columns(lattice)
    restricted = mat_mul(Theta.constant_matrix(), K)
    N = restricted.denominator_lcm()
    solutions = congruence_lattice((restricted * N).to_integer(), N)
    witnesses = [apply(K, z.flat()) for z in solutions]
    witnesses += [[-x for x in w] for w in witnesses]
    return DegeneracyVerdict(nondegenerate=False, witness=min(witnesses, key=_witness_key))


def verify_witness(Theta, x) -> bool:
    """Return True if x is nonzero and Theta x is integral for all parameter values."""
    Theta = as_param_matrix(Theta)
    check_vector_length("apply", Theta.cols, x)
    return any(x) and all(y.is_integral() for y in Theta.apply(x))


def fixed_vector(A: IntMatrix, n: int) -> Optional[tuple]:
    """Return (k, x) with 0 < k < n and A^k x = x for some nonzero integer x, or None when there is none."""
    check_order(A, n)
    eye = identity(A.rows)
    power = A
    for k in range(1, n):
        kernel = int_kernel(power - eye)
        if kernel:
            return k, tuple(kernel[0].flat())
        power = mat_mul(power, A)
    return None


def is_free_outside_origin(A: IntMatrix, n: int) -> bool:
    """Return True if no power A^k, 0 < k < n, fixes a nonzero integer vector."""
    return fixed_vector(A, n) is None


def require_free(A: IntMatrix, n: int):
    """Raise HypothesisViolation if the action of A is not free outside the origin."""
    found = fixed_vector(A, n)
    if found is not None:
        raise HypothesisViolation.not_free(*found)

