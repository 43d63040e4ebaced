from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence

import sympy
from hypothesis import strategies as st

from pynct.algebra.matrix import IntMatrix, identity, mat_mul


def to_sympy(M) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in row] for row in M.tolist()])


def sympy_rank(M) -> int:
    return to_sympy(M).rank()


def sympy_fixed_rank(A: IntMatrix, n: int) -> int:
    """Rank of the fixed space of the group generated by A, from the nullspace of A - I."""
    return len((to_sympy(A) - sympy.eye(A.rows)).nullspace())


def brute_force_witness(Theta_constant, bound: int) -> Optional[List[int]]:
    """Return some nonzero x with sup-norm <= bound and Theta x integral, searching exhaustively."""
    d = Theta_constant.rows
    rows = Theta_constant.tolist()
    for x in product(range(-bound, bound + 1), repeat=d):
        if not any(x):
            continue
        if all(Fraction(sum(a * b for a, b in zip(r, x))).denominator == 1 for r in rows):
            return list(x)
    return None


def elementary(d: int, i: int, j: int, k: int) -> IntMatrix:
    rows = identity(d).tolist()
    rows[i][j] += k
    return IntMatrix(rows)


def unimodular_from_steps(d: int, steps: Sequence) -> IntMatrix:
    M = identity(d)
    for i, j, k in steps:
        if i != j:
            M = mat_mul(M, elementary(d, i, j, k))
    return M


def small_ints(bound: int = 5):
    return st.integers(min_value=-bound, max_value=bound)


def int_vectors(d: int, bound: int = 5):
    return st.lists(small_ints(bound), min_size=d, max_size=d)


@st.composite
def int_matrices(draw, max_rows: int = 4, max_cols: int = 4, bound: int = 6):
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    return IntMatrix([draw(int_vectors(cols, bound)) for _ in range(rows)])


@st.composite
def unimodular_matrices(draw, d: int, max_steps: int = 6):
    n = draw(st.integers(min_value=0, max_value=max_steps))
    steps = [(draw(st.integers(0, d - 1)), draw(st.integers(0, d - 1)), draw(small_ints(2))) for _ in range(n)]
    return unimodular_from_steps(d, steps)


def determinantal_divisors(M: IntMatrix) -> List[int]:
    """Return the gcd of the k x k minors for k = 1 ... min(rows, cols)."""
    S = to_sympy(M)
    out = []
    for k in range(1, min(M.shape) + 1):
        minors = [S.extract(list(r), list(c)).det() for r in combinations(range(M.rows), k)
                  for c in combinations(range(M.cols), k)]
        out.append(abs(int(sympy.gcd_list(minors))))
    return out
