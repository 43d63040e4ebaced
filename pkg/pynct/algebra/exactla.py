"""The :mod:`exactla` module provides exact linear algebra over the integers and the rationals.

Kernels over Q come from the reduced row echelon form. Kernels over Z, congruence lattices and invariant factors
all come from a Smith normal form ``U M V = D`` computed by elimination with minimal-pivot selection, which keeps
entry growth small on the matrices that occur here (powers of companion matrices, exterior powers, small skew
forms).

Large kernel dimensions that only need to be counted use elimination modulo a prime on a vectorised numpy array.

"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List

import numpy as np
from pyrsistent import PRecord, field

from pynct.algebra.matrix import IntMatrix, RatMatrix, identity, row_reduce, _ExactMatrix
from pynct.utils import primitive
from pynct.validation import UsageError


class SnfResult(PRecord):
    """A Smith normal form decomposition ``U M V = D``.

    Attributes
    ----------
    U : IntMatrix
        Unimodular row transformation.
    D : IntMatrix
        Diagonal matrix with nonnegative entries d_1 | d_2 | ... followed by zeros.
    V : IntMatrix
        Unimodular column transformation.

    """

    U = field(type=IntMatrix, mandatory=True)
    D = field(type=IntMatrix, mandatory=True)
    V = field(type=IntMatrix, mandatory=True)

    def invariant_factors(self) -> List[int]:
        """Return the diagonal of D, zeros included."""
        return [self.D[i, i] for i in range(min(self.D.shape))]

    def rank(self) -> int:
        """Return the number of nonzero invariant factors."""
        return sum(1 for x in self.invariant_factors() if x != 0)


def rat_kernel(M: _ExactMatrix) -> List[RatMatrix]:
    """Return a basis of the right null space of M over Q.

    Each basis vector has a 1 at one free column and 0 at the other free columns, in increasing order of free
    column. The list is empty iff M is injective.
    """
    a, pivots = row_reduce(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(RatMatrix([[x] for x in v]))
    return basis


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, target, source, q):
    a[target] = [x + q * y for x, y in zip(a[target], a[source])]


def _add_col(a, target, source, q):
    for row in a:
        row[target] += q * row[source]


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Return the Smith normal form of an integer matrix.

    Elimination repeatedly moves the smallest nonzero entry of the active block to the pivot position, clears its
    row and column by division with remainder and, if some remaining entry is not divisible by the pivot, folds
    that row into the pivot row. The pivot strictly decreases until it divides the whole block.
    """
    if not isinstance(M, IntMatrix):
        M = RatMatrix(M).to_integer()
    m, n = M.shape
    D = M.tolist()
    U = identity(m).tolist()
    V = identity(n).tolist()
    for t in range(min(m, n)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        _swap_rows(D, t, i)
        _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    _add_row(D, i, t, -q)
                    _add_row(U, i, t, -q)
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    _add_col(D, j, t, -q)
                    _add_col(V, j, t, -q)
            rest = [(abs(D[i][t]), i, "row") for i in range(t + 1, m) if D[i][t] != 0]
            rest += [(abs(D[t][j]), j, "col") for j in range(t + 1, n) if D[t][j] != 0]
            if rest:
                _, k, kind = min(rest)
                if kind == "row":
                    _swap_rows(D, t, k)
                    _swap_rows(U, t, k)
                else:
                    _swap_cols(D, t, k)
                    _swap_cols(V, t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p != 0), None)
            if bad is not None:
                _add_row(D, t, bad[0], 1)
                _add_row(U, t, bad[0], 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SnfResult(U=IntMatrix(U), D=IntMatrix(D), V=IntMatrix(V))


def int_kernel(M: IntMatrix) -> List[IntMatrix]:
    """Return a Z-basis of the saturated lattice {x in Z^cols : M x = 0}.

    The basis is read off the last columns of V in ``U M V = D``; V is unimodular so the lattice is saturated.
    Each vector is divided by its content and has a positive first nonzero coordinate.
    """
    snf = smith_normal_form(M)
    r = snf.rank()
    return [IntMatrix([[x] for x in primitive(snf.V.col(j))]) for j in range(r, M.cols)]


def congruence_lattice(M: IntMatrix, N: int) -> List[IntMatrix]:
    """Return a Z-basis of {x in Z^cols : M x = 0 (mod N)}.

    With ``U M V = D`` the condition becomes d_i y_i = 0 (mod N) for y = V^-1 x, so the lattice is spanned by the
    columns of V scaled by N / gcd(d_i, N). It always contains N Z^cols.
    """
    if N < 1:
        raise UsageError.out_of_range("N", N, 1)
    n = M.cols
    if N == 1:
        return [IntMatrix([[1 if i == j else 0] for i in range(n)]) for j in range(n)]
    snf = smith_normal_form(M)
    factors = snf.invariant_factors()
    basis = []
    for j in range(n):
        scale = N // gcd(factors[j], N) if j < len(factors) else 1
        v = [scale * x for x in snf.V.col(j)]
        for x in v:
            if x != 0:
                if x < 0:
                    v = [-y for y in v]
                break
        basis.append(IntMatrix([[x] for x in v]))
    return basis


def rank_mod_p(M: _ExactMatrix, p: int) -> int:
    """Return the rank of an integer matrix over GF(p).

    Rows are eliminated with vectorised numpy updates on int64 residues; ``p`` must be below 2^31 so that
    products of residues fit in 64 bits.
    """
    if p >= 2 ** 31:
        raise UsageError.out_of_range("p", p, 2, 2 ** 31 - 1)
    a = np.array([[int(x) % p for x in row] for row in M.tolist()], dtype=np.int64)
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, :] = (a[r, :] * inv) % p
        below = a[r + 1:, c].copy()
        rows = np.nonzero(below)[0]
        if rows.size:
            a[r + 1 + rows, :] = (a[r + 1 + rows, :] - np.outer(below[rows], a[r, :]) % p) % p
        r += 1
    return r
