"""The :mod:`matrix` module defines dense exact matrices over the integers and the rationals.

An ``IntMatrix`` holds arbitrary-precision Python integers, a ``RatMatrix`` holds ``Fraction`` entries in lowest
terms. Both wrap a read-only numpy array of ``dtype=object`` so that numpy's broadcasting and ``dot`` can be used
without ever leaving exact arithmetic. Matrices are immutable values: every operation returns a new matrix.

Operations mixing the two kinds return a ``RatMatrix``. Operations on two ``IntMatrix`` values return an
``IntMatrix`` unless the result is not integral (for example ``inverse``).

"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational
from typing import List, Sequence, Tuple

import numpy as np

from pynct.utils import JsonSaveable, fraction_from_json, fraction_to_str, lcm_all
from pynct.validation import UsageError, check_square


class _ExactMatrix(JsonSaveable):
    """Base class for exact dense matrices."""

    __slots__ = ["_a"]

    def __init__(self, entries):
        if isinstance(entries, _ExactMatrix):
            entries = entries._a.tolist()
        elif isinstance(entries, np.ndarray):
            if entries.ndim != 2:
                raise UsageError.bad_format("matrix", "expected 2 dimensions, got {n}".format(n=entries.ndim))
            entries = entries.tolist()
        rows = [list(r) for r in entries]
        if len(rows) == 0 or len(rows[0]) == 0:
            raise UsageError.bad_format("matrix", "rows and cols must be positive")
        n_cols = len(rows[0])
        if any(len(r) != n_cols for r in rows):
            raise UsageError.bad_format("matrix", "rows have unequal lengths")
        a = np.empty((len(rows), n_cols), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                a[i, j] = self._coerce(x)
        a.flags.writeable = False
        self._a = a

    @staticmethod
    def _coerce(x):
        raise NotImplementedError()

    @classmethod
    def _from_array(cls, a: np.ndarray):
        m = cls.__new__(cls)
        out = np.empty(a.shape, dtype=object)
        for (i, j), x in np.ndenumerate(a):
            out[i, j] = cls._coerce(x)
        out.flags.writeable = False
        m._a = out
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        """Return (rows, cols)."""
        return self._a.shape

    @property
    def rows(self) -> int:
        """Return the number of rows."""
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        """Return the number of columns."""
        return self._a.shape[1]

    @property
    def T(self):
        """Return the transpose."""
        return type(self)._from_array(self._a.T)

    def array(self) -> np.ndarray:
        """Return a writable copy of the entries as an object array."""
        return self._a.copy()

    def tolist(self) -> List[List]:
        """Return the entries as nested lists, row-major."""
        return self._a.tolist()

    def flat(self) -> List:
        """Return the entries as a flat list, row-major. Convenient for column vectors."""
        return self._a.reshape(-1).tolist()

    def row(self, i: int) -> List:
        """Return row ``i`` as a list."""
        return self._a[i, :].tolist()

    def col(self, j: int) -> List:
        """Return column ``j`` as a list."""
        return self._a[:, j].tolist()

    def __getitem__(self, key):
        return self._a[key]

    def __eq__(self, other):
        if not isinstance(other, _ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.shape, tuple(Fraction(x) for x in self.flat())))

    def __repr__(self):
        return "{cls}({e})".format(cls=type(self).__name__, e=[[str(x) for x in r] for r in self.tolist()])

    def __neg__(self):
        return type(self)._from_array(-self._a)

    def __add__(self, other):
        if not isinstance(other, _ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise UsageError.dimension_mismatch("add", self.shape, other.shape)
        return _result_type(self, other)._from_array(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, _ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise UsageError.dimension_mismatch("subtract", self.shape, other.shape)
        return _result_type(self, other)._from_array(self._a - other._a)

    def __mul__(self, scalar):
        if not isinstance(scalar, Rational):
            return NotImplemented
        cls = IntMatrix if isinstance(self, IntMatrix) and isinstance(scalar, Integral) else RatMatrix
        return cls._from_array(self._a * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, _ExactMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def is_zero(self) -> bool:
        """Return True if every entry is zero."""
        return all(x == 0 for x in self.flat())

    def pretty_str(self) -> str:
        """Return the matrix as aligned text rows."""
        cells = [[str(x) for x in r] for r in self.tolist()]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def to_json(self) -> dict:
        """Return the JSON form ``{"rows": r, "cols": c, "entries": [["num/den", ...], ...]}``."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[fraction_to_str(x) for x in r] for r in self.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict):
        """Load a matrix from its JSON form."""
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except (KeyError, TypeError):
            raise UsageError.bad_format("matrix", "expected keys rows, cols and entries")
        try:
            m = cls([[fraction_from_json(x) for x in r] for r in entries])
        except UsageError:
            raise
        except (TypeError, ValueError):
            raise UsageError.bad_format("matrix", "entries must be a list of rows of rationals")
        if m.shape != (rows, cols):
            raise UsageError.bad_format("matrix", "declared shape {d} but found {s}".format(d=(rows, cols), s=m.shape))
        return m


class IntMatrix(_ExactMatrix):
    """A dense matrix of arbitrary-precision integers."""

    __slots__ = []

    @staticmethod
    def _coerce(x) -> int:
        if isinstance(x, bool):
            raise UsageError.not_integral(x)
        if isinstance(x, Integral):
            return int(x)
        if isinstance(x, Rational) and x.denominator == 1:
            return int(x.numerator)
        raise UsageError.not_integral(x)

    def to_rational(self) -> RatMatrix:
        """Return the same matrix as a ``RatMatrix``."""
        return RatMatrix._from_array(self._a)


class RatMatrix(_ExactMatrix):
    """A dense matrix of rationals, each stored as a ``Fraction`` in lowest terms."""

    __slots__ = []

    @staticmethod
    def _coerce(x) -> Fraction:
        if isinstance(x, bool) or not isinstance(x, Rational):
            raise UsageError.bad_format("matrix", "expected a rational entry, got {v!r}".format(v=x))
        return Fraction(x)

    def is_integral(self) -> bool:
        """Return True if every entry is an integer."""
        return all(x.denominator == 1 for x in self.flat())

    def to_integer(self) -> IntMatrix:
        """Return the same matrix as an ``IntMatrix``. Raise UsageError if some entry is not integral."""
        return IntMatrix._from_array(self._a)

    def denominator_lcm(self) -> int:
        """Return the least common multiple of all entry denominators."""
        return lcm_all(x.denominator for x in self.flat())


def _result_type(*matrices):
    if all(isinstance(m, IntMatrix) for m in matrices):
        return IntMatrix
    return RatMatrix


def identity(d: int) -> IntMatrix:
    """Return the d x d identity matrix."""
    if d < 1:
        raise UsageError.out_of_range("d", d, 1)
    return IntMatrix([[1 if i == j else 0 for j in range(d)] for i in range(d)])


def zeros(rows: int, cols: int) -> IntMatrix:
    """Return the zero matrix of the given shape."""
    return IntMatrix([[0] * cols for _ in range(rows)])


def column_vector(values: Sequence) -> _ExactMatrix:
    """Return a column vector; integral input gives an ``IntMatrix``, anything else a ``RatMatrix``."""
    if all(isinstance(v, Integral) or (isinstance(v, Rational) and v.denominator == 1) for v in values):
        return IntMatrix([[v] for v in values])
    return RatMatrix([[v] for v in values])


def from_columns(columns: Sequence[Sequence]) -> _ExactMatrix:
    """Return the matrix whose columns are the given sequences."""
    rows = [list(r) for r in zip(*columns)]
    try:
        return IntMatrix(rows)
    except UsageError:
        return RatMatrix(rows)


def transpose(M: _ExactMatrix) -> _ExactMatrix:
    """Return the transpose of M."""
    return M.T


def mat_mul(A: _ExactMatrix, B: _ExactMatrix) -> _ExactMatrix:
    """Return the exact product A B."""
    if A.cols != B.rows:
        raise UsageError.dimension_mismatch("multiply", A.shape, B.shape)
    return _result_type(A, B)._from_array(np.dot(A._a, B._a))


def mat_pow(M: _ExactMatrix, k: int) -> _ExactMatrix:
    """Return M^k by repeated squaring. Negative k uses the exact inverse."""
    check_square(M.shape)
    if k < 0:
        return mat_pow(inverse(M), -k)
    result = identity(M.rows) if isinstance(M, IntMatrix) else identity(M.rows).to_rational()
    base = M
    while k > 0:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def trace(M: _ExactMatrix):
    """Return the sum of the diagonal entries."""
    check_square(M.shape)
    return sum(M[i, i] for i in range(M.rows))


def det(M: _ExactMatrix):
    """Return the determinant via fraction-free Bareiss elimination.

    The result is an ``int`` for an ``IntMatrix`` and a ``Fraction`` for a ``RatMatrix``.
    """
    check_square(M.shape)
    n = M.rows
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0 if isinstance(M, IntMatrix) else Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(M, IntMatrix) else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def row_reduce(M: _ExactMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Return the reduced row echelon form of M over Q and the list of pivot columns."""
    a = [[Fraction(x) for x in r] for r in M.tolist()]
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_q(M: _ExactMatrix) -> int:
    """Return the rank of M over the rationals."""
    return len(row_reduce(M)[1])


def inverse(M: _ExactMatrix) -> RatMatrix:
    """Return the exact inverse of a square matrix over Q. Raise UsageError when M is singular."""
    check_square(M.shape)
    n = M.rows
    augmented = RatMatrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M.tolist())])
    a, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise UsageError("Matrix is singular.")
    return RatMatrix([r[n:] for r in a])


def inverse_int(M: IntMatrix) -> IntMatrix:
    """Return the inverse of a matrix in GL_d(Z) as an ``IntMatrix``."""
    d = det(M)
    if abs(d) != 1:
        raise UsageError.not_unimodular(d)
    return inverse(M).to_integer()


def apply(M: _ExactMatrix, vector: Sequence) -> List:
    """Return M x for a plain sequence x, as a list."""
    if len(vector) != M.cols:
        raise UsageError.dimension_mismatch("apply", M.shape, (len(vector),))
    return np.dot(M._a, np.array(list(vector), dtype=object)).tolist()
