"""The :mod:`params` module defines scalars and matrices that depend linearly on formal real parameters.

A ``ParamScalar`` is an element of Q + Q theta_1 + ... + Q theta_m where the theta_i are named formal parameters,
assumed to be linearly independent over Q together with 1. Skew forms of noncommutative tori, and the phase
exponents computed from them, live in this space. Only Q-linear operations are supported: a product of two
scalars is defined only when one of them is a rational constant.

A ``ParamMatrix`` is a dense matrix of ``ParamScalar`` entries. It can be split into a rational constant part and
one rational coefficient matrix per parameter, which is how every exact test on forms is carried out.

"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from pyrsistent import PClass, PMap, field, pmap

from pynct.algebra.matrix import RatMatrix, _ExactMatrix
from pynct.utils import JsonSaveable, fraction_from_json, fraction_to_str
from pynct.validation import UsageError, check_square


def _normalize_coeffs(coeffs) -> PMap:
    out = {}
    for name, c in dict(coeffs).items():
        if not isinstance(name, str) or not name:
            raise UsageError.bad_format("parameter", "names must be nonempty strings, got {n!r}".format(n=name))
        c = Fraction(c)
        if c != 0:
            out[name] = c
    return pmap(out)


class ParamScalar(PClass):
    """A rational constant plus a rational combination of formal parameters.

    Attributes
    ----------
    const : Fraction
        The constant part.
    coeffs : PMap
        Map from parameter name to its nonzero rational coefficient.

    """

    const = field(type=Fraction, mandatory=True, initial=Fraction(0), factory=Fraction)
    coeffs = field(type=PMap, mandatory=True, initial=pmap(), factory=_normalize_coeffs)

    @staticmethod
    def constant(q) -> ParamScalar:
        """Return the scalar with constant part q and no parameter part."""
        return ParamScalar(const=q)

    @staticmethod
    def parameter(name: str, coeff=1) -> ParamScalar:
        """Return the scalar coeff * name."""
        return ParamScalar(coeffs={name: coeff})

    @staticmethod
    def coerce(x) -> ParamScalar:
        """Return x as a ``ParamScalar``; rationals become constants."""
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, bool) or not isinstance(x, Rational):
            raise UsageError.bad_format("scalar", "expected a rational or a ParamScalar, got {v!r}".format(v=x))
        return ParamScalar(const=x)

    def parameters(self) -> List[str]:
        """Return the names of the parameters with nonzero coefficient, sorted."""
        return sorted(self.coeffs.keys())

    def coefficient(self, name: str) -> Fraction:
        """Return the coefficient of the named parameter (0 when absent)."""
        return self.coeffs.get(name, Fraction(0))

    def is_constant(self) -> bool:
        """Return True if no parameter appears."""
        return len(self.coeffs) == 0

    def is_zero(self) -> bool:
        """Return True for the zero scalar."""
        return self.is_constant() and self.const == 0

    def is_integral(self) -> bool:
        """Return True if no parameter appears and the constant part is an integer."""
        return self.is_constant() and self.const.denominator == 1

    def __add__(self, other) -> ParamScalar:
        if not isinstance(other, (ParamScalar, Rational)):
            return NotImplemented
        other = ParamScalar.coerce(other)
        coeffs = dict(self.coeffs)
        for name, c in other.coeffs.items():
            coeffs[name] = coeffs.get(name, Fraction(0)) + c
        return ParamScalar(const=self.const + other.const, coeffs=coeffs)

    __radd__ = __add__

    def __neg__(self) -> ParamScalar:
        return ParamScalar(const=-self.const, coeffs={k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> ParamScalar:
        if not isinstance(other, (ParamScalar, Rational)):
            return NotImplemented
        return self + (-ParamScalar.coerce(other))

    def __rsub__(self, other) -> ParamScalar:
        return ParamScalar.coerce(other) - self

    def scale(self, q) -> ParamScalar:
        """Return q times this scalar for a rational q."""
        q = Fraction(q)
        return ParamScalar(const=self.const * q, coeffs={k: v * q for k, v in self.coeffs.items()})

    def __mul__(self, other) -> ParamScalar:
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, ParamScalar):
            if other.is_constant():
                return self.scale(other.const)
            if self.is_constant():
                return other.scale(self.const)
            raise UsageError("Product of two parameter-dependent scalars is not Q-linear.")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q) -> ParamScalar:
        if not isinstance(q, Rational):
            return NotImplemented
        return self.scale(Fraction(1) / Fraction(q))

    def __eq__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.is_constant() and self.const == other
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.const == other.const and self.coeffs == other.coeffs

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self.is_constant():
            return hash(self.const)
        return hash((self.const, frozenset(self.coeffs.items())))

    def __str__(self):
        terms = []
        if self.const != 0 or self.is_constant():
            terms.append(fraction_to_str(self.const))
        for name in self.parameters():
            c = self.coeffs[name]
            if c == 1:
                body = name
            elif c == -1:
                body = "-" + name
            else:
                body = "{c}*{n}".format(c=fraction_to_str(c), n=name)
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "ParamScalar({s})".format(s=str(self))

    def to_json(self) -> dict:
        """Return the JSON form ``{"const": "a/b", "coeffs": {"theta": "c/d", ...}}``."""
        return {
            "const": fraction_to_str(self.const),
            "coeffs": {name: fraction_to_str(self.coeffs[name]) for name in self.parameters()},
        }

    @staticmethod
    def from_json(data) -> ParamScalar:
        """Load a scalar from its JSON form. A bare rational string is read as a constant."""
        if isinstance(data, (str, int)) and not isinstance(data, bool):
            return ParamScalar(const=fraction_from_json(data))
        try:
            const = fraction_from_json(data.get("const", "0"))
            coeffs = {name: fraction_from_json(c) for name, c in data.get("coeffs", {}).items()}
        except AttributeError:
            raise UsageError.bad_format("scalar", "expected an object with const and coeffs")
        return ParamScalar(const=const, coeffs=coeffs)


ZERO = ParamScalar()


def _dot(row: Sequence, col: Sequence) -> ParamScalar:
    acc = ZERO
    for a, b in zip(row, col):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


class ParamMatrix(JsonSaveable):
    """A dense matrix whose entries are ``ParamScalar`` values."""

    __slots__ = ["_a"]

    def __init__(self, entries):
        if isinstance(entries, ParamMatrix):
            entries = entries.tolist()
        elif isinstance(entries, _ExactMatrix):
            entries = entries.tolist()
        rows = [list(r) for r in entries]
        if len(rows) == 0 or len(rows[0]) == 0:
            raise UsageError.bad_format("matrix", "rows and cols must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise UsageError.bad_format("matrix", "rows have unequal lengths")
        a = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                a[i, j] = ParamScalar.coerce(x)
        a.flags.writeable = False
        self._a = a

    @staticmethod
    def combination(matrices: Sequence[_ExactMatrix], names: Sequence[str],
                    constant: _ExactMatrix = None) -> ParamMatrix:
        """Return constant + sum_i names[i] * matrices[i]."""
        if len(matrices) != len(names):
            raise UsageError.dimension_mismatch("combine", (len(matrices),), (len(names),))
        if constant is None and not matrices:
            raise UsageError("A combination needs at least one matrix.")
        shape = constant.shape if constant is not None else matrices[0].shape
        rows = []
        for i in range(shape[0]):
            row = []
            for j in range(shape[1]):
                const = constant[i, j] if constant is not None else 0
                row.append(ParamScalar(const=const, coeffs={n: m[i, j] for n, m in zip(names, matrices)}))
            rows.append(row)
        return ParamMatrix(rows)

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
    def T(self) -> ParamMatrix:
        """Return the transpose."""
        return ParamMatrix(self._a.T.tolist())

    def tolist(self) -> List[List[ParamScalar]]:
        """Return the entries as nested lists."""
        return self._a.tolist()

    def __getitem__(self, key):
        return self._a[key]

    def parameters(self) -> List[str]:
        """Return the sorted names of all parameters appearing in some entry."""
        names = set()
        for x in self._a.flat:
            names.update(x.coeffs.keys())
        return sorted(names)

    def constant_matrix(self) -> RatMatrix:
        """Return the matrix of constant parts."""
        return RatMatrix([[x.const for x in r] for r in self.tolist()])

    def coefficient_matrix(self, name: str) -> RatMatrix:
        """Return the matrix of coefficients of the named parameter."""
        return RatMatrix([[x.coefficient(name) for x in r] for r in self.tolist()])

    def decompose(self) -> Tuple[RatMatrix, Dict[str, RatMatrix]]:
        """Return (Theta_0, {name: Theta_name}) with self = Theta_0 + sum name * Theta_name."""
        return self.constant_matrix(), {name: self.coefficient_matrix(name) for name in self.parameters()}

    def is_constant(self) -> bool:
        """Return True if no entry depends on a parameter."""
        return all(x.is_constant() for x in self._a.flat)

    def is_zero(self) -> bool:
        """Return True if every entry is zero."""
        return all(x.is_zero() for x in self._a.flat)

    def is_integral(self) -> bool:
        """Return True if every entry is an integer constant."""
        return all(x.is_integral() for x in self._a.flat)

    def is_skew(self) -> bool:
        """Return True if the matrix is square with zero diagonal and transpose equal to its negation."""
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if not self._a[i, i].is_zero():
                return False
            for j in range(i + 1, self.cols):
                if self._a[i, j] != -self._a[j, i]:
                    return False
        return True

    def __eq__(self, other):
        if isinstance(other, _ExactMatrix):
            other = ParamMatrix(other)
        if not isinstance(other, ParamMatrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self._a.flat, other._a.flat))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.shape, tuple(self._a.flat)))

    def __add__(self, other) -> ParamMatrix:
        other = other if isinstance(other, ParamMatrix) else ParamMatrix(other)
        if self.shape != other.shape:
            raise UsageError.dimension_mismatch("add", self.shape, other.shape)
        return ParamMatrix((self._a + other._a).tolist())

    def __neg__(self) -> ParamMatrix:
        return ParamMatrix([[-x for x in r] for r in self.tolist()])

    def __sub__(self, other) -> ParamMatrix:
        other = other if isinstance(other, ParamMatrix) else ParamMatrix(other)
        return self + (-other)

    def __mul__(self, q) -> ParamMatrix:
        if isinstance(q, bool) or not isinstance(q, Rational):
            return NotImplemented
        return ParamMatrix([[x.scale(q) for x in r] for r in self.tolist()])

    __rmul__ = __mul__

    def left_mul(self, A: _ExactMatrix) -> ParamMatrix:
        """Return A self for an exact matrix A."""
        if A.cols != self.rows:
            raise UsageError.dimension_mismatch("multiply", A.shape, self.shape)
        cols = [self._a[:, j].tolist() for j in range(self.cols)]
        return ParamMatrix([[_dot(A.row(i), c) for c in cols] for i in range(A.rows)])

    def right_mul(self, A: _ExactMatrix) -> ParamMatrix:
        """Return self A for an exact matrix A."""
        if self.cols != A.rows:
            raise UsageError.dimension_mismatch("multiply", self.shape, A.shape)
        cols = [A.col(j) for j in range(A.cols)]
        return ParamMatrix([[_dot(self._a[i, :].tolist(), c) for c in cols] for i in range(self.rows)])

    def congruent(self, A: _ExactMatrix) -> ParamMatrix:
        """Return A^t self A."""
        check_square(self.shape)
        return self.right_mul(A).left_mul(A.T)

    def apply(self, vector: Sequence) -> List[ParamScalar]:
        """Return self x for a rational vector x."""
        if len(vector) != self.cols:
            raise UsageError.dimension_mismatch("apply", self.shape, (len(vector),))
        return [_dot(self._a[i, :].tolist(), vector) for i in range(self.rows)]

    def bilinear(self, x: Sequence, y: Sequence) -> ParamScalar:
        """Return <self x, y>."""
        return _dot(self.apply(x), y)

    def __repr__(self):
        return "ParamMatrix({e})".format(e=[[str(x) for x in r] for r in self.tolist()])

    def pretty_str(self) -> str:
        """Return the matrix as aligned text rows."""
        cells = [[str(x) for x in r] for r in self.tolist()]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def to_json(self) -> dict:
        """Return the JSON form with entries ``{"const": "a/b", "coeffs": {...}}``."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[x.to_json() for x in r] for r in self.tolist()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ParamMatrix:
        """Load a matrix from its JSON form. Entries may also be bare rational strings."""
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except (KeyError, TypeError):
            raise UsageError.bad_format("matrix", "expected keys rows, cols and entries")
        try:
            m = cls([[ParamScalar.from_json(x) for x in r] for r in entries])
        except UsageError:
            raise
        except (TypeError, ValueError):
            raise UsageError.bad_format("matrix", "entries must be a list of rows of scalars")
        if m.shape != (rows, cols):
            raise UsageError.bad_format("matrix", "declared shape {d} but found {s}".format(d=(rows, cols), s=m.shape))
        return m


def skew_from_upper(d: int, upper: Mapping[Tuple[int, int], object]) -> ParamMatrix:
    """Build a d x d skew matrix from its upper-triangle entries, indexed from 1 as {(i, j): value}."""
    rows = [[ZERO] * d for _ in range(d)]
    for (i, j), v in upper.items():
        if not 1 <= i < j <= d:
            raise UsageError("Upper-triangle index {ij} is not 1 <= i < j <= {d}.".format(ij=(i, j), d=d))
        v = ParamScalar.coerce(v)
        rows[i - 1][j - 1] = v
        rows[j - 1][i - 1] = -v
    return ParamMatrix(rows)


def theta(coeff=1) -> ParamScalar:
    """Return coeff * theta, the default single parameter."""
    return ParamScalar.parameter("theta", coeff)


def as_param_matrix(M) -> ParamMatrix:
    """Return M as a ``ParamMatrix``; exact matrices are converted entrywise."""
    if isinstance(M, ParamMatrix):
        return M
    return ParamMatrix(M)
