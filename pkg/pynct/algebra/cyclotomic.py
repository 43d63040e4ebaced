"""The :mod:`cyclotomic` module provides cyclotomic polynomials, companion matrices and matrix orders.

The companion matrix ``C_n`` of the n-th cyclotomic polynomial is the integer matrix of order n that generates the
cyclic actions studied throughout pynct. Which orders can occur at all in GL_n(Z) is decided by the prime
factorization of the order, see ``order_realizable``.

"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from pyrsistent import CheckedPVector, PClass, field

from pynct.algebra.matrix import IntMatrix, identity, mat_mul
from pynct.config import DEFAULT_CONFIG, ToolkitConfig
from pynct.utils import JsonSaveable, fraction_from_json
from pynct.validation import UsageError, check_square


class Coefficients(CheckedPVector):
    """Integer coefficients of a polynomial in ascending degree."""

    __type__ = int


def _trim(coeffs: Sequence[int]) -> List[int]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


class IntPoly(JsonSaveable, PClass):
    """A polynomial with integer coefficients.

    Attributes
    ----------
    coeffs : Coefficients
        Coefficients a_0, a_1, ... in ascending degree with trailing zeros trimmed. The zero polynomial has no
        coefficients.

    """

    coeffs = field(type=Coefficients, mandatory=True, factory=lambda cs: Coefficients(_trim(int(c) for c in cs)))

    __invariant__ = lambda p: (len(p.coeffs) == 0 or p.coeffs[-1] != 0, "leading coefficient must be nonzero")

    @staticmethod
    def of(*coeffs: int) -> IntPoly:
        """Build a polynomial from its coefficients in ascending degree."""
        return IntPoly(coeffs=coeffs)

    @property
    def degree(self) -> int:
        """Return the degree. The zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        """Return True for the zero polynomial."""
        return len(self.coeffs) == 0

    def is_monic(self) -> bool:
        """Return True if the leading coefficient is 1."""
        return not self.is_zero() and self.coeffs[-1] == 1

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly(coeffs=[x + y for x, y in zip(a, b)])

    def __mul__(self, other: IntPoly) -> IntPoly:
        if self.is_zero() or other.is_zero():
            return IntPoly(coeffs=[])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(coeffs=out)

    def divmod_monic(self, divisor: IntPoly):
        """Return (quotient, remainder) of division by a monic polynomial; both have integer coefficients."""
        if not divisor.is_monic():
            raise UsageError.not_monic(divisor)
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPoly(coeffs=[]), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for i, b in enumerate(divisor.coeffs):
                    rem[k - dd + i] -= c * b
        return IntPoly(coeffs=quot), IntPoly(coeffs=rem[:dd])

    def evaluate(self, x):
        """Evaluate at x by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else "x^{k}".format(k=k))
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += " {s} {b}".format(s=sign, b=body)
        return out

    def to_json(self) -> dict:
        """Return the JSON form ``{"coeffs": ["a0", "a1", ...]}``."""
        return {"coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> IntPoly:
        """Load a polynomial from its JSON form."""
        try:
            raw = data["coeffs"]
        except (KeyError, TypeError):
            raise UsageError.bad_format("polynomial", "expected key coeffs")
        values = [fraction_from_json(c) for c in raw]
        if any(v.denominator != 1 for v in values):
            raise UsageError.bad_format("polynomial", "coefficients must be integers")
        return IntPoly(coeffs=[int(v) for v in values])


def factorize(n: int) -> Dict[int, int]:
    """Return the prime factorization of a positive integer as {prime: exponent}, by trial division."""
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    """Return True if n is a prime number."""
    return n >= 2 and factorize(n) == {n: 1}


def euler_phi(n: int) -> int:
    """Return Euler's totient of n from its prime factorization."""
    result = 1
    for p, k in factorize(n).items():
        result *= (p - 1) * p ** (k - 1)
    return result


def divisors(n: int) -> List[int]:
    """Return the positive divisors of n in increasing order."""
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    return [k for k in range(1, n + 1) if n % k == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """Return the n-th cyclotomic polynomial.

    Computed as x^n - 1 divided exactly by the product of Phi_k over the proper divisors k of n.
    """
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    poly = IntPoly(coeffs=[-1] + [0] * (n - 1) + [1])
    for k in divisors(n)[:-1]:
        poly, rem = poly.divmod_monic(cyclotomic_poly(k))
        assert rem.is_zero()
    return poly


def companion(p: IntPoly) -> IntMatrix:
    """Return the companion matrix of a monic polynomial.

    Entry (i+1, i) is 1 and the last column is (-a_0, ..., -a_{d-1}); every other entry is 0.
    """
    if not p.is_monic() or p.degree < 1 or p.coeffs[0] == 0:
        raise UsageError.not_monic(p)
    d = p.degree
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i + 1][i] = 1
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return IntMatrix(rows)


def cyclotomic_companion(n: int) -> IntMatrix:
    """Return C_n, the companion matrix of the n-th cyclotomic polynomial."""
    return companion(cyclotomic_poly(n))


def matrix_order(A: IntMatrix, cap: Optional[int] = None, config: ToolkitConfig = DEFAULT_CONFIG) -> Optional[int]:
    """Return the least k <= cap with A^k = I, or None when the order exceeds the cap.

    The cap defaults to ``config.order_cap``.
    """
    check_square(A.shape)
    if cap is None:
        cap = config.order_cap
    if cap < 1:
        raise UsageError.out_of_range("cap", cap, 1)
    eye = identity(A.rows)
    power = A
    for k in range(1, cap + 1):
        if power == eye:
            return k
        power = mat_mul(power, A)
    return None


def order_realizable(m: int, n: int) -> bool:
    """Return True if GL_n(Z) contains an element of order m.

    With m = prod p_i^k_i, the criterion compares s = sum (p_i - 1) p_i^(k_i - 1) against n. When the 2-part of
    m is exactly 2, the summand for it may be dropped, so s - 1 <= n suffices.
    """
    if m < 1:
        raise UsageError.out_of_range("m", m, 1)
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    if m == 1:
        return True
    factors = factorize(m)
    s = sum((p - 1) * p ** (k - 1) for p, k in factors.items())
    if factors.get(2) == 1:
        return s - 1 <= n
    return s <= n


def realizable_orders(n: int) -> List[int]:
    """Return every m such that GL_n(Z) contains an element of order m, in increasing order."""
    if n < 1:
        raise UsageError.out_of_range("n", n, 1)
    orders = [1]
    for p in range(2, n + 3):
        if not is_prime(p):
            continue
        powers = [1]
        q = p
        while (p - 1) * (q // p) <= n + 1:
            powers.append(q)
            q *= p
        # divisors of realizable orders are realizable
        orders = [m * q for m in orders for q in powers if order_realizable(m * q, n)]
    return sorted(orders)
