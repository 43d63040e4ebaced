"""The :mod:`weyl` module does phase-exact arithmetic with the monomials of a noncommutative torus.

The torus of Theta is generated by unitaries l(x), x in Z^d, with

    l(x) l(y) = exp(pi i <Theta x, y>) l(x + y).

A monomial lambda * l(x) is stored as a ``WeylElement``: the phase is kept as the exponent t of exp(pi i t), a
``ParamScalar`` whose constant part is reduced mod 2. No floating point values are ever formed, so identities
between phases are decided exactly, formal parameters included.

An integer matrix A in the isotropy group of Theta acts by l(x) -> l(A x). ``action_table`` writes the images of
the generators u_k = l(e_k) as normal-ordered words exp(pi i t) u_1^y_1 ... u_d^y_d.

"""
from __future__ import annotations

from typing import List, Sequence

from pyrsistent import CheckedPVector, PClass, field

from pynct.algebra.matrix import IntMatrix, apply, inverse_int, mat_mul
from pynct.torus.forms import is_invariant
from pynct.torus.params import ParamMatrix, ParamScalar, as_param_matrix
from pynct.utils import JsonSaveable
from pynct.validation import HypothesisViolation, UsageError, check_same_shape, check_unimodular, check_vector_length


def _reduce_mod_2(t) -> ParamScalar:
    t = ParamScalar.coerce(t)
    return ParamScalar(const=t.const % 2, coeffs=t.coeffs)


def _int_tuple(v) -> tuple:
    return tuple(IntMatrix._coerce(x) for x in v)


class PhaseExponent(JsonSaveable, PClass):
    """The scalar exp(pi i t), stored as t with its constant part in [0, 2).

    Two phases are equal iff their parameter coefficients agree and their constant parts agree mod 2.
    """

    t = field(type=ParamScalar, mandatory=True, initial=ParamScalar(), factory=_reduce_mod_2)

    @staticmethod
    def of(t) -> PhaseExponent:
        """Return exp(pi i t)."""
        return PhaseExponent(t=t)

    def is_trivial(self) -> bool:
        """Return True for the phase 1."""
        return self.t.is_zero()

    def __add__(self, other: PhaseExponent) -> PhaseExponent:
        return PhaseExponent(t=self.t + other.t)

    def __neg__(self) -> PhaseExponent:
        return PhaseExponent(t=-self.t)

    def __sub__(self, other: PhaseExponent) -> PhaseExponent:
        return self + (-other)

    def __str__(self):
        return "exp(pi*i*({t}))".format(t=self.t)

    def to_json(self):
        """Return the JSON form of the exponent."""
        return self.t.to_json()

    @staticmethod
    def from_json(data) -> PhaseExponent:
        """Load a phase from the JSON form of its exponent."""
        return PhaseExponent(t=ParamScalar.from_json(data))


class WeylElement(JsonSaveable, PClass):
    """A monomial exp(pi i t) l(x) of the torus.

    Attributes
    ----------
    phase : PhaseExponent
        The scalar in front.
    exponent : tuple
        The integer vector x.

    """

    phase = field(type=PhaseExponent, mandatory=True, initial=PhaseExponent())
    exponent = field(type=tuple, mandatory=True, factory=_int_tuple)

    @property
    def d(self) -> int:
        """Return the number of generators."""
        return len(self.exponent)

    def to_json(self) -> dict:
        """Return ``{"phase": ..., "exponent": [ints]}``."""
        return {"phase": self.phase.to_json(), "exponent": list(self.exponent)}

    @staticmethod
    def from_json(data: dict) -> WeylElement:
        """Load an element from its JSON form."""
        try:
            return WeylElement(phase=PhaseExponent.from_json(data["phase"]), exponent=data["exponent"])
        except (KeyError, TypeError):
            raise UsageError.bad_format("element", "expected keys phase and exponent")


def _render_power(k: int, y: int) -> str:
    if y == 1:
        return "u{k}".format(k=k)
    if y == -1:
        return "u{k}*".format(k=k)
    return "u{k}^{y}".format(k=k, y=y)


class NormalWord(JsonSaveable, PClass):
    """A monomial written as exp(pi i t) u_1^y_1 ... u_d^y_d in the generators u_k = l(e_k).

    Attributes
    ----------
    phase : PhaseExponent
        The scalar in front of the ordered product.
    powers : tuple
        The exponents y_1 ... y_d.

    """

    phase = field(type=PhaseExponent, mandatory=True, initial=PhaseExponent())
    powers = field(type=tuple, mandatory=True, factory=_int_tuple)

    def render(self) -> str:
        """Return the word as text, e.g. ``exp(pi*i*(theta)) u1* u2*``.

        A trivial phase is omitted, ``^1`` is elided and the power -1 is printed as an adjoint ``*``. The empty
        product is ``1``.
        """
        parts = [] if self.phase.is_trivial() else [str(self.phase)]
        parts += [_render_power(k, y) for k, y in enumerate(self.powers, start=1) if y != 0]
        if not any(self.powers):
            parts.append("1")
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def to_json(self) -> dict:
        """Return ``{"phase": ..., "powers": [ints], "text": str}``."""
        return {"phase": self.phase.to_json(), "powers": list(self.powers), "text": self.render()}

    @staticmethod
    def from_json(data: dict) -> NormalWord:
        """Load a word from its JSON form; the text field is ignored."""
        try:
            return NormalWord(phase=PhaseExponent.from_json(data["phase"]), powers=data["powers"])
        except (KeyError, TypeError):
            raise UsageError.bad_format("word", "expected keys phase and powers")


def generator(d: int, k: int) -> WeylElement:
    """Return u_k = l(e_k), with k counted from 1."""
    if not 1 <= k <= d:
        raise UsageError.out_of_range("k", k, 1, d)
    return WeylElement(exponent=[1 if i == k - 1 else 0 for i in range(d)])


def identity_element(d: int) -> WeylElement:
    """Return l(0), the unit."""
    return WeylElement(exponent=[0] * d)


def cocycle(Theta, x: Sequence[int], y: Sequence[int]) -> PhaseExponent:
    """Return omega(x, y) = exp(pi i <Theta x, y>)."""
    Theta = as_param_matrix(Theta)
    check_vector_length("pair", Theta.rows, x)
    check_vector_length("pair", Theta.rows, y)
    return PhaseExponent(t=Theta.bilinear(x, y))


def multiply(Theta, g: WeylElement, h: WeylElement) -> WeylElement:
    """Return the product g h."""
    check_same_shape("multiply", (g.d,), (h.d,))
    omega = cocycle(Theta, g.exponent, h.exponent)
    return WeylElement(phase=g.phase + h.phase + omega,
                       exponent=[a + b for a, b in zip(g.exponent, h.exponent)])


def inverse(Theta, g: WeylElement) -> WeylElement:
    """Return g^-1. Since <Theta x, -x> = 0 it is (-lambda, -x)."""
    check_vector_length("invert", as_param_matrix(Theta).rows, g.exponent)
    return WeylElement(phase=-g.phase, exponent=[-a for a in g.exponent])


def power(Theta, g: WeylElement, m: int) -> WeylElement:
    """Return g^m for any integer m."""
    if m < 0:
        return power(Theta, inverse(Theta, g), -m)
    result = identity_element(g.d)
    for _ in range(m):
        result = multiply(Theta, result, g)
    return result


def normal_order(Theta, y: Sequence[int]) -> NormalWord:
    """Write l(y) as exp(pi i t) u_1^y_1 ... u_d^y_d, where t = sum_{j<k} y_j y_k theta_jk."""
    Theta = as_param_matrix(Theta)
    check_vector_length("order", Theta.rows, y)
    t = ParamScalar()
    d = len(y)
    for k in range(1, d):
        for j in range(k):
            if y[j] and y[k]:
                t = t + Theta[j, k] * (y[j] * y[k])
    return NormalWord(phase=PhaseExponent(t=t), powers=y)


def ordered_product(Theta, y: Sequence[int]) -> WeylElement:
    """Return the product u_1^y_1 ... u_d^y_d computed with ``multiply``."""
    Theta = as_param_matrix(Theta)
    d = Theta.rows
    result = identity_element(d)
    for k in range(1, d + 1):
        result = multiply(Theta, result, power(Theta, generator(d, k), y[k - 1]))
    return result


def commutator_phase(Theta, j: int, k: int) -> PhaseExponent:
    """Return the phase c with u_j u_k = c u_k u_j, generators counted from 1. It is exp(2 pi i theta_kj)."""
    Theta = as_param_matrix(Theta)
    d = Theta.rows
    uj, uk = generator(d, j), generator(d, k)
    return multiply(Theta, uj, uk).phase - multiply(Theta, uk, uj).phase


def _require_isotropy(A: IntMatrix, Theta):
    if not is_invariant(A, Theta):
        raise HypothesisViolation.not_in_isotropy()


def act(A: IntMatrix, g: WeylElement, Theta=None) -> WeylElement:
    """Return alpha_A(g): the exponent vector is mapped by A, the phase is kept.

    When Theta is given, A is first checked to lie in its isotropy group.
    """
    check_vector_length("act", A.cols, g.exponent)
    if Theta is not None:
        _require_isotropy(A, as_param_matrix(Theta))
    return WeylElement(phase=g.phase, exponent=apply(A, g.exponent))


def action_table(A: IntMatrix, Theta) -> List[NormalWord]:
    """Return the normal-ordered images alpha_A(u_1) ... alpha_A(u_d)."""
    Theta = as_param_matrix(Theta)
    check_same_shape("act", A.shape, Theta.shape)
    _require_isotropy(A, Theta)
    return [normal_order(Theta, A.col(i)) for i in range(A.cols)]


class ConjugacyCheck(PClass):
    """One named check of a ``ConjugacyReport``."""

    name = field(type=str, mandatory=True)
    passed = field(type=bool, mandatory=True)

    def to_json(self) -> dict:
        """Return ``{"name": str, "passed": bool}``."""
        return {"name": self.name, "passed": self.passed}


class ConjugacyChecks(CheckedPVector):
    """Checks in the order they were run."""

    __type__ = ConjugacyCheck


class ConjugacyReport(JsonSaveable, PClass):
    """The outcome of transporting an action along rho(l(x)) = l(B x).

    Attributes
    ----------
    Theta : ParamMatrix
        The transported form (B^-1)^t Theta' B^-1.
    psi : IntMatrix
        The transported matrix B A B^-1.
    checks : ConjugacyChecks
        Isotropy and intertwining checks, each recorded rather than raised.

    """

    Theta = field(type=ParamMatrix, mandatory=True)
    psi = field(type=IntMatrix, mandatory=True)
    checks = field(type=ConjugacyChecks, mandatory=True, factory=ConjugacyChecks.create)

    @property
    def passed(self) -> bool:
        """Return True if every check passed."""
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        """Return the JSON form of the report."""
        return {
            "passed": self.passed,
            "Theta": self.Theta.to_json(),
            "psi": self.psi.to_json(),
            "checks": [c.to_json() for c in self.checks],
        }


def conjugacy_check(B: IntMatrix, Theta_prime, A: IntMatrix) -> ConjugacyReport:
    """Check that rho(l(x)) = l(B x) intertwines alpha_A on the torus of Theta' with beta_psi, psi = B A B^-1.

    Parameters
    ----------
    B : IntMatrix
        A matrix in GL_d(Z).
    Theta_prime : ParamMatrix
        The source form.
    A : IntMatrix
        A matrix expected in the isotropy group of Theta'.

    Returns
    -------
    ConjugacyReport
        Failures are recorded per check.

    """
    check_unimodular(B)
    Theta_prime = as_param_matrix(Theta_prime)
    check_same_shape("conjugate", B.shape, Theta_prime.shape)
    check_same_shape("conjugate", B.shape, A.shape)
    B_inv = inverse_int(B)
    Theta = Theta_prime.congruent(B_inv)
    psi = mat_mul(mat_mul(B, A), B_inv)
    checks = [
        ConjugacyCheck(name="A in isotropy of source form", passed=is_invariant(A, Theta_prime)),
        ConjugacyCheck(name="psi(A) in isotropy of transported form", passed=is_invariant(psi, Theta)),
    ]
    d = B.rows
    for k in range(1, d + 1):
        u = generator(d, k)
        left = act(B, act(A, u))
        right = act(psi, act(B, u))
        checks.append(ConjugacyCheck(name="intertwining on u{k}".format(k=k), passed=left == right))
    return ConjugacyReport(Theta=Theta, psi=psi, checks=checks)
