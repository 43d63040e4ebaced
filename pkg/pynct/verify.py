"""The :mod:`verify` module runs every reproducible claim about the catalog in one pass.

Each check returns a ``VerificationCheck`` with a PASS/FAIL status and a short detail line. Checks never raise:
a ``ToolkitError`` inside a check is recorded as a failure with its message. The suite is deterministic; the
randomized property checks draw from a seeded ``numpy.random.Generator``.

Checks of the AF property itself are only checks of the K-theoretic criterion (s1 = 0) that decides it, and are
labelled "criterion-level".

"""
from __future__ import annotations

from typing import Callable, List, Tuple

import numpy as np
import pandas as pd
from pyrsistent import PClass, field

from pynct.algebra.cyclotomic import IntPoly, cyclotomic_companion, cyclotomic_poly, euler_phi, matrix_order
from pynct.algebra.exactla import int_kernel, smith_normal_form
from pynct.algebra.matrix import IntMatrix, apply, from_columns, identity, inverse_int, mat_mul
from pynct.catalog import FIXTURE_ROOT, conjugator_for, form_for, four_torus_fixtures, verify_3torus_theorem, \
    verify_action_tables
from pynct.config import DEFAULT_CONFIG, ToolkitConfig
from pynct.tap import tap
from pynct.torus.forms import (
    canonical_nondegenerate_seed, companion_form_space, is_invariant, matches_prime_form, prime_form,
    toeplitz_form_check
)
from pynct.torus.ktheory import (
    af_verdict, apply_exterior_power, fixed_witnesses, partition_search, prime_s1_closed_form, s1, wedge_product
)
from pynct.torus.simplicity import is_nondegenerate
from pynct.torus.weyl import WeylElement, cocycle, conjugacy_check, multiply, normal_order, ordered_product
from pynct.validation import ToolkitError

EXACT = "exact"
CRITERION_LEVEL = "criterion-level"

Outcome = Tuple[bool, str]

# The published claim behind each check.
CLAIMS = {
    "cyclotomic-closed-forms": "Phi_5, Phi_8, Phi_10 and Phi_12 are the four cyclotomic polynomials of degree 4",
    "companion-fixtures": "C_n is the companion matrix of Phi_n",
    "companion-orders": "C_n lies in SL_d(Z) and has order exactly n",
    "dim4-form-spaces": "C_n-invariant forms on the 4-torus are a two-parameter family for n = 5, 8, 10, 12",
    "prime-form-spaces": "C_p-invariant forms are the reflection-symmetric Toeplitz forms with (p-1)/2 parameters",
    "nondegenerate-seeds": "every C_n with n >= 3 admits a nondegenerate invariant form",
    "k1-ranks": "s1 = (2^(p-1) - (p-1)^2) / 2p for an odd prime p, and s1 = 0 for even n",
    "partition-certificates": "for odd n, a partition with a fixed wedge exists when 2 phi(n) >= n + 5, so K_1 "
                              "of the crossed product is nonzero",
    "gl3-survey": "the flip is the only cyclic action on the 3-torus with a nondegenerate invariant form",
    "dim4-conjugations": "B_n carries Theta_n to Theta_split and conjugates C_n to A_n",
    "action-tables": "the images of the generators under the actions of A_5, A_8, A_10 and A_12",
    "cocycle-identity": "<Theta x, y> is a 2-cocycle on Z^d",
    "cocycle-invariance": "the isotropy group of Theta preserves the cocycle",
    "normal-order-round-trip": "l(y) equals the ordered product of generator powers up to the normal-order phase",
    "smith-normal-form": "U M V = D with a divisibility chain on the diagonal",
    "kernel-saturation": "integer kernels are saturated lattices",
    "af-prime-3": "the crossed product by a rotation of order p is AF exactly for p = 3 and p = 5",
    "af-prime-5": "the crossed product by a rotation of order p is AF exactly for p = 3 and p = 5",
    "af-prime-7": "the crossed product by a rotation of order p is AF exactly for p = 3 and p = 5",
    "af-order-8": "the crossed product of the 4-torus by C_8 is AF",
}


class VerificationCheck(PClass):
    """The outcome of one check.

    Attributes
    ----------
    name : str
        Short identifier of the check.
    criterion : int
        Number of the group of claims the check belongs to.
    topic : str
        What the check is about.
    reference : str
        The published claim the check reproduces, stated in words.
    level : str
        "exact", or "criterion-level" for checks of the K-theoretic criterion standing in for an analytic claim.
    passed : bool
        The verdict.
    details : str
        A one-line summary of what was compared.

    """

    name = field(type=str, mandatory=True)
    criterion = field(type=int, mandatory=True)
    topic = field(type=str, mandatory=True)
    reference = field(type=str, initial="")
    level = field(type=str, mandatory=True, initial=EXACT)
    passed = field(type=bool, mandatory=True)
    details = field(type=str, initial="")

    def to_json(self) -> dict:
        """Return the JSON form with a stable key order."""
        return {
            "name": self.name,
            "criterion": self.criterion,
            "topic": self.topic,
            "reference": self.reference,
            "level": self.level,
            "passed": self.passed,
            "details": self.details,
        }


@tap
def run_check(name: str, criterion: int, topic: str, fn: Callable[[], Outcome], level: str = EXACT,
              reference: str = "") -> VerificationCheck:
    """Run one check, recording a raised ``ToolkitError`` as a failure."""
    try:
        passed, details = fn()
    except ToolkitError as e:
        passed, details = False, "{cls}: {msg}".format(cls=type(e).__name__, msg=e)
    return VerificationCheck(name=name, criterion=criterion, topic=topic, reference=reference, level=level,
                             passed=bool(passed), details=details)


def _cyclotomic_closed_forms() -> Outcome:
    expected = {
        5: IntPoly.of(1, 1, 1, 1, 1),
        8: IntPoly.of(1, 0, 0, 0, 1),
        10: IntPoly.of(1, -1, 1, -1, 1),
        12: IntPoly.of(1, 0, -1, 0, 1),
    }
    bad = [n for n, p in expected.items() if cyclotomic_poly(n) != p]
    return not bad, "Phi_n for n in 5, 8, 10, 12" + ("" if not bad else "; mismatch at {b}".format(b=bad))


def _companion_fixtures(root: str) -> Callable[[], Outcome]:
    def check():
        fixtures = four_torus_fixtures(root)
        bad = [n for n in (5, 8, 10, 12) if cyclotomic_companion(n) != fixtures["C_{n}".format(n=n)].matrix]
        return not bad, "C_n equals the catalog entry entrywise" + ("" if not bad else "; mismatch at {b}".format(b=bad))
    return check


def _companion_orders() -> Outcome:
    bad = [n for n in range(1, 51) if matrix_order(cyclotomic_companion(n), cap=n) != n]
    return not bad, "order of C_n is n for n <= 50" + ("" if not bad else "; fails at {b}".format(b=bad))


def _dimension4_spaces(root: str) -> Callable[[], Outcome]:
    def check():
        fixtures = four_torus_fixtures(root)
        problems = []
        for n in (5, 8, 10, 12):
            space = companion_form_space(n)
            if space.dimension != 2:
                problems.append("dim for n={n} is {k}".format(n=n, k=space.dimension))
            elif space.general_member() != fixtures["generic_{n}".format(n=n)].matrix:
                problems.append("generic form for n={n} differs".format(n=n))
        return not problems, "; ".join(problems) or "dimension 2 with the expected relations for n in 5, 8, 10, 12"
    return check


def _prime_spaces() -> Outcome:
    problems = []
    for p in (3, 5, 7, 11):
        space = companion_form_space(p)
        member = space.general_member()
        if space.dimension != (p - 1) // 2:
            problems.append("dim for p={p} is {k}".format(p=p, k=space.dimension))
        elif not (toeplitz_form_check(member) and matches_prime_form(member)
                  and member == prime_form(p, list(space.names)) and space.contains(prime_form(p))):
            problems.append("shape for p={p} differs".format(p=p))
    return not problems, "; ".join(problems) or "dimension (p-1)/2 and reflection-symmetric shape for p in 3, 5, 7, 11"


def _seeds() -> Outcome:
    bad = []
    for n in range(3, 13):
        seed = canonical_nondegenerate_seed(n)
        if not (is_invariant(cyclotomic_companion(n), seed) and is_nondegenerate(seed).nondegenerate):
            bad.append(n)
    return not bad, "seed invariant and nondegenerate for 3 <= n <= 12" + ("" if not bad else "; fails at {b}".format(b=bad))


def _s1_values(config: ToolkitConfig) -> Callable[[], Outcome]:
    def check():
        problems = []
        for n, expected in ((3, 0), (5, 0), (7, 2)):
            got = s1(n, config).s1
            if got != expected:
                problems.append("s1({n}) = {g}, expected {e}".format(n=n, g=got, e=expected))
        for p in (11, 13):
            got = s1(p, config).s1
            if got != prime_s1_closed_form(p):
                problems.append("s1({p}) = {g} differs from closed form".format(p=p, g=got))
        for n in range(2, 17, 2):
            got = s1(n, config).s1
            if got != 0:
                problems.append("s1({n}) = {g} for even n".format(n=n, g=got))
        return not problems, "; ".join(problems) or "s1(3) = s1(5) = 0, s1(7) = 2, closed form for p <= 13, 0 for even n <= 16"
    return check


def _witnesses_hold(n: int, cert) -> bool:
    C = cyclotomic_companion(n)
    d = C.rows
    w_I, w_J = fixed_witnesses(n, cert)
    l, m = len(cert.I), len(cert.J)
    if not any(w_I) or not any(w_J):
        return False
    if apply_exterior_power(C, l, w_I) != w_I or apply_exterior_power(C, m, w_J) != w_J:
        return False
    return wedge_product(d, l, w_I, m, w_J) == [n]


def _partitions(config: ToolkitConfig) -> Callable[[], Outcome]:
    def check():
        problems = []
        for n in range(7, 26, 2):
            d = euler_phi(n)
            expected = 2 * d >= n + 5
            cert = partition_search(n, config)
            if (cert is not None) != expected:
                problems.append("n={n}: search {r}".format(n=n, r="failed" if expected else "succeeded"))
                continue
            if cert is None:
                continue
            if not s1(n, config).s1 > 0:
                problems.append("n={n}: s1 is 0".format(n=n))
            if not _witnesses_hold(n, cert):
                problems.append("n={n}: witnesses fail".format(n=n))
        return not problems, "; ".join(problems) or "partition exists iff 2 phi(n) >= n + 5 for odd 7 <= n <= 25"
    return check


def _gl3(root: str) -> Callable[[], Outcome]:
    def check():
        survey = verify_3torus_theorem(root)
        first = next(r for r in survey.rows if r.name == "A^2_1")
        pattern = first.witness is not None and first.witness[0] != 0 and first.witness[1:] == (0, 0)
        ok = survey.passed and survey.admitting_nondegenerate() == ["A^2_5"] and pattern
        return ok, "; ".join(survey.problems) or "only the flip admits a nondegenerate invariant form"
    return check


def _conjugations(root: str) -> Callable[[], Outcome]:
    def check():
        fixtures = four_torus_fixtures(root)
        split = fixtures["Theta_split"].matrix
        problems = []
        for n in (5, 8, 10, 12):
            B = fixtures[conjugator_for(n)].matrix
            Theta_n = fixtures[form_for(n)].matrix
            C = fixtures["C_{n}".format(n=n)].matrix
            A = fixtures["A_{n}".format(n=n)].matrix
            if not is_invariant(C, Theta_n):
                problems.append("Theta_n not invariant for n={n}".format(n=n))
            if Theta_n.congruent(B) != split:
                problems.append("B^t Theta B differs for n={n}".format(n=n))
            B_inv = inverse_int(B)
            if mat_mul(mat_mul(B_inv, C), B) != A:
                problems.append("B^-1 C B differs for n={n}".format(n=n))
            if matrix_order(A, cap=n) != n:
                problems.append("order of A_{n} is not {n}".format(n=n))
            report = conjugacy_check(B_inv, Theta_n, C)
            if not (report.passed and report.psi == A and report.Theta == split):
                problems.append("conjugacy check fails for n={n}".format(n=n))
        return not problems, "; ".join(problems) or "conjugations by B_n carry C_n to A_n and Theta_n to Theta_split"
    return check


def _action_tables(root: str) -> Callable[[], Outcome]:
    def check():
        report = verify_action_tables(root)
        bad = [c.n for c in report.checks if not c.matches]
        return report.passed, "16 generator images match" if not bad else "mismatch for n in {b}".format(b=bad)
    return check


def _random_vector(rng, d: int, bound: int = 5) -> List[int]:
    return [int(x) for x in rng.integers(-bound, bound + 1, size=d)]


def _cocycle_identity(rng, Theta, trials: int) -> Outcome:
    d = Theta.rows
    for _ in range(trials):
        x, y, z = (_random_vector(rng, d) for _ in range(3))
        xy = [a + b for a, b in zip(x, y)]
        yz = [a + b for a, b in zip(y, z)]
        if cocycle(Theta, x, y) + cocycle(Theta, xy, z) != cocycle(Theta, y, z) + cocycle(Theta, x, yz):
            return False, "cocycle identity fails at {x}, {y}, {z}".format(x=x, y=y, z=z)
    return True, "cocycle identity on {t} random triples".format(t=trials)


def _invariance(rng, Theta, generators: List[IntMatrix], trials: int) -> Outcome:
    d = Theta.rows
    pool = generators + [inverse_int(g) for g in generators]
    for _ in range(trials):
        A = identity(d)
        for k in rng.integers(0, len(pool), size=3):
            A = mat_mul(A, pool[int(k)])
        x, y = _random_vector(rng, d), _random_vector(rng, d)
        if cocycle(Theta, apply(A, x), apply(A, y)) != cocycle(Theta, x, y):
            return False, "invariance fails at {x}, {y}".format(x=x, y=y)
    return True, "omega(Ax, Ay) = omega(x, y) on {t} random pairs".format(t=trials)


def _round_trip(rng, Theta, trials: int) -> Outcome:
    d = Theta.rows
    for _ in range(trials):
        y = _random_vector(rng, d, 3)
        word = normal_order(Theta, y)
        if multiply(Theta, WeylElement(phase=word.phase, exponent=[0] * d), ordered_product(Theta, y)) != \
                WeylElement(exponent=y):
            return False, "normal order round trip fails at {y}".format(y=y)
    return True, "normal order round trip on {t} random vectors".format(t=trials)


def _snf(rng, trials: int) -> Outcome:
    for _ in range(trials):
        rows, cols = (int(x) for x in rng.integers(1, 5, size=2))
        M = IntMatrix(rng.integers(-6, 7, size=(rows, cols)).tolist())
        snf = smith_normal_form(M)
        D = snf.D
        if mat_mul(mat_mul(snf.U, M), snf.V) != D:
            return False, "U M V != D for {m}".format(m=M.tolist())
        off = [D[i, j] for i in range(rows) for j in range(cols) if i != j]
        diag = snf.invariant_factors()
        nonzero = [x for x in diag if x != 0]
        if any(off) or any(x < 0 for x in diag) or diag[:len(nonzero)] != nonzero or \
                any(b % a for a, b in zip(nonzero, nonzero[1:])):
            return False, "D is not in Smith form for {m}".format(m=M.tolist())
    return True, "Smith normal form reconstruction on {t} random matrices".format(t=trials)


def _saturation(rng, trials: int) -> Outcome:
    for _ in range(trials):
        rows, cols = int(rng.integers(1, 4)), int(rng.integers(2, 6))
        M = IntMatrix(rng.integers(-4, 5, size=(rows, cols)).tolist())
        kernel = int_kernel(M)
        if any(not mat_mul(M, v).is_zero() for v in kernel):
            return False, "kernel vector not killed for {m}".format(m=M.tolist())
        if kernel:
            factors = smith_normal_form(from_columns([v.flat() for v in kernel])).invariant_factors()
            if any(x != 1 for x in factors):
                return False, "kernel not saturated for {m}".format(m=M.tolist())
    return True, "integer kernels killed and saturated on {t} random matrices".format(t=trials)


def _af_criterion(n: int, Theta_source: Callable, expected: str, config: ToolkitConfig) -> Callable[[], Outcome]:
    def check():
        report = af_verdict(n, Theta_source(), config)
        return report.af == expected, "n={n}: {v} (s1 = {s})".format(n=n, v=report.af, s=report.k_report.s1)
    return check


@tap
def run_checks(config: ToolkitConfig = DEFAULT_CONFIG, seed: int = 0, trials: int = 100,
               root: str = FIXTURE_ROOT) -> List[VerificationCheck]:
    """Run the whole suite and return the checks in a fixed order.

    Parameters
    ----------
    config : ToolkitConfig
        Passed to the K-theory computations.
    seed : int
        Seed of the random instances of the property checks.
    trials : int
        Random instances per property check.
    root : str
        Fixture directory.

    """
    rng = np.random.default_rng(seed)
    fixtures = four_torus_fixtures(root)
    split = fixtures["Theta_split"].matrix
    generators = [fixtures["A_{n}".format(n=n)].matrix for n in (5, 8, 10, 12)]

    def check(name, criterion, topic, fn, level=EXACT):
        return run_check(name, criterion, topic, fn, level, reference=CLAIMS[name])

    checks = [
        check("cyclotomic-closed-forms", 1, "cyclotomic polynomials", _cyclotomic_closed_forms),
        check("companion-fixtures", 1, "companion matrices", _companion_fixtures(root)),
        check("companion-orders", 1, "companion matrices", _companion_orders),
        check("dim4-form-spaces", 2, "invariant forms in dimension 4", _dimension4_spaces(root)),
        check("prime-form-spaces", 2, "invariant forms of prime companions", _prime_spaces),
        check("nondegenerate-seeds", 3, "averaged seeds", _seeds),
        check("k1-ranks", 4, "rank of K_1", _s1_values(config)),
        check("partition-certificates", 5, "partitions and fixed witnesses", _partitions(config)),
        check("gl3-survey", 6, "finite-order elements of GL_3(Z)", _gl3(root)),
        check("dim4-conjugations", 7, "conjugated actions in dimension 4", _conjugations(root)),
        check("action-tables", 8, "generator images", _action_tables(root)),
        check("cocycle-identity", 9, "property suite", lambda: _cocycle_identity(rng, split, trials)),
        check("cocycle-invariance", 9, "property suite", lambda: _invariance(rng, split, generators, trials)),
        check("normal-order-round-trip", 9, "property suite", lambda: _round_trip(rng, split, trials)),
        check("smith-normal-form", 9, "property suite", lambda: _snf(rng, trials)),
        check("kernel-saturation", 9, "property suite", lambda: _saturation(rng, trials)),
        check("af-prime-3", 10, "AF criterion", _af_criterion(3, lambda: prime_form(3), "AF", config),
              CRITERION_LEVEL),
        check("af-prime-5", 10, "AF criterion", _af_criterion(5, lambda: prime_form(5), "AF", config),
              CRITERION_LEVEL),
        check("af-prime-7", 10, "AF criterion", _af_criterion(7, lambda: prime_form(7), "NOT_AF", config),
              CRITERION_LEVEL),
        check("af-order-8", 10, "AF criterion",
              _af_criterion(8, lambda: fixtures["generic_8"].matrix, "AF", config), CRITERION_LEVEL),
    ]
    return checks


def checks_frame(checks: List[VerificationCheck]) -> pd.DataFrame:
    """Return the checks as a DataFrame with one row per check."""
    return pd.DataFrame([{
        "criterion": c.criterion,
        "check": c.name,
        "level": c.level,
        "status": "PASS" if c.passed else "FAIL",
        "reference": c.reference,
        "details": c.details,
    } for c in checks])


def all_passed(checks: List[VerificationCheck]) -> bool:
    """Return True if every check passed."""
    return all(c.passed for c in checks)

