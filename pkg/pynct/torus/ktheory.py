"""The :mod:`ktheory` module computes the K-theoretic invariants of cyclic actions on noncommutative tori.

For the action of the cyclic group generated by C_n on Z^d, d = phi(n), free outside the origin, the rank s1 of K_1
of the crossed product is the sum over odd l of the ranks of the fixed submodules of the exterior powers
Lambda^l Z^d. The crossed product is AF exactly when s1 = 0.

Exterior powers use the basis e_I = e_i1 ^ ... ^ e_il, i1 < ... < il, in lexicographic order. Elements of
Lambda^l are handled as sparse dicts {I: coefficient} internally and as dense coordinate lists in the public API.

Each fixed rank is computed twice: by the averaged trace (1/n) sum_k tr Lambda^l(A^k), with the traces obtained
from power sums through Newton's identities, and by the kernel of Lambda^l(A) - I. Both must agree.

"""
from __future__ import annotations

from bisect import bisect
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

from pyrsistent import CheckedPVector, PClass, field

from pynct.algebra.cyclotomic import cyclotomic_companion, euler_phi, is_prime
from pynct.algebra.exactla import rank_mod_p
from pynct.algebra.matrix import IntMatrix, det, identity, mat_mul, rank_q, trace
from pynct.config import DEFAULT_CONFIG, ToolkitConfig
from pynct.tap import tap
from pynct.torus.forms import canonical_nondegenerate_seed, is_invariant
from pynct.torus.params import ParamMatrix, as_param_matrix
from pynct.torus.simplicity import is_nondegenerate, require_free
from pynct.utils import JsonSaveable, binomial
from pynct.validation import (
    HypothesisViolation, SearchBoundExceeded, UsageError, VerificationFailure, check_order, check_square
)

SCHEMA = "1"

Blade = Tuple[int, ...]


def wedge_basis(d: int, l: int) -> List[Blade]:
    """Return the 0-based index sets of the basis of Lambda^l Z^d in lexicographic order."""
    if not 0 <= l <= d:
        raise UsageError.out_of_range("l", l, 0, d)
    return list(combinations(range(d), l))


@lru_cache(maxsize=None)
def _basis_index(d: int, l: int) -> Dict[Blade, int]:
    return {b: i for i, b in enumerate(wedge_basis(d, l))}


def _permutation_sign(order: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return -1 if inversions % 2 else 1


def _merge_sign(I: Blade, J: Blade) -> int:
    """Return the sign s with e_I ^ e_J = s e_(I u J) for disjoint I, J."""
    crossings = sum(1 for i in I for j in J if i > j)
    return -1 if crossings % 2 else 1


def _wedge_dict(vectors: Sequence[Sequence[int]]) -> Dict[Blade, int]:
    # sparse vectors first keeps the intermediate dicts small
    order = sorted(range(len(vectors)), key=lambda k: sum(1 for x in vectors[k] if x != 0))
    sign = _permutation_sign(order)
    current = {(): sign}
    for k in order:
        v = vectors[k]
        support = [(i, x) for i, x in enumerate(v) if x != 0]
        nxt = defaultdict(int)
        for S, c in current.items():
            for i, x in support:
                pos = bisect(S, i)
                if pos > 0 and S[pos - 1] == i:
                    continue
                s = -1 if (len(S) - pos) % 2 else 1
                nxt[S[:pos] + (i,) + S[pos:]] += s * c * x
        current = {S: c for S, c in nxt.items() if c != 0}
    return current


def _to_coords(d: int, l: int, blades: Dict[Blade, int]) -> List[int]:
    index = _basis_index(d, l)
    out = [0] * len(index)
    for S, c in blades.items():
        out[index[S]] += c
    return out


def _from_coords(d: int, l: int, coords: Sequence[int]) -> Dict[Blade, int]:
    basis = wedge_basis(d, l)
    if len(coords) != len(basis):
        raise UsageError.dimension_mismatch("read exterior power coordinates", (len(basis),), (len(coords),))
    return {b: c for b, c in zip(basis, coords) if c != 0}


def wedge(vectors: Sequence[Sequence[int]], d: Optional[int] = None) -> List[int]:
    """Return the coordinates of v_1 ^ ... ^ v_k in Lambda^k Z^d.

    ``d`` is only needed when no vector is given.
    """
    if d is None:
        if not vectors:
            raise UsageError("The dimension is needed to wedge zero vectors.")
        d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise UsageError.dimension_mismatch("wedge", (d,), tuple(len(v) for v in vectors))
    if len(vectors) > d:
        return []
    return _to_coords(d, len(vectors), _wedge_dict(vectors))


def wedge_product(d: int, l: int, u: Sequence[int], m: int, v: Sequence[int]) -> List[int]:
    """Return u ^ v for u in Lambda^l Z^d and v in Lambda^m Z^d, as coordinates in Lambda^(l+m)."""
    if l + m > d:
        raise UsageError.out_of_range("l + m", l + m, 0, d)
    out = defaultdict(int)
    for I, a in _from_coords(d, l, u).items():
        for J, b in _from_coords(d, m, v).items():
            if set(I).isdisjoint(J):
                out[tuple(sorted(I + J))] += _merge_sign(I, J) * a * b
    return _to_coords(d, l + m, out)


def exterior_power_matrix(A: IntMatrix, l: int) -> IntMatrix:
    """Return the matrix of Lambda^l(A) on the lexicographic basis. Column J holds the wedge of the columns A e_j, j in J."""
    check_square(A.shape)
    d = A.rows
    basis = wedge_basis(d, l)
    index = _basis_index(d, l)
    cols = [A.col(j) for j in range(d)]
    rows = [[0] * len(basis) for _ in basis]
    for c, J in enumerate(basis):
        for S, x in _wedge_dict([cols[j] for j in J]).items():
            rows[index[S]][c] = x
    return IntMatrix(rows)


def _apply_dict(cols: Sequence[Sequence[int]], blades: Dict[Blade, int]) -> Dict[Blade, int]:
    out = defaultdict(int)
    for I, c in blades.items():
        for S, x in _wedge_dict([cols[i] for i in I]).items():
            out[S] += c * x
    return {S: x for S, x in out.items() if x != 0}


def apply_exterior_power(A: IntMatrix, l: int, vector: Sequence[int]) -> List[int]:
    """Return Lambda^l(A) applied to a coordinate vector, without forming the matrix."""
    check_square(A.shape)
    d = A.rows
    cols = [A.col(j) for j in range(d)]
    return _to_coords(d, l, _apply_dict(cols, _from_coords(d, l, vector)))


def _elementary_from_power_sums(p: Sequence, l: int) -> Fraction:
    """Return e_l from the power sums p[1] ... p[l] by Newton's identities."""
    e = [Fraction(1)]
    for k in range(1, l + 1):
        e.append(sum((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1)) / k)
    return e[l]


def trace_exterior_power(A: IntMatrix, l: int) -> int:
    """Return tr Lambda^l(A), the l-th elementary symmetric function of the eigenvalues of A."""
    check_square(A.shape)
    d = A.rows
    if not 0 <= l <= d:
        raise UsageError.out_of_range("l", l, 0, d)
    p = [None]
    power = identity(d)
    for _ in range(l):
        power = mat_mul(power, A)
        p.append(trace(power))
    e = _elementary_from_power_sums(p, l)
    if e.denominator != 1:
        raise VerificationFailure.not_integral("trace of exterior power", e)
    return int(e)


def euler_characteristic_check(A: IntMatrix) -> bool:
    """Return True if sum_l (-1)^l tr Lambda^l(A) = det(I - A), with traces read off the exterior power matrices."""
    check_square(A.shape)
    d = A.rows
    alternating = sum((-1) ** l * trace(exterior_power_matrix(A, l)) for l in range(d + 1))
    return alternating == det(identity(d) - A)


class Methods(CheckedPVector):
    """Names of the methods that agreed on a fixed rank."""

    __type__ = str


class DegreeRank(PClass):
    """The rank of the fixed submodule of one exterior power.

    Attributes
    ----------
    degree : int
        The exterior degree l.
    rank : int
        The rank of (Lambda^l Z^d)^G.
    methods : Methods
        The methods that produced the rank, e.g. ``["trace", "kernel-exact"]``.

    """

    degree = field(type=int, mandatory=True)
    rank = field(type=int, mandatory=True)
    methods = field(type=Methods, mandatory=True, factory=Methods.create)

    __invariant__ = lambda r: ((r.degree >= 0, "degree must be nonnegative"),
                               (r.rank >= 0, "rank must be nonnegative"))

    def to_json(self) -> dict:
        """Return ``{"degree": l, "rank": r, "methods": [...]}``."""
        return {"degree": self.degree, "rank": self.rank, "methods": list(self.methods)}

    @staticmethod
    def from_json(data: dict) -> DegreeRank:
        """Load a record from its JSON form."""
        return DegreeRank(degree=data["degree"], rank=data["rank"], methods=data["methods"])


@lru_cache(maxsize=64)
def _power_traces(A: IntMatrix, n: int) -> Tuple[int, ...]:
    out = []
    power = identity(A.rows)
    for _ in range(n):
        out.append(trace(power))
        power = mat_mul(power, A)
    return tuple(out)


def _trace_rank(A: IntMatrix, n: int, l: int) -> int:
    traces = _power_traces(A, n)
    total = sum(_elementary_from_power_sums([None] + [traces[(k * j) % n] for j in range(1, l + 1)], l)
                for k in range(n))
    if total.denominator != 1 or total.numerator % n != 0:
        raise VerificationFailure.not_integral("averaged trace of degree {l}".format(l=l), total / n)
    return int(total) // n


def _kernel_rank(A: IntMatrix, l: int, config: ToolkitConfig) -> Optional[Tuple[int, str]]:
    size = binomial(A.rows, l)
    if size > config.kernel_check_cap:
        return None
    shifted = exterior_power_matrix(A, l) - identity(size)
    if size <= config.exact_kernel_cap:
        return size - rank_q(shifted), "kernel-exact"
    return size - rank_mod_p(shifted, config.modulus), "kernel-mod-p"


@tap
def fixed_rank_report(A: IntMatrix, n: int, l: int, config: ToolkitConfig = DEFAULT_CONFIG) -> DegreeRank:
    """Return the rank of the submodule of Lambda^l Z^d fixed by the group generated by A, with its certificate.

    Parameters
    ----------
    A : IntMatrix
        A matrix with A^n = I.
    n : int
        The order used for averaging.
    l : int
        The exterior degree, 0 <= l <= d.
    config : ToolkitConfig
        Size caps for the kernel method. Above ``config.kernel_check_cap`` only the trace method runs.

    Returns
    -------
    DegreeRank

    Raises
    ------
    VerificationFailure
        If the methods disagree or the averaged trace is not an integer.

    """
    check_order(A, n)
    d = A.rows
    if not 0 <= l <= d:
        raise UsageError.out_of_range("l", l, 0, d)
    rank = _trace_rank(A, n, l)
    methods = ["trace"]
    kernel = _kernel_rank(A, l, config)
    if kernel is not None:
        kernel_rank, method = kernel
        if kernel_rank != rank:
            raise VerificationFailure.method_disagreement(
                "fixed rank of degree {l}".format(l=l), {"trace": rank, method: kernel_rank}
            )
        methods.append(method)
    return DegreeRank(degree=l, rank=rank, methods=methods)


def fixed_rank(A: IntMatrix, n: int, l: int, config: ToolkitConfig = DEFAULT_CONFIG) -> int:
    """Return rk (Lambda^l Z^d)^G for the group G generated by A of order dividing n."""
    return fixed_rank_report(A, n, l, config).rank


def prime_s1_closed_form(p: int) -> Fraction:
    """Return (2^(p-1) - (p-1)^2) / (2p), the value of s1 for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise UsageError.not_prime(p)
    return Fraction(2 ** (p - 1) - (p - 1) ** 2, 2 * p)


class DegreeRanks(CheckedPVector):
    """Fixed ranks indexed by degree."""

    __type__ = DegreeRank


class KReport(JsonSaveable, PClass):
    """K-theoretic data of the crossed product by the action of C_n.

    Attributes
    ----------
    n : int
        Order of the cyclic group.
    d : int
        Rank of the lattice, phi(n).
    per_degree : DegreeRanks
        Fixed ranks for l = 0 ... d.
    s1 : int
        Sum of the fixed ranks in odd degrees.
    af : str
        "AF" iff s1 = 0, otherwise "NOT_AF".
    prime_closed_form : Optional[int]
        The closed-form value of s1 when n is an odd prime.

    K_0 is known to be free of some rank s0 but no formula is available, so ``s0`` is always "unknown".

    """

    n = field(type=int, mandatory=True)
    d = field(type=int, mandatory=True)
    per_degree = field(type=DegreeRanks, mandatory=True, factory=DegreeRanks.create)
    s1 = field(type=int, mandatory=True)
    af = field(type=str, mandatory=True)
    prime_closed_form = field(initial=None)
    s0 = field(type=str, initial="unknown")

    __invariant__ = lambda r: (
        (r.s1 == sum(x.rank for x in r.per_degree if x.degree % 2 == 1), "s1 is the sum of odd-degree ranks"),
        (r.af == ("AF" if r.s1 == 0 else "NOT_AF"), "af holds iff s1 = 0"),
    )

    def to_json(self) -> dict:
        """Return the JSON form with a stable key order."""
        return {
            "schema": SCHEMA,
            "n": self.n,
            "d": self.d,
            "s1": self.s1,
            "af": self.af,
            "s0": self.s0,
            "prime_closed_form": self.prime_closed_form,
            "per_degree_ranks": [r.to_json() for r in self.per_degree],
        }

    @staticmethod
    def from_json(data: dict) -> KReport:
        """Load a report from its JSON form."""
        try:
            return KReport(n=data["n"], d=data["d"], s1=data["s1"], af=data["af"],
                           prime_closed_form=data.get("prime_closed_form"),
                           per_degree=[DegreeRank.from_json(r) for r in data["per_degree_ranks"]])
        except (KeyError, TypeError):
            raise UsageError.bad_format("K-theory report", "missing fields")


def _degree_rank_job(job) -> DegreeRank:
    A, n, l, config = job
    return fixed_rank_report(A, n, l, config)


@tap
def s1(n: int, config: ToolkitConfig = DEFAULT_CONFIG) -> KReport:
    """Compute the fixed ranks of all exterior powers for C_n and the rank s1 of K_1.

    Parameters
    ----------
    n : int
        The order, n >= 2. The action is that of C_n on Z^phi(n).
    config : ToolkitConfig
        With ``config.parallelism`` > 1 the degrees are computed in a process pool; results are merged in degree
        order.

    Raises
    ------
    HypothesisViolation
        If the action is not free outside the origin.
    VerificationFailure
        If two methods disagree, or n is an odd prime and s1 differs from the closed form.

    """
    if n < 2:
        raise UsageError.out_of_range("n", n, 2)
    A = cyclotomic_companion(n)
    require_free(A, n)
    d = A.rows
    jobs = [(A, n, l, config) for l in range(d + 1)]
    if config.parallelism > 1:
        with Pool(config.parallelism) as pool:
            ranks = pool.map(_degree_rank_job, jobs)
    else:
        ranks = [_degree_rank_job(job) for job in jobs]
    total = sum(r.rank for r in ranks if r.degree % 2 == 1)
    closed = None
    if n > 2 and is_prime(n):
        closed = prime_s1_closed_form(n)
        if closed != total:
            raise VerificationFailure.closed_form(n, total, closed)
        closed = int(closed)
    return KReport(n=n, d=d, per_degree=ranks, s1=total, af="AF" if total == 0 else "NOT_AF",
                   prime_closed_form=closed)


class AfReport(JsonSaveable, PClass):
    """The AF verdict for the crossed product of the torus of Theta by C_n, with the facts it rests on."""

    n = field(type=int, mandatory=True)
    Theta = field(type=ParamMatrix, mandatory=True)
    k_report = field(type=KReport, mandatory=True)

    @property
    def af(self) -> str:
        """Return "AF" or "NOT_AF"."""
        return self.k_report.af

    def justification(self) -> List[str]:
        """Return the chain of facts the verdict is derived from."""
        return [
            "Theta is C_{n}-invariant".format(n=self.n),
            "Theta is nondegenerate, so the torus is simple",
            "the action of C_{n} is free outside the origin".format(n=self.n),
            "s1 = {s}".format(s=self.k_report.s1),
        ]

    def to_json(self) -> dict:
        """Return the JSON form with a stable key order."""
        return {
            "schema": SCHEMA,
            "n": self.n,
            "af": self.af,
            "s1": self.k_report.s1,
            "simple": True,
            "free_outside_origin": True,
            "justification": self.justification(),
            "Theta": self.Theta.to_json(),
        }


def af_verdict(n: int, Theta=None, config: ToolkitConfig = DEFAULT_CONFIG) -> AfReport:
    """Decide whether the crossed product of the torus of Theta by the action of C_n is AF.

    Theta defaults to the canonical nondegenerate seed of C_n.

    Raises
    ------
    HypothesisViolation
        If Theta is not C_n-invariant or is degenerate.

    """
    if n < 2:
        raise UsageError.out_of_range("n", n, 2)
    A = cyclotomic_companion(n)
    if Theta is None:
        if n < 3:
            Theta = ParamMatrix([[0]])
        else:
            Theta = canonical_nondegenerate_seed(n)
    Theta = as_param_matrix(Theta)
    if Theta.shape != A.shape:
        raise UsageError.dimension_mismatch("pair form with C_{n}".format(n=n), Theta.shape, A.shape)
    if not is_invariant(A, Theta):
        raise HypothesisViolation.not_invariant()
    verdict = is_nondegenerate(Theta)
    if not verdict.nondegenerate:
        raise HypothesisViolation.degenerate_form(verdict.witness)
    return AfReport(n=n, Theta=Theta, k_report=s1(n, config))


def _index_tuple(v) -> Tuple[int, ...]:
    return tuple(sorted(int(x) for x in v))


class PartitionCertificate(JsonSaveable, PClass):
    """A split {I, J} of {1 ... d}, both parts of odd size, whose differences J - I cover every nonzero residue mod n.

    Such a split produces two nonzero fixed vectors in odd exterior degrees, so s1 > 0.
    """

    n = field(type=int, mandatory=True)
    I = field(type=tuple, mandatory=True, factory=_index_tuple)
    J = field(type=tuple, mandatory=True, factory=_index_tuple)

    def problems(self) -> List[str]:
        """Return the reasons the certificate is invalid; empty when it is valid."""
        out = []
        d = euler_phi(self.n) if self.n >= 1 else 0
        if set(self.I) & set(self.J):
            out.append("I and J intersect")
        if sorted(self.I + self.J) != list(range(1, d + 1)):
            out.append("I and J do not partition 1..{d}".format(d=d))
        if len(self.I) % 2 == 0 or len(self.J) % 2 == 0:
            out.append("I and J must both have odd size")
        if not out and not _covers(self.n, self.I, self.J):
            out.append("J - I does not cover every nonzero residue mod {n}".format(n=self.n))
        return out

    def is_valid(self) -> bool:
        """Return True if the certificate is valid."""
        return not self.problems()

    def validate(self):
        """Raise HypothesisViolation if the certificate is invalid."""
        problems = self.problems()
        if problems:
            raise HypothesisViolation.invalid_certificate("; ".join(problems))

    def to_json(self) -> dict:
        """Return ``{"n": n, "I": [...], "J": [...]}``."""
        return {"n": self.n, "I": list(self.I), "J": list(self.J)}

    @staticmethod
    def from_json(data: dict) -> PartitionCertificate:
        """Load a certificate from its JSON form."""
        try:
            return PartitionCertificate(n=data["n"], I=data["I"], J=data["J"])
        except (KeyError, TypeError):
            raise UsageError.bad_format("certificate", "expected keys n, I and J")


def _covers(n: int, I: Sequence[int], J: Sequence[int]) -> bool:
    residues = {(j - i) % n for i in I for j in J}
    return len(residues - {0}) == n - 1


@tap
def partition_search(n: int, config: ToolkitConfig = DEFAULT_CONFIG) -> Optional[PartitionCertificate]:
    """Search for a partition certificate for odd n >= 7, or return None when none exists.

    The search is exhaustive over the subsets I containing 1, by increasing odd size and in lexicographic order
    within a size, so the returned certificate is the first one in that order.

    Raises
    ------
    SearchBoundExceeded
        If phi(n) exceeds ``config.partition_degree_bound``.

    """
    if n < 7 or n % 2 == 0:
        raise UsageError("Partition search needs an odd n >= 7, got {n}.".format(n=n))
    d = euler_phi(n)
    if d > config.partition_degree_bound:
        raise SearchBoundExceeded.degree(d, config.partition_degree_bound)
    indices = range(2, d + 1)
    for size in range(1, d, 2):
        for rest in combinations(indices, size - 1):
            I = (1,) + rest
            taken = set(I)
            J = tuple(j for j in range(1, d + 1) if j not in taken)
            if _covers(n, I, J):
                return PartitionCertificate(n=n, I=I, J=J)
    return None


def fixed_witnesses(n: int, cert: PartitionCertificate) -> Tuple[List[int], List[int]]:
    """Return the fixed vectors sum_k Lambda(C_n^k) e_I and sign * sum_k Lambda(C_n^k) e_J.

    ``sign`` is the sign of e_I ^ e_J against e_1 ^ ... ^ e_d, so the wedge of the two vectors is n e_1 ^ ... ^ e_d.
    Both are returned as coordinates in Lambda^|I| and Lambda^|J|.
    """
    if cert.n != n:
        raise HypothesisViolation.invalid_certificate("certificate is for n={c}, not {n}".format(c=cert.n, n=n))
    cert.validate()
    C = cyclotomic_companion(n)
    d = C.rows
    I = [i - 1 for i in cert.I]
    J = [j - 1 for j in cert.J]
    w_I, w_J = defaultdict(int), defaultdict(int)
    power = identity(d)
    for _ in range(n):
        cols = [power.col(j) for j in range(d)]
        for S, x in _wedge_dict([cols[i] for i in I]).items():
            w_I[S] += x
        for S, x in _wedge_dict([cols[j] for j in J]).items():
            w_J[S] += x
        power = mat_mul(C, power)
    sign = _merge_sign(tuple(I), tuple(J))
    return _to_coords(d, len(I), w_I), [sign * x for x in _to_coords(d, len(J), w_J)]
