"""The :mod:`catalog` module loads the embedded matrix fixtures and runs the verifications built on them.

Fixtures are JSON files under ``pynct/fixtures``:

* ``gl3/`` holds one representative of each conjugacy class of elements of order 2, 3, 4 and 6 in GL_3(Z).
* ``dim4/`` holds the companion matrices C_5, C_8, C_10 and C_12, their generic invariant forms, the forms
  Theta_5 and Theta_8 with the matrices B_5 and B_8 that carry them to Theta_split, and the conjugated generators
  A_n = B_n^-1 C_n B_n together with the expected images of the generators under A_n.

Every file is listed with its SHA-256 digest in ``fixtures/SHA256SUMS``. Loading checks the digests and, for
matrices with a declared order, that the order is attained exactly.

"""
from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from typing import List, Optional

import pandas as pd
from pyrsistent import CheckedPVector, PClass, PMap, field, pmap

from pynct.algebra.cyclotomic import matrix_order
from pynct.algebra.matrix import IntMatrix
from pynct.tap import tap
from pynct.torus.forms import invariant_form_space
from pynct.torus.params import ParamMatrix
from pynct.torus.simplicity import is_nondegenerate, verify_witness
from pynct.torus.weyl import action_table
from pynct.utils import JsonSaveable
from pynct.validation import UsageError, VerificationFailure

FIXTURE_ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

GL3_NAMES = [
    "A2_1", "A2_2", "A2_3", "A2_4", "A2_5",
    "A3_1", "A3_2",
    "A4_1", "A4_2", "A4_3", "A4_4",
    "A6_1", "A6_2", "A6_3", "A6_4",
]

DIM4_NAMES = [
    "C_5", "C_8", "C_10", "C_12",
    "generic_5", "generic_8", "generic_10", "generic_12",
    "Theta_split", "Theta_5", "Theta_8",
    "B_5", "B_8",
    "A_5", "A_8", "A_10", "A_12",
]

FLIP = "A^2_5"


class CatalogEntry(PClass):
    """One fixture matrix.

    Attributes
    ----------
    name : str
        Display name, e.g. "A^3_2" or "Theta_5".
    matrix : IntMatrix or ParamMatrix
        The matrix.
    declared_order : Optional[int]
        The order of an integer matrix, checked at load.
    source : str
        Where the matrix comes from, stated in words.
    note : Optional[str]
        Free text about the entry, e.g. how an entry was read.

    """

    name = field(type=str, mandatory=True)
    matrix = field(type=(IntMatrix, ParamMatrix), mandatory=True)
    declared_order = field(initial=None)
    source = field(type=str, initial="")
    note = field(initial=None)

    def to_json(self) -> dict:
        """Return the JSON form used in the fixture files."""
        return {
            "name": self.name,
            "kind": "integer" if isinstance(self.matrix, IntMatrix) else "form",
            "declared_order": self.declared_order,
            "source": self.source,
            "note": self.note,
            "matrix": self.matrix.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> CatalogEntry:
        """Build an entry from its JSON form; the declared order is not checked here."""
        try:
            kind = data["kind"]
            cls = {"integer": IntMatrix, "form": ParamMatrix}[kind]
            return CatalogEntry(name=data["name"], matrix=cls.from_json(data["matrix"]),
                                declared_order=data.get("declared_order"), source=data.get("source", ""),
                                note=data.get("note"))
        except (KeyError, TypeError):
            raise UsageError.bad_format("fixture", "expected keys name, kind and matrix")


def _digest(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def verify_checksums(root: str = FIXTURE_ROOT):
    """Raise VerificationFailure if some fixture file does not match its recorded SHA-256 digest."""
    with open(os.path.join(root, "SHA256SUMS"), "r", encoding="utf-8") as f:
        lines = [line.split() for line in f if line.strip()]
    for digest, relpath in lines:
        path = os.path.join(root, relpath)
        if not os.path.exists(path):
            raise VerificationFailure.fixture(relpath, "file is missing")
        if _digest(path) != digest:
            raise VerificationFailure.fixture(relpath, "checksum mismatch")


def load_entry(path: str) -> CatalogEntry:
    """Load one fixture file and check its declared order."""
    with open(path, "r", encoding="utf-8") as f:
        entry = CatalogEntry.from_json(json.load(f))
    if entry.declared_order is not None:
        found = matrix_order(entry.matrix, cap=entry.declared_order)
        if found != entry.declared_order:
            raise VerificationFailure.fixture(
                entry.name, "declared order {d} but found {f}".format(d=entry.declared_order, f=found)
            )
    return entry


@lru_cache(maxsize=None)
def _load_group(root: str, group: str, names: tuple) -> PMap:
    verify_checksums(root)
    return pmap({n: load_entry(os.path.join(root, group, n + ".json")) for n in names})


def gl3_table(root: str = FIXTURE_ROOT) -> List[CatalogEntry]:
    """Return the finite-order elements of GL_3(Z), one per conjugacy class, ordered by order."""
    entries = _load_group(root, "gl3", tuple(GL3_NAMES))
    return [entries[n] for n in GL3_NAMES]


def four_torus_fixtures(root: str = FIXTURE_ROOT) -> PMap:
    """Return the dimension 4 fixtures keyed by file name, e.g. "C_5", "Theta_split", "A_12"."""
    return _load_group(root, "dim4", tuple(DIM4_NAMES))


def expected_action_tables(root: str = FIXTURE_ROOT) -> dict:
    """Return {n: [word, ...]}, the expected images of u_1 ... u_4 under A_n."""
    with open(os.path.join(root, "dim4", "action_tables.json"), "r", encoding="utf-8") as f:
        data = json.load(f)
    return {int(n): words for n, words in data["tables"].items()}


def _optional_tuple(v):
    return None if v is None else tuple(v)


class SurveyRow(PClass):
    """The invariant forms of one element of GL_3(Z).

    Attributes
    ----------
    name : str
        Name of the table entry.
    order : int
        Its order.
    dimension : int
        Dimension of its invariant-form space.
    nondegenerate : bool
        Verdict on the generic invariant form.
    witness : Optional[tuple]
        Witness of degeneracy of the generic form.
    basis_witnesses : tuple
        One witness per basis element of the space, or None where a basis element is nondegenerate.
    source : str
        Where the entry's matrix comes from.

    """

    name = field(type=str, mandatory=True)
    order = field(type=int, mandatory=True)
    dimension = field(type=int, mandatory=True)
    nondegenerate = field(type=bool, mandatory=True)
    witness = field(initial=None, factory=_optional_tuple)
    basis_witnesses = field(type=tuple, initial=(), factory=tuple)
    source = field(type=str, initial="")

    def to_json(self) -> dict:
        """Return the JSON form of the row."""
        return {
            "name": self.name,
            "order": self.order,
            "dimension": self.dimension,
            "nondegenerate": self.nondegenerate,
            "witness": None if self.witness is None else list(self.witness),
            "basis_witnesses": [None if w is None else list(w) for w in self.basis_witnesses],
            "source": self.source,
        }


class SurveyRows(CheckedPVector):
    """Rows of a survey in table order."""

    __type__ = SurveyRow


class Gl3Survey(JsonSaveable, PClass):
    """The invariant-form survey over the finite-order elements of GL_3(Z).

    The survey passes when the flip -I_3 is the only entry admitting a nondegenerate invariant form and every
    degeneracy is backed by a verified witness.
    """

    rows = field(type=SurveyRows, mandatory=True, factory=SurveyRows.create)
    problems = field(type=tuple, initial=(), factory=tuple)

    @property
    def passed(self) -> bool:
        """Return True if no problem was recorded."""
        return not self.problems

    def admitting_nondegenerate(self) -> List[str]:
        """Return the names of the entries whose generic invariant form is nondegenerate."""
        return [r.name for r in self.rows if r.nondegenerate]

    def to_frame(self) -> pd.DataFrame:
        """Return the rows as a DataFrame."""
        return pd.DataFrame([{
            "name": r.name,
            "order": r.order,
            "dim": r.dimension,
            "nondegenerate": r.nondegenerate,
            "witness": "-" if r.witness is None else str(list(r.witness)),
        } for r in self.rows])

    def to_json(self) -> dict:
        """Return the JSON form of the survey."""
        return {
            "passed": self.passed,
            "admitting_nondegenerate": self.admitting_nondegenerate(),
            "problems": list(self.problems),
            "rows": [r.to_json() for r in self.rows],
        }


def survey_entry(entry: CatalogEntry) -> SurveyRow:
    """Compute the invariant-form space of one table entry and test its basis and generic member."""
    space = invariant_form_space(entry.matrix)
    generic = is_nondegenerate(space.general_member())
    basis_witnesses = tuple(is_nondegenerate(ParamMatrix(b)).witness for b in space.basis)
    return SurveyRow(name=entry.name, order=entry.declared_order, dimension=space.dimension,
                     nondegenerate=generic.nondegenerate, witness=generic.witness,
                     basis_witnesses=basis_witnesses, source=entry.source)


def _row_problems(entry: CatalogEntry, row: SurveyRow) -> List[str]:
    out = []
    space = invariant_form_space(entry.matrix)
    if entry.name == FLIP:
        if row.dimension != 3 or not row.nondegenerate:
            out.append("{n}: the flip should admit a nondegenerate invariant form".format(n=entry.name))
        return out
    if row.nondegenerate:
        out.append("{n}: generic invariant form is nondegenerate".format(n=entry.name))
    elif not verify_witness(space.general_member(), row.witness):
        out.append("{n}: witness of the generic form does not verify".format(n=entry.name))
    for b, w in zip(space.basis, row.basis_witnesses):
        if w is None or not verify_witness(ParamMatrix(b), w):
            out.append("{n}: a basis form has no verified witness".format(n=entry.name))
    return out


@tap
def verify_3torus_theorem(root: str = FIXTURE_ROOT) -> Gl3Survey:
    """Check that among the finite-order elements of GL_3(Z) only the flip admits a nondegenerate invariant form."""
    rows, problems = [], []
    for entry in gl3_table(root):
        row = survey_entry(entry)
        rows.append(row)
        problems.extend(_row_problems(entry, row))
    return Gl3Survey(rows=rows, problems=problems)


class ActionTableCheck(PClass):
    """Rendered generator images for one n against the expected ones."""

    n = field(type=int, mandatory=True)
    expected = field(type=tuple, mandatory=True, factory=tuple)
    actual = field(type=tuple, mandatory=True, factory=tuple)

    @property
    def matches(self) -> bool:
        """Return True if every rendered image matches."""
        return self.expected == self.actual

    def to_json(self) -> dict:
        """Return the JSON form of the check."""
        return {"n": self.n, "matches": self.matches, "expected": list(self.expected), "actual": list(self.actual)}


class ActionTableChecks(CheckedPVector):
    """Checks ordered by n."""

    __type__ = ActionTableCheck


class ActionTableReport(JsonSaveable, PClass):
    """Phase-exact comparison of the actions of A_5, A_8, A_10 and A_12 on the torus of Theta_split."""

    checks = field(type=ActionTableChecks, mandatory=True, factory=ActionTableChecks.create)

    @property
    def passed(self) -> bool:
        """Return True if every table matches."""
        return all(c.matches for c in self.checks)

    def to_json(self) -> dict:
        """Return the JSON form of the report."""
        return {"passed": self.passed, "tables": [c.to_json() for c in self.checks]}


def rendered_action_table(n: int, root: str = FIXTURE_ROOT) -> List[str]:
    """Return the rendered images of u_1 ... u_4 under the action of A_n on the torus of Theta_split."""
    fixtures = four_torus_fixtures(root)
    key = "A_{n}".format(n=n)
    if key not in fixtures:
        raise UsageError("No conjugated generator A_{n} in the catalog; choose n in 5, 8, 10, 12.".format(n=n))
    return [w.render() for w in action_table(fixtures[key].matrix, fixtures["Theta_split"].matrix)]


@tap
def verify_action_tables(root: str = FIXTURE_ROOT) -> ActionTableReport:
    """Check the published images of the generators under the conjugated actions on the 4-torus.

    For n in 5, 8, 10, 12 the automorphism of the torus of Theta_split induced by A_n = B_n^-1 C_n B_n is
    computed with :func:`pynct.torus.weyl.action_table`. Each image u_j -> exp(pi i t) u^y is rendered as a
    word and compared verbatim, phase included, with the word recorded in ``dim4/action_tables.json``.

    Returns
    -------
    ActionTableReport
        One ``ActionTableCheck`` per order, passed only if all four images match.

    """
    checks = []
    for n, words in sorted(expected_action_tables(root).items()):
        checks.append(ActionTableCheck(n=n, expected=words, actual=rendered_action_table(n, root)))
    return ActionTableReport(checks=checks)


def conjugator_for(n: int) -> Optional[str]:
    """Return the fixture name of B_n, shared between n and 2n."""
    return {5: "B_5", 10: "B_5", 8: "B_8", 12: "B_8"}.get(n)


def form_for(n: int) -> Optional[str]:
    """Return the fixture name of Theta_n, shared between n and 2n."""
    return {5: "Theta_5", 10: "Theta_5", 8: "Theta_8", 12: "Theta_8"}.get(n)
