"""Command line front end of pynct.

Every subcommand prints a human readable result by default and a single JSON document with ``--json``. The JSON
document starts with ``schema``, ``command``, ``version`` and ``inputs``, followed by the keys of the result. It
only carries ``elapsed`` when ``--timing`` is given, so repeated runs on identical inputs are byte-identical.

Exit codes: 0 on success, 1 when a verification fails or a theorem hypothesis does not hold, 2 on usage errors and
exceeded search bounds. Diagnostics go to stderr.

"""
import argparse
import json
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from pyrsistent import PClass, field

from pynct import __version__
from pynct.algebra.cyclotomic import cyclotomic_companion, cyclotomic_poly, euler_phi, realizable_orders
from pynct.algebra.matrix import IntMatrix
from pynct.catalog import FIXTURE_ROOT, four_torus_fixtures, form_for, rendered_action_table, verify_3torus_theorem
from pynct.config import DEFAULT_CONFIG, ToolkitConfig
from pynct.tap import set_log_dir, set_verbosity
from pynct.torus.forms import canonical_nondegenerate_seed, companion_form_space, invariant_form_space
from pynct.torus.ktheory import SCHEMA, af_verdict, partition_search, s1
from pynct.torus.params import ParamMatrix
from pynct.torus.simplicity import fixed_vector, is_nondegenerate
from pynct.torus.weyl import action_table
from pynct.utils import dumps_stable
from pynct.validation import SearchBoundExceeded, ToolkitError, UsageError
from pynct.verify import all_passed, checks_frame, run_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# (text, result, exit code) returned by the command handlers.
Outcome = Tuple[str, Dict, int]


class RunReport(PClass):
    """The machine-readable record of one command run."""

    command = field(type=str, mandatory=True)
    inputs = field(mandatory=True)
    outputs = field(mandatory=True)
    elapsed = field(initial=None)
    version = field(type=str, initial=__version__)

    def to_json(self) -> dict:
        """Return the flat JSON document printed by ``--json``."""
        out = {"schema": SCHEMA, "command": self.command, "version": self.version, "inputs": dict(self.inputs)}
        for k, v in self.outputs.items():
            if k != "schema":
                out[k] = v
        if self.elapsed is not None:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _read_json(path: str, what: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise UsageError("Cannot read {w} file {p}: {e}".format(w=what, p=path, e=e.strerror))
    except json.JSONDecodeError as e:
        raise UsageError.bad_format(what, "{p} is not JSON ({e})".format(p=path, e=e))
    # Catalog fixtures wrap the matrix.
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    return data


def read_matrix(path: str) -> IntMatrix:
    """Read an integer matrix file."""
    return IntMatrix.from_json(_read_json(path, "matrix"))


def read_form(path: str) -> ParamMatrix:
    """Read a skew form file. Entries are rational strings or parametrized scalars."""
    return ParamMatrix.from_json(_read_json(path, "form"))


def _cyclotomic(args, config) -> Outcome:
    p = cyclotomic_poly(args.n)
    return "Phi_{n}(x) = {p}".format(n=args.n, p=p), {"n": args.n, "poly": p.to_json()}, EXIT_OK


def _companion(args, config) -> Outcome:
    C = cyclotomic_companion(args.n)
    return C.pretty_str(), {"n": args.n, "matrix": C.to_json()}, EXIT_OK


def _phi(args, config) -> Outcome:
    value = euler_phi(args.n)
    return "phi({n}) = {v}".format(n=args.n, v=value), {"n": args.n, "phi": value}, EXIT_OK


def _invariant_space(args, config) -> Outcome:
    if args.cyclotomic is not None:
        space = companion_form_space(args.cyclotomic)
    else:
        space = invariant_form_space(read_matrix(args.matrix))
    text = "dimension {k}\n{m}".format(k=space.dimension, m=space.general_member().pretty_str())
    return text, space.to_json(), EXIT_OK


def _nondegenerate(args, config) -> Outcome:
    verdict = is_nondegenerate(read_form(args.form))
    if verdict.nondegenerate:
        text = "nondegenerate"
    else:
        text = "degenerate, witness {w}".format(w=list(verdict.witness))
    return text, verdict.to_json(), EXIT_OK


def _free_check(args, config) -> Outcome:
    A = read_matrix(args.matrix)
    found = fixed_vector(A, args.order)
    if found is None:
        return "free outside the origin", {"free": True, "fixed": None}, EXIT_OK
    k, x = found
    text = "not free: A^{k} fixes {x}".format(k=k, x=list(x))
    return text, {"free": False, "fixed": {"power": k, "vector": list(x)}}, EXIT_OK


def _k1(args, config) -> Outcome:
    report = s1(args.n, config)
    frame = pd.DataFrame([{"degree": r.degree, "rank": r.rank, "methods": ", ".join(r.methods)}
                          for r in report.per_degree])
    text = "{t}\n\nn={n} d={d} s1={s} {af}".format(t=frame.to_string(index=False), n=report.n, d=report.d,
                                                   s=report.s1, af=report.af)
    return text, report.to_json(), EXIT_OK


def _af_verdict(args, config) -> Outcome:
    Theta = read_form(args.form) if args.form else None
    report = af_verdict(args.n, Theta, config)
    text = "\n".join(["{af} for n={n}".format(af=report.af, n=args.n)] +
                     ["  " + line for line in report.justification()])
    return text, report.to_json(), EXIT_OK


def _partition(args, config) -> Outcome:
    cert = partition_search(args.n, config)
    if cert is None:
        return "no partition for n={n}".format(n=args.n), {"n": args.n, "found": False, "certificate": None}, EXIT_OK
    text = "I = {i}\nJ = {j}".format(i=list(cert.I), j=list(cert.J))
    return text, {"n": args.n, "found": True, "certificate": cert.to_json()}, EXIT_OK


def _action(args, config) -> Outcome:
    if args.conjugated:
        words = rendered_action_table(args.n)
        form = "Theta_split"
        result = {"n": args.n, "conjugated": True, "form": form, "words": words}
    else:
        name = form_for(args.n)
        if name is not None:
            Theta = four_torus_fixtures(FIXTURE_ROOT)[name].matrix
        else:
            name, Theta = "seed", canonical_nondegenerate_seed(args.n)
        table = action_table(cyclotomic_companion(args.n), Theta)
        words = [w.render() for w in table]
        result = {"n": args.n, "conjugated": False, "form": name, "words": words}
    lines = ["u{k} -> {w}".format(k=k, w=w) for k, w in enumerate(words, start=1)]
    return "\n".join(lines), result, EXIT_OK


def _gl3_survey(args, config) -> Outcome:
    survey = verify_3torus_theorem()
    text = survey.to_frame().to_string(index=False)
    if survey.problems:
        text += "\n\n" + "\n".join(survey.problems)
    return text, survey.to_json(), EXIT_OK if survey.passed else EXIT_FAILED


def _verify(args, config) -> Outcome:
    checks = run_checks(config, seed=args.seed, trials=args.trials)
    passed = all_passed(checks)
    text = checks_frame(checks).to_string(index=False)
    result = {"passed": passed, "checks": [c.to_json() for c in checks]}
    return text, result, EXIT_OK if passed else EXIT_FAILED


def _realizable(args, config) -> Outcome:
    orders = realizable_orders(args.n)
    return " ".join(str(m) for m in orders), {"n": args.n, "orders": orders}, EXIT_OK


COMMANDS: Dict[str, Callable] = {
    "cyclotomic": _cyclotomic,
    "companion": _companion,
    "phi": _phi,
    "invariant-space": _invariant_space,
    "nondegenerate": _nondegenerate,
    "free-check": _free_check,
    "k1": _k1,
    "af-verdict": _af_verdict,
    "partition": _partition,
    "action": _action,
    "gl3-survey": _gl3_survey,
    "verify": _verify,
    "verify-paper": _verify,
    "realizable": _realizable,
}


def _inputs(args) -> dict:
    skip = {"command", "json", "verbose", "log_dir", "timing", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print one JSON document instead of text.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Print progress to stderr.")
    common.add_argument("--log-dir", default=None, help="Append check results as JSON lines under this directory.")
    common.add_argument("--timing", action="store_true", help="Add the elapsed time to the JSON output.")
    common.add_argument("-j", "--jobs", type=int, default=1, help="Worker processes for fixed ranks.")

    parser = argparse.ArgumentParser(prog="pynct",
                                     description="Exact computations for cyclic symmetries of noncommutative tori.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name: str, help: str, aliases: Sequence[str] = ()) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common], aliases=list(aliases))

    add("cyclotomic", "Print the cyclotomic polynomial Phi_n.").add_argument("n", type=int)
    add("companion", "Print the companion matrix C_n of Phi_n.").add_argument("n", type=int)
    add("phi", "Print Euler's totient.").add_argument("n", type=int)

    p = add("invariant-space", "Print the space of skew forms invariant under a matrix.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--cyclotomic", type=int, metavar="N", help="Use the companion matrix C_N.")
    source.add_argument("--matrix", metavar="FILE", help="Read the matrix from a JSON file.")

    add("nondegenerate", "Decide whether a skew form is nondegenerate.").add_argument(
        "--form", required=True, metavar="FILE")

    p = add("free-check", "Decide whether a finite-order matrix acts freely outside the origin.")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--order", required=True, type=int)

    add("k1", "Compute the fixed ranks and the rank s1 of K_1 for C_n.").add_argument("n", type=int)

    p = add("af-verdict", "Decide the AF criterion for the crossed product by C_n.")
    p.add_argument("n", type=int)
    p.add_argument("--form", metavar="FILE", help="Invariant form; defaults to the canonical seed.")

    add("partition", "Search for a partition certificate for odd n.").add_argument("n", type=int)

    p = add("action", "Print the images of the generators under the action of C_n or A_n.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--conjugated", action="store_true", help="Use A_n acting on Theta_split.")

    add("gl3-survey", "Survey the invariant forms of the finite-order elements of GL_3(Z).")

    p = add("verify", "Run the full verification suite.", aliases=["verify-paper"])
    p.add_argument("--seed", type=int, default=0, help="Seed of the randomized property checks.")
    p.add_argument("--trials", type=int, default=100, help="Random instances per property check.")

    add("realizable", "List the orders of finite-order elements of GL_n(Z).").add_argument("n", type=int)
    return parser


def _exit_code(e: ToolkitError) -> int:
    if isinstance(e, (UsageError, SearchBoundExceeded)):
        return EXIT_USAGE
    return EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    set_verbosity(args.verbose)
    if args.log_dir:
        set_log_dir(args.log_dir)
    try:
        config: ToolkitConfig = DEFAULT_CONFIG.set(parallelism=max(1, args.jobs))
        start = time.perf_counter()
        text, result, code = COMMANDS[args.command](args, config)
        elapsed = time.perf_counter() - start
    except ToolkitError as e:
        print("error: {e}".format(e=e), file=sys.stderr)
        return _exit_code(e)
    if args.json:
        report = RunReport(command=args.command, inputs=_inputs(args), outputs=result,
                           elapsed=elapsed if args.timing else None)
        print(dumps_stable(report.to_json()))
    else:
        print(text)
    return code


def run():
    """Console script entry point."""
    sys.exit(main())
