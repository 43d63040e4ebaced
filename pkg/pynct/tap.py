"""The ``Tap`` and ``TapManager`` abstractions allow for users to inject side effects into pynct computations.

These side effects could be progress messages, writing to log files, or recording check results when certain
computations finish. A ``Tap`` can inject a side effect before a function call, after a function call, or both.
Any function or method defined in pynct or your application code can be tapped with the ``@tap`` decorator
defined in the module.

All messages produced by the taps in this module go to stderr, so that stdout only carries command results.

"""
import inspect
import os
import sys
import time
from abc import ABC
from datetime import datetime
from functools import wraps
from typing import Dict, MutableMapping, Optional, Tuple

from pynct.utils import dumps_stable


def _err(line: str):
    print(line, file=sys.stderr)


class Tap(ABC):
    """A logging abstraction around a function that sees its arguments and its returned value.

    The methods of a ``Tap`` should be side effects. It is not recommended to make state changes from a ``Tap`` if
    that state will change code behavior.
    """

    def pre(self, id: str, args: Tuple, kwargs: Dict):
        """Perform a particular side-effect directly before the associated function/method is called.

        Parameters
        ----------
        id : str
            The ID of the tap, generated from the module and qualified name of the function.
        args : Tuple
            The positional args of the function call. For methods, ``args[0]`` is the class instance.
        kwargs : Dict
            The keyword args of the function call.

        """
        pass

    def post(self, id: str, args: Tuple, kwargs: Dict, returned):
        """Perform a particular side-effect directly after the associated function/method returns.

        Parameters
        ----------
        id : str
            The ID of the tap, generated from the module and qualified name of the function.
        args : Tuple
            The positional args of the function call. For methods, ``args[0]`` is the class instance.
        kwargs : Dict
            The keyword args of the function call.
        returned : Any
            The returned value of the function call.

        """
        pass


class LogFileTap(Tap):
    """A ``Tap`` for writing timestamped log lines.

    Parameters
    ----------
    root : str
        The root directory for putting log files (and directories).

    """

    def __init__(self, root: str):
        self.root = root

    def dir(self, id: str) -> str:
        """Generate the directory for log files associated with the given function ID."""
        return os.path.join(self.root, id.replace(".", os.path.sep))

    def path(self, id: str, filename: str) -> str:
        """Generate the path for the log file with the given name under the directory for the given function ID."""
        return os.path.join(self.dir(id), filename)

    def log(self, id: str, filename: str, line: str):
        """Append a line, prefixed with a timestamp, to a log file."""
        path = self.path(id, filename)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "a") as f:
            f.write(str(datetime.now()))
            f.write("\t")
            f.write(line)
            f.write("\n")


class JsonLinesTap(LogFileTap):
    """A ``Tap`` that appends the JSON form of every returned value to a JSON lines file.

    Returned values without a ``to_json`` method are ignored.

    Parameters
    ----------
    root : str
        The root directory for putting log files (and directories).
    filename : str, optional
        Name of the JSON lines file. Default "results.jsonl".

    """

    def __init__(self, root: str, filename: str = "results.jsonl"):
        super().__init__(root)
        self.filename = filename

    def log(self, id: str, filename: str, row: Dict):
        """Write a JSON object to one line of a JSON lines file."""
        path = self.path(id, filename)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "a") as f:
            f.write(dumps_stable(row))
            f.write("\n")

    def post(self, id: str, args, kwargs, returned):
        """Log the returned value."""
        if hasattr(returned, "to_json"):
            self.log(id, self.filename, returned.to_json())


class StdErrDegreeTap(Tap):
    """A ``Tap`` that prints each per-degree fixed rank and the methods that produced it."""

    def post(self, id: str, args, kwargs, returned):
        """Print one line per computed degree."""
        print_line = "degree {l}: rank {r} ({m})".format(
            l=returned.degree, r=returned.rank, m=", ".join(returned.methods)
        )
        _err(print_line)


class StdErrPartitionTap(Tap):
    """A ``Tap`` that prints the outcome of a partition search."""

    def pre(self, id: str, args, kwargs):
        """Print the order being searched."""
        _err("Searching partitions for n={n}.".format(n=args[0] if args else kwargs.get("n")))

    def post(self, id: str, args, kwargs, returned):
        """Print the certificate found, if any."""
        if returned is None:
            _err("No partition exists.")
        else:
            _err("Found partition I={i} J={j}.".format(i=list(returned.I), j=list(returned.J)))


class StdErrCheckTap(Tap):
    """A ``Tap`` that prints PASS/FAIL and timing for each verification check."""

    def __init__(self):
        self._started = []

    def pre(self, id: str, args, kwargs):
        """Start the clock."""
        self._started.append(time.perf_counter())

    def post(self, id: str, args, kwargs, returned):
        """Print the check status and how long it took."""
        elapsed = time.perf_counter() - self._started.pop() if self._started else 0.0
        _err("{s:4} {n} ({t:.3f}s)".format(s="PASS" if returned.passed else "FAIL", n=returned.name, t=elapsed))


class StdErrRunTap(Tap):
    """A ``Tap`` that prints a banner and a summary around a whole verification suite."""

    def pre(self, id: str, args, kwargs):
        """Print the start banner."""
        _err("========================================")
        _err("Start Verification")
        _err("========================================")

    def post(self, id: str, args, kwargs, returned):
        """Print how many checks passed."""
        passed = sum(1 for c in returned if c.passed)
        _err("========================================")
        _err("End Verification: {p}/{n} checks passed.".format(p=passed, n=len(returned)))
        _err("========================================")


class CompositeTap(Tap):
    """A ``Tap`` that forwards to several taps in registration order."""

    def __init__(self, *taps: Tap):
        self.taps = list(taps)

    def pre(self, id: str, args, kwargs):
        """Call ``pre`` on every tap."""
        for t in self.taps:
            t.pre(id, args, kwargs)

    def post(self, id: str, args, kwargs, returned):
        """Call ``post`` on every tap."""
        for t in self.taps:
            t.post(id, args, kwargs, returned)


class TapManager:
    """Stores a mapping of function ID to ``Tap`` object than can be used to inject side effects around functions.

    The ``TapManger`` class is treated as a singleton and should not be instanced. Its methods are static and the state
    they manage is shared between all usages of ``Taps``.

    Function IDs are a fully qualified identifier for a function. They are generated as the concatenation
    of the module name the function is defined in (ie. ``pynct.torus.ktheory``) and the qualified name of the
    function definition (ie. ``s1``). The final function ID would be ``pynct.torus.ktheory.s1``.

    """

    _taps: MutableMapping[str, Tap] = {}

    @staticmethod
    def register(id: str, tap: Tap):
        """Register a ``Tap`` to be performed when the function with the associated ID is called."""
        TapManager._taps[id] = tap

    @staticmethod
    def unregister(id: str):
        """Unregister the ``Tap`` associated with given ID."""
        if id in TapManager._taps:
            del TapManager._taps[id]

    @staticmethod
    def clear():
        """Unregister every ``Tap``."""
        TapManager._taps.clear()

    @staticmethod
    def get(id: str) -> Optional[Tap]:
        """Return the ``Tap`` associated with given ID or ``None`` if no tap is registered."""
        return TapManager._taps.get(id)


def tap(fn):
    """Decorate a function/method to call any associated taps that have been registered in the ``TapManager``.

    Functional behavior is not changed.

    """
    fn_id = inspect.getmodule(fn).__name__ + "." + fn.__qualname__

    @wraps(fn)
    def tapped(*args, **kwargs):
        tap = TapManager.get(fn_id)
        if tap is not None:
            tap.pre(fn_id, args, kwargs)
        result = fn(*args, **kwargs)
        if tap is not None:
            tap.post(fn_id, args, kwargs, result)
        return result

    tapped.tap_id = fn_id
    return tapped


CHECK_ID = "pynct.verify.run_check"
SUITE_ID = "pynct.verify.run_checks"
DEGREE_ID = "pynct.torus.ktheory.fixed_rank_report"
PARTITION_ID = "pynct.torus.ktheory.partition_search"


def set_verbosity(level: int):
    """Register some ``Tap`` objects in the ``TapManger`` that print to stderr.

    Verbosity level 0 prints nothing.

    Verbosity level 1 prints a banner around verification runs and one line per check.

    Verbosity level 2+ also prints every per-degree fixed rank and the outcome of partition searches.

    """
    for id in (CHECK_ID, SUITE_ID, DEGREE_ID, PARTITION_ID):
        TapManager.unregister(id)
    if level > 0:
        TapManager.register(CHECK_ID, StdErrCheckTap())
        TapManager.register(SUITE_ID, StdErrRunTap())
    if level > 1:
        TapManager.register(DEGREE_ID, StdErrDegreeTap())
        TapManager.register(PARTITION_ID, StdErrPartitionTap())


def set_log_dir(root: str):
    """Register ``JsonLinesTap`` objects that append every check result under ``root``."""
    existing = TapManager.get(CHECK_ID)
    logger = JsonLinesTap(root)
    TapManager.register(CHECK_ID, logger if existing is None else CompositeTap(existing, logger))
