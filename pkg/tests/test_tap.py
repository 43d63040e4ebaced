import json
import os

import pytest

from pynct.algebra.cyclotomic import cyclotomic_companion
from pynct.tap import (
    CHECK_ID, DEGREE_ID, PARTITION_ID, SUITE_ID, CompositeTap, JsonLinesTap, StdErrCheckTap, StdErrRunTap, Tap,
    TapManager, set_log_dir, set_verbosity, tap
)
from pynct.torus.ktheory import fixed_rank_report, partition_search
from pynct.verify import VerificationCheck, run_check, run_checks

pytestmark = pytest.mark.usefixtures("clear_taps")


class RecordingTap(Tap):

    def __init__(self):
        self.calls = []

    def pre(self, id, args, kwargs):
        self.calls.append(("pre", id, args))

    def post(self, id, args, kwargs, returned):
        self.calls.append(("post", id, returned))


@tap
def double(x):
    return 2 * x


def test_tap_ids():
    assert double.tap_id == "tests.test_tap.double"
    assert run_check.tap_id == CHECK_ID
    assert run_checks.tap_id == SUITE_ID
    assert fixed_rank_report.tap_id == DEGREE_ID
    assert partition_search.tap_id == PARTITION_ID


def test_register_and_unregister():
    recorder = RecordingTap()
    TapManager.register(double.tap_id, recorder)
    assert double(4) == 8
    assert recorder.calls == [("pre", double.tap_id, (4,)), ("post", double.tap_id, 8)]
    TapManager.unregister(double.tap_id)
    assert TapManager.get(double.tap_id) is None
    double(5)
    assert len(recorder.calls) == 2


def test_composite_order():
    first, second = RecordingTap(), RecordingTap()
    TapManager.register(double.tap_id, CompositeTap(first, second))
    double(1)
    assert first.calls == second.calls
    assert len(first.calls) == 2


def test_verbosity_levels():
    set_verbosity(0)
    assert TapManager.get(CHECK_ID) is None
    set_verbosity(1)
    assert isinstance(TapManager.get(CHECK_ID), StdErrCheckTap)
    assert isinstance(TapManager.get(SUITE_ID), StdErrRunTap)
    assert TapManager.get(DEGREE_ID) is None
    set_verbosity(2)
    assert TapManager.get(DEGREE_ID) is not None
    assert TapManager.get(PARTITION_ID) is not None
    set_verbosity(0)
    assert TapManager.get(SUITE_ID) is None


def test_check_lines(capsys):
    set_verbosity(1)
    run_check("ok", 1, "topic", lambda: (True, ""))
    run_check("bad", 1, "topic", lambda: (False, ""))
    captured = capsys.readouterr()
    assert captured.out == ""
    lines = captured.err.splitlines()
    assert lines[0].startswith("PASS ok (")
    assert lines[1].startswith("FAIL bad (")


def test_degree_and_partition_lines(capsys):
    set_verbosity(2)
    fixed_rank_report(cyclotomic_companion(5), 5, 2)
    partition_search(7)
    partition_search(9)
    assert capsys.readouterr().err.splitlines() == [
        "degree 2: rank 2 (trace, kernel-exact)",
        "Searching partitions for n=7.",
        "Found partition I=[1, 2, 4] J=[3, 5, 6].",
        "Searching partitions for n=9.",
        "No partition exists.",
    ]


def test_run_summary(capsys):
    checks = [VerificationCheck(name=n, criterion=1, topic="t", passed=p) for n, p in (("a", True), ("b", False))]
    StdErrRunTap().post(SUITE_ID, (), {}, checks)
    assert "End Verification: 1/2 checks passed." in capsys.readouterr().err


def test_log_dir(tmp_path):
    root = str(tmp_path)
    set_log_dir(root)
    assert isinstance(TapManager.get(CHECK_ID), JsonLinesTap)
    run_check("ok", 3, "topic", lambda: (True, "fine"))
    path = os.path.join(root, "pynct", "verify", "run_check", "results.jsonl")
    with open(path) as f:
        rows = [json.loads(line) for line in f]
    assert rows == [{"name": "ok", "criterion": 3, "topic": "topic", "reference": "", "level": "exact", "passed": True,
                     "details": "fine"}]


def test_log_dir_keeps_verbosity(tmp_path, capsys):
    set_verbosity(1)
    set_log_dir(str(tmp_path))
    assert isinstance(TapManager.get(CHECK_ID), CompositeTap)
    run_check("ok", 1, "topic", lambda: (True, ""))
    assert capsys.readouterr().err.startswith("PASS ok")
