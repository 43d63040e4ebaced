import pytest

from pynct.validation import UsageError
from pynct.verify import CLAIMS, CRITERION_LEVEL, EXACT, VerificationCheck, all_passed, checks_frame, run_check, run_checks


@pytest.fixture(scope="module")
def checks():
    return run_checks(trials=10)


def test_suite_passes(checks):
    failed = [(c.name, c.details) for c in checks if not c.passed]
    assert failed == []
    assert all_passed(checks)


def test_suite_layout(checks):
    names = [c.name for c in checks]
    assert len(names) == 20
    assert len(set(names)) == 20
    assert sorted({c.criterion for c in checks}) == list(range(1, 11))
    assert [c.name for c in checks if c.level == CRITERION_LEVEL] == [
        "af-prime-3", "af-prime-5", "af-prime-7", "af-order-8"
    ]


def test_every_check_names_its_claim(checks):
    assert all(c.reference for c in checks)
    assert [c.reference for c in checks] == [CLAIMS[c.name] for c in checks]
    assert set(CLAIMS) == {c.name for c in checks}


def test_frame(checks):
    frame = checks_frame(checks)
    assert list(frame.columns) == ["criterion", "check", "level", "status", "reference", "details"]
    assert (frame["status"] == "PASS").all()
    assert frame["check"].iloc[0] == "cyclotomic-closed-forms"


def test_errors_are_recorded():
    def failing():
        raise UsageError.not_prime(9)

    check = run_check("failing", 1, "errors", failing)
    assert not check.passed
    assert check.details == "UsageError: Expected an odd prime, got 9."
    assert check.level == EXACT


def test_other_errors_propagate():
    with pytest.raises(ZeroDivisionError):
        run_check("broken", 1, "errors", lambda: 1 / 0)


def test_check_json():
    check = run_check("ok", 2, "topic", lambda: (True, "fine"), CRITERION_LEVEL)
    assert check.to_json() == {
        "name": "ok", "criterion": 2, "topic": "topic", "reference": "", "level": CRITERION_LEVEL, "passed": True,
        "details": "fine"
    }
    assert check == VerificationCheck(name="ok", criterion=2, topic="topic", level=CRITERION_LEVEL, passed=True,
                                      details="fine")


def test_reference_is_recorded():
    check = run_check("ok", 1, "topic", lambda: (True, ""), reference="C_n has order n")
    assert check.reference == "C_n has order n"
    assert check.to_json()["reference"] == "C_n has order n"
