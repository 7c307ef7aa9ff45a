import pytest

_ACCEPTANCE: dict[str, tuple[str, float]] = {}


@pytest.fixture(autouse=True)
def _offline_cache(monkeypatch, tmp_path):
    # Never touch the network or the user's cache from the test suite.
    monkeypatch.setenv("EXCEPTIONAL_PRIMES_OFFLINE", "1")
    monkeypatch.setenv("EXCEPTIONAL_PRIMES_CACHE", str(tmp_path / "cache"))


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and "test_criterion_" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            name = report.nodeid.split("::")[-1]
            _ACCEPTANCE[name] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        status, dt = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{status}  {name}  ({dt:.2f}s)")
