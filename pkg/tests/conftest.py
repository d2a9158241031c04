import re

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def register_criterion(num: int, title: str):
    """Decorator used in test_acceptance.py so the terminal summary can print
    one pass/fail line per acceptance criterion."""

    def wrap(fn):
        fn._criterion = (num, title)
        return fn

    return wrap


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_acceptance\.py::test_c(\d+)", report.nodeid)
    if m:
        _ACCEPTANCE[m.group(1)] = (report.outcome, report.nodeid)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    tw = terminalreporter
    tw.ensure_newline()
    tw.section("acceptance criteria", sep="=")
    for num in sorted(_ACCEPTANCE, key=int):
        outcome, nodeid = _ACCEPTANCE[num]
        word = "PASS" if outcome == "passed" else outcome.upper()
        marker = {"PASS": "green"} .get(word, "red")
        tw.write_line(f"criterion {int(num):2d}: {word}   ({nodeid.split('::')[-1]})", **{marker: True})
