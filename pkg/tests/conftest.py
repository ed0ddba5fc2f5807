import re

from hypothesis import settings

settings.register_profile("suite", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("suite")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Recap the acceptance checklist with one PASS/FAIL line per criterion."""
    rows = {}
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, ()):
            if getattr(report, "when", "call") != "call":
                continue
            match = _CRITERION.search(report.nodeid)
            if match:
                name = report.nodeid.split("::")[-1]
                rows[int(match.group(1))] = (name, outcome == "passed")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(rows):
        name, ok = rows[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
