import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# lines registered by test_acceptance, echoed at the end of the run
CRITERIA: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.rstrip("abcdefgh")), k)):
        terminalreporter.write_line(CRITERIA[key])
