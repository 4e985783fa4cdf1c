import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance scoreboard after the test report.

    The acceptance tests print their PASS/FAIL lines as they run, but
    pytest captures stdout of passing tests; collecting the lines and
    writing them here keeps the scoreboard visible in every run mode.
    """
    for name, mod in sys.modules.items():
        if name.rpartition(".")[2] == "test_acceptance":
            lines = getattr(mod, "SCOREBOARD", None)
            if lines:
                terminalreporter.write_sep("=", "acceptance scoreboard")
                for line in lines:
                    terminalreporter.write_line(line)
            break
