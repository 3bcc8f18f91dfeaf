from helpers import ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title, secs = ACCEPTANCE[n]
        terminalreporter.write_line("%s  criterion %2d  %s  (%.1f s)" % (status, n, title, secs))
