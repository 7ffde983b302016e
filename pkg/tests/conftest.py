import pytest


@pytest.fixture(scope="session")
def suite_reports():
    from test_acceptance import run_suite_once

    return run_suite_once()


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.RESULTS[n])
