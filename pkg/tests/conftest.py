import contextlib
import io
import sys

import pytest
from hypothesis import settings

import _acceptance_log

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance_log.LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process; returns (exit code, stdout text)."""
    from turanpack.cli import main

    def run(argv, stdin=None):
        out = io.StringIO()
        old_stdin = sys.stdin
        if stdin is not None:
            sys.stdin = io.StringIO(stdin)
        try:
            with contextlib.redirect_stdout(out):
                code = main(argv)
        finally:
            sys.stdin = old_stdin
        return code, out.getvalue()

    return run
