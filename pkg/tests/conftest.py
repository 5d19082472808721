import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from invhoch import GF, QQ  # noqa: E402

FIELDS = [QQ, GF(2), GF(3)]


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(acceptance_log.LINES):
            terminalreporter.write_line(acceptance_log.LINES[n])
