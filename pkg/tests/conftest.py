import pytest

_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_KEY] = []


@pytest.fixture
def acceptance_report(request):
    """Append one summary line per acceptance criterion."""
    return request.config.stash[_KEY].append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
