import pytest

ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance_log(request):
    """Record one summary line per acceptance criterion."""
    results = request.config.stash[ACCEPTANCE_KEY]

    def log(number, title, passed, detail=""):
        results[number] = (title, passed, detail)
    return log


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, detail = results[number]
        status = "PASS" if passed else "FAIL"
        line = f"ACCEPTANCE {number:2d} {status}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
