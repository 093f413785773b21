import pytest

from alg2.corpus import generate_corpus

_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus()


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion for the terminal summary."""

    def record(number: int, title: str, ok: bool) -> bool:
        _CRITERIA[number] = (title, ok)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        title, ok = _CRITERIA.get(n, ("did not complete", False))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {title}")
