import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from heckecells.hecke import AlgebraContext  # noqa: E402


@lru_cache(maxsize=None)
def ctx_for(cartan_type: str, n: int = 1, eps: str = "id") -> AlgebraContext:
    """Contexts are expensive-ish and immutable, share them across tests."""
    return AlgebraContext.build(cartan_type, n, eps)


@pytest.fixture
def get_ctx():
    return ctx_for


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
