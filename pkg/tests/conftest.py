import numpy as np
import pytest

from graphmorse.relation import RelationMatrix

WORKED_W = [[0, 0.8, 0.3], [0.5, 0, 0.7], [0.2, 0.6, 0]]

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def worked_w():
    return RelationMatrix(WORKED_W)


def random_corpus(count=200, seed=2024, sizes=(2, 8)):
    """Seeded matrices; a third are rounded to one decimal so ties are common."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(sizes[0], sizes[1] + 1))
        W = rng.uniform(0, 1, size=(n, n))
        if k % 3 == 0:
            W = np.round(W, 1)
        elif k % 3 == 1:
            W = np.round(W, 2)
        np.fill_diagonal(W, 0)
        out.append(RelationMatrix(W))
    return out


@pytest.fixture
def criterion():
    def record(label: str, ok: bool, detail: str = ""):
        _criteria.append((label, ok, detail))
        assert ok, f"{label}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _criteria:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
