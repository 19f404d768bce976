import numpy as np
import pytest

from graphbell.graph import Graph

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
LETTER_MATRIX = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


def kron_matrix(p) -> np.ndarray:
    """Independent dense oracle: Kronecker product of 2x2 letter matrices.

    Qubit 1 is the least significant basis bit, so it is the last factor.
    """
    m = np.eye(1, dtype=complex)
    for letter in p.letters:
        m = np.kron(LETTER_MATRIX[letter], m)
    return (1j ** p.phase) * m


def kron_sum(s) -> np.ndarray:
    m = np.zeros((1 << s.n, 1 << s.n), dtype=complex)
    for c, p in s:
        m += c * kron_matrix(p)
    return m


def random_graph(rng, n, p=0.5, connected=False) -> Graph:
    while True:
        edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if not connected or g.is_connected():
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion
# ---------------------------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    tag, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[tag] = (title, report.passed)


def _sort_key(tag):
    digits = "".join(ch for ch in tag if ch.isdigit())
    return int(digits), tag


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_CRITERIA, key=_sort_key):
        title, ok = _CRITERIA[tag]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {tag}: {title}")

