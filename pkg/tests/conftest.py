import pytest

from sparsege.kernels import available_backends
from sparsege.sparsemat import SparseRow

ACCEPTANCE_LINES: list[str] = []


def row(width, entries):
    return SparseRow.from_dict(width, entries)


def dense_combo(r, u, a, b):
    """Dense oracle for ``a*r + b*u``, returned as a dict of nonzeros."""
    rd, ud = r.to_dense(), u.to_dense()
    return {j: a * x + b * y for j, (x, y) in enumerate(zip(rd, ud)) if a * x + b * y != 0}


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
