import itertools
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from magflow.lie_core import validate_algebra

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def g7():
    return validate_algebra("g7", 4, {(1, 4): {4: 1}, (2, 4): {4: 1}})


@pytest.fixture
def so3():
    return validate_algebra("so3", 3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})


@pytest.fixture
def heisenberg():
    return validate_algebra("heis", 3, {(1, 2): {3: 1}})


def structure_tensor(alg):
    """Dense float C[a, b, c] rebuilt from the bracket table (test-side copy)."""
    n = alg.dim
    C = np.zeros((n, n, n))
    for (a, b), terms in alg.table().items():
        for c, v in terms.items():
            C[a - 1, b - 1, c - 1] = float(v)
            C[b - 1, a - 1, c - 1] = -float(v)
    return C


def grid_max_rank(alg, F=None, span=2):
    """Brute-force max rank of F + sum_c C^c lam_c over an integer grid."""
    C = structure_tensor(alg)
    n = alg.dim
    base = np.zeros((n, n)) if F is None else np.array([[float(x) for x in r] for r in F.matrix()])
    best = 0
    for lam in itertools.product(range(-span, span + 1), repeat=n):
        best = max(best, np.linalg.matrix_rank(base + C @ np.array(lam, float)))
    return best


def fr(x):
    return Fraction(x)


# acceptance results collected for the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {title}: {detail}")
