import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import grid_max_rank, structure_tensor
from magflow.cohomology import (
    TwoCochain,
    cocycle_basis,
    cocycle_equations,
    cohomology_index,
    cohomology_report,
    coboundary_space,
    is_cocycle,
    is_integrable,
    kernel,
    pair_order,
    rank_of,
    require_cocycle,
    trivial_cocycle,
)
from magflow.errors import DimensionMismatch, NotACocycle
from magflow.lie_core import validate_algebra


def numeric_z2_b2(alg):
    """dim Z^2 and dim B^2 from dense float linear algebra, built independently."""
    n = alg.dim
    C = structure_tensor(alg)
    pairs = list(itertools.combinations(range(n), 2))
    rows = []
    for a, b, c in itertools.combinations(range(n), 3):
        row = np.zeros(len(pairs))
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for d in range(n):
                coef = C[x, y, d]
                if coef == 0 or d == z:
                    continue
                i, j = (z, d) if z < d else (d, z)
                row[pairs.index((i, j))] += coef if z < d else -coef
        rows.append(row)
    M = np.array(rows) if rows else np.zeros((0, len(pairs)))
    z2 = len(pairs) - (np.linalg.matrix_rank(M) if len(rows) else 0)
    B = np.array([[C[i, j, c] for (i, j) in pairs] for c in range(n)])
    return z2, np.linalg.matrix_rank(B)


def test_g7_cohomology(g7):
    rep = cohomology_report(g7)
    assert (rep.dim_Z2, rep.dim_B2, rep.dim_H2) == (4, 1, 3)
    assert numeric_z2_b2(g7) == (4, 1)


def test_g7_basis_is_canonical(g7):
    assert [str(F) for F in cocycle_basis(g7)] == ["e1^e2", "e1^e3", "e1^e4 + e2^e4", "e2^e3"]
    assert [str(F) for F in coboundary_space(g7)] == ["e1^e4 + e2^e4"]


def test_semisimple_h2_vanishes(so3):
    rep = cohomology_report(so3)
    assert rep.dim_H2 == 0 and rep.dim_Z2 == 3


def test_abelian_everything_closed():
    alg = validate_algebra("ab", 4, {})
    rep = cohomology_report(alg)
    assert (rep.dim_Z2, rep.dim_B2, rep.dim_H2) == (6, 0, 6)


def test_cocycle_check_and_residuals(g7):
    assert is_cocycle(g7, TwoCochain.from_terms(4, {(1, 2): 1}))
    bad = TwoCochain.from_terms(4, {(3, 4): 1})
    check = is_cocycle(g7, bad)
    assert not check
    assert check.first_violation()[:3] == (1, 3, 4)
    with pytest.raises(NotACocycle):
        require_cocycle(g7, bad)
    with pytest.raises(NotACocycle):
        cohomology_index(g7, bad)


def test_dimension_mismatch(g7):
    with pytest.raises(DimensionMismatch):
        is_cocycle(g7, TwoCochain.zero(3))


def test_cochain_arithmetic():
    F = TwoCochain.from_terms(3, {(1, 2): 1, (2, 1): 1})
    assert F.is_zero()
    G = TwoCochain.from_terms(3, {(2, 1): Fraction(1, 2)})
    assert G.value(1, 2) == Fraction(-1, 2)
    assert str(G) == "-1/2*e1^e2"
    assert (G + G).scaled(-1).value(1, 2) == 1
    assert TwoCochain.from_vector(3, G.vector()) == G
    assert pair_order(3) == [(1, 2), (1, 3), (2, 3)]


def test_trivial_cocycle_formula(g7):
    F = trivial_cocycle(g7, (0, 0, 0, 1))
    assert F == TwoCochain.from_terms(4, {(1, 4): 1, (2, 4): 1})
    assert cohomology_index(g7, F) == 2  # class of zero


def test_kernel_of_integrable_g7_cocycle(g7):
    F = TwoCochain.from_terms(4, {(1, 2): 1, (1, 3): 1, (2, 3): 1})
    K = kernel(g7, F)
    assert K.dim == 2 and K.subalgebra
    assert (1, -1, 1, 0) in K and (0, 0, 0, 1) in K


def test_kernel_of_single_term_cocycle(g7):
    F = TwoCochain.from_terms(4, {(1, 2): 1})
    K = kernel(g7, F)
    assert K.dim == 2
    assert K.subalgebra  # span{e3, e4} is closed


def test_g7_rank_dichotomy_table(g7):
    for alpha, beta, gamma in itertools.product((-1, 0, 2), repeat=3):
        F = TwoCochain.from_terms(4, {(1, 2): alpha, (1, 3): beta, (2, 3): gamma})
        ind = cohomology_index(g7, F)
        assert ind == (2 if beta == gamma else 0)
        assert ind == 4 - grid_max_rank(g7, F)
        assert ind == cohomology_index(g7, F, exact=True)


def test_integrability_verdicts(g7):
    ok = is_integrable(g7, TwoCochain.from_terms(4, {(1, 2): 1, (1, 3): 1, (2, 3): 1}))
    assert ok.integrable and ok.lhs == 1 and ok.to_json()["lhs"] == "1"
    no = is_integrable(g7, TwoCochain.from_terms(4, {(1, 2): 1, (1, 3): 1, (2, 3): 2}))
    assert not no.integrable and no.lhs == 2
    ab = validate_algebra("ab", 4, {})
    triv = is_integrable(ab, TwoCochain.zero(4))
    assert triv.integrable and triv.lhs == 0


def test_cocycle_equations_shape(g7):
    eqs = cocycle_equations(g7)
    assert all(len(r) == 6 for r in eqs)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_index_invariant_under_coboundaries(lam, coeffs):
    g7 = validate_algebra("g7", 4, {(1, 4): {4: 1}, (2, 4): {4: 1}})
    basis = cocycle_basis(g7)
    F = TwoCochain.zero(4)
    for c, B in zip(coeffs, basis):
        F = F + B.scaled(c)
    shifted = F + trivial_cocycle(g7, lam)
    assert cohomology_index(g7, F) == cohomology_index(g7, shifted)
    assert (4 - cohomology_index(g7, F)) % 2 == 0
    assert rank_of(shifted) % 2 == 0
