import random
from fractions import Fraction

import pytest

from conftest import grid_max_rank
from magflow.errors import JacobiViolation
from magflow.lie_core import (
    LieAlgebra,
    Subspace,
    algebra_index,
    annihilator,
    closed_under_bracket,
    jacobi_violation,
    max_rank_over_covectors,
    random_covector,
    schwartz_zippel_bound,
    validate_algebra,
)


def test_bracket_is_antisymmetric(g7):
    assert g7.coeff(1, 4, 4) == 1
    assert g7.coeff(4, 1, 4) == -1
    assert g7.coeff(1, 2, 4) == 0
    x, y = (1, 0, 0, 0), (0, 0, 0, 1)
    assert g7.bracket(x, y) == (0, 0, 0, 1)
    assert g7.bracket(y, x) == (0, 0, 0, -1)


def test_reversed_pairs_are_normalized():
    alg = validate_algebra("h", 3, {(2, 1): {3: 1}})
    assert alg.coeff(1, 2, 3) == -1


def test_jacobi_violation_reports_triple():
    with pytest.raises(JacobiViolation) as info:
        validate_algebra("bad", 3, {(1, 2): {3: 1}, (1, 3): {1: 1}, (2, 3): {1: 1}})
    err = info.value
    assert (err.a, err.b, err.c) == (1, 2, 3)
    assert err.residual != 0


@pytest.mark.parametrize("brackets", [{(1, 1): {1: 1}}, {(1, 5): {1: 1}}, {(1, 2): {9: 1}}])
def test_malformed_tables_rejected(brackets):
    with pytest.raises(ValueError):
        validate_algebra("bad", 3, brackets)


def test_abelian_index_is_dimension():
    alg = validate_algebra("ab", 4, {})
    assert alg.is_abelian()
    assert algebra_index(alg) == 4
    assert algebra_index(alg, exact=True) == 4


@pytest.mark.parametrize(
    "fixture,expected", [("so3", 1), ("heisenberg", 1), ("g7", 2)]
)
def test_known_indices(request, fixture, expected):
    alg = request.getfixturevalue(fixture)
    assert algebra_index(alg) == expected
    assert algebra_index(alg, exact=True) == expected
    assert alg.dim - grid_max_rank(alg) == expected


def test_index_independent_of_seed(g7):
    assert {algebra_index(g7, seed=s) for s in range(10)} == {2}


def test_single_trial_can_be_unlucky_but_bound_is_tiny():
    # lam = 0 is the only degenerate sample for so(3) and is never drawn in practice
    assert schwartz_zippel_bound(4) < 1e-40
    assert schwartz_zippel_bound(4, trials=1) == pytest.approx(4 / 2000001)


def test_random_covector_range():
    rng = random.Random(3)
    lam = random_covector(5, rng, half_range=10)
    assert len(lam) == 5 and all(-10 <= x <= 10 for x in lam)


def test_annihilator_of_generic_covector(so3):
    ann = annihilator(so3, (1, 2, 3))
    assert ann.dim == 1
    assert (1, 2, 3) in ann


def test_subalgebra_check(g7):
    assert closed_under_bracket(g7, Subspace.span(4, [(1, 0, 0, 0), (0, 0, 0, 1)]))
    assert closed_under_bracket(g7, Subspace.span(4, [(1, -1, 0, 0), (0, 0, 1, 0)]))
    assert not closed_under_bracket(g7, Subspace.span(4, [(1, 0, 0, 0), (0, 0, 1, 1)]))


def test_symbolic_route_limited_to_small_dims():
    alg = validate_algebra("ab7", 7, {})
    with pytest.raises(ValueError):
        max_rank_over_covectors(alg, exact=True)


def test_describe_and_table(g7):
    assert g7.table() == {(1, 4): {4: Fraction(1)}, (2, 4): {4: Fraction(1)}}
    assert "[e1,e4] = e4" in g7.describe()
