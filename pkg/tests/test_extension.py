import math
import random
from fractions import Fraction

import pytest

from magflow.catalog.charts import g7_casimirs, g7_extension
from magflow.cohomology import TwoCochain, trivial_cocycle
from magflow.errors import DimensionMismatch, DomainViolation, NotACocycle
from magflow.extension import (
    center_casimir,
    central_extension,
    extended_annihilator_dim,
    extension_jacobi_holds,
    lie_poisson_with_coordinates,
    split_basis,
    verify_casimir,
)
from magflow.lie_core import jacobi_violation


def rational_points(n, count, seed=0, positive=()):
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        f = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(n)]
        for i in positive:
            f[i] = abs(f[i]) + 1
        pts.append(f)
    return pts


def test_extension_brackets(g7):
    F = TwoCochain.from_terms(4, {(1, 2): 1, (1, 3): 2, (2, 3): 2})
    ext = central_extension(g7, F)
    alg = ext.extended
    assert alg.first_index == 0 and alg.dim == 5
    assert alg.coeff(1, 2, 0) == 1 and alg.coeff(1, 3, 0) == 2
    assert alg.coeff(1, 4, 4) == 1
    assert all(not alg.bracket_terms(0, b) for b in alg.indices)
    C, G = ext.recover()
    assert G == F
    assert C == {(1, 4, 4): 1, (2, 4, 4): 1}


def test_non_cocycle_rejected(g7):
    with pytest.raises(NotACocycle):
        central_extension(g7, TwoCochain.from_terms(4, {(3, 4): 1}))
    with pytest.raises(DimensionMismatch):
        central_extension(g7, TwoCochain.zero(2))


def test_jacobi_of_extension_iff_cocycle(g7):
    assert extension_jacobi_holds(g7, TwoCochain.from_terms(4, {(1, 3): 1}))
    assert not extension_jacobi_holds(g7, TwoCochain.from_terms(4, {(3, 4): 1}))


def test_coboundary_extension_splits(g7):
    lam = (1, -2, 3, 5)
    ext = central_extension(g7, trivial_cocycle(g7, lam))
    split = split_basis(ext, lam)
    assert all(c != 0 for (_, _, c) in split.structure)
    assert jacobi_violation(split) is None


def test_extended_annihilator_matches_index(g7):
    ext = g7_extension(1, 1, 1)
    assert extended_annihilator_dim(ext, (3, -7, 11, 2)) == 3
    ext2 = g7_extension(1, 1, 2)
    assert extended_annihilator_dim(ext2, (3, -7, 11, 2)) == 1
    with pytest.raises(ValueError):
        extended_annihilator_dim(ext, (1, 2, 3, 4), eps=0)


def test_center_casimir_exact():
    ext = g7_extension(1, 2, 3)
    assert verify_casimir(ext, center_casimir(5), rational_points(5, 30)) == 0


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, -1), (Fraction(1, 3), 5)])
def test_k1_and_log_k2_exact(alpha, beta):
    ext = g7_extension(alpha, beta, beta)
    cas = g7_casimirs(alpha, beta)
    pts = rational_points(5, 40, seed=7, positive=(4,))
    pts = [p for p in pts if p[0] != 0]
    assert verify_casimir(ext, cas["K1"], pts) == 0
    assert verify_casimir(ext, cas["logK2"], pts) == 0


def test_k2_float_gradient_is_casimir():
    ext = g7_extension(1, 1, 1)
    cas = g7_casimirs(1, 1)
    pts = [[-1.0, 0.3, -0.2, 0.5, 1.7], [2.0, 1.0, 1.0, -1.0, 0.4]]
    assert verify_casimir(ext, cas["K2"], pts) < 1e-12


def test_printed_k2_only_on_unit_level():
    ext = g7_extension(1, 1, 1)
    cas = g7_casimirs(1, 1)
    assert verify_casimir(ext, cas["K2_printed"], [[1.0, 0.3, -0.2, 0.5, 1.7]]) < 1e-12
    with pytest.raises(DomainViolation):
        verify_casimir(ext, cas["K2_printed"], [[-1.0, 0.3, -0.2, 0.5, 1.7]])
    # outside its domain the printed form is not a Casimir: {f1, K2} = beta K2 (1 - f0)
    f = [-1.0, 0.3, -0.2, 0.5, 1.7]
    res = lie_poisson_with_coordinates(ext, f, cas["K2_printed"].gradient(f))
    K = cas["K2_printed"].value(f)
    assert res[1] == pytest.approx(K * (1 - f[0]))


def test_k2_domain_enforced():
    ext = g7_extension(1, 1, 1)
    with pytest.raises(DomainViolation):
        verify_casimir(ext, g7_casimirs(1, 1)["K2"], [[-1.0, 0, 0, 0, -2.0]])


def test_casimir_fails_off_integrable_family():
    ext = g7_extension(1, 1, 2)
    cas = g7_casimirs(1, 1)
    assert verify_casimir(ext, cas["K1"], rational_points(5, 10, seed=3)) != 0


def test_point_dimension_checked():
    ext = g7_extension(1, 1, 1)
    with pytest.raises(DimensionMismatch):
        verify_casimir(ext, center_casimir(5), [[0, 0, 0]])
