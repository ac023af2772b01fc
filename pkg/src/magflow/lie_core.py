"""Finite-dimensional real Lie algebras with exact rational structure constants.

Basis vectors are numbered from ``first_index`` (1 for an ordinary algebra,
0 for a central extension whose center is ``e0``). Vectors and covectors are
tuples ordered by that numbering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import DimensionMismatch, JacobiViolation
from .exact import (
    Vector,
    as_fraction,
    canonical_basis,
    generic_skew_rank,
    nullspace,
    poly_add,
    poly_const,
    poly_mul,
    poly_var,
    rank,
    solve_in_span,
)

#: Randomized rank certification defaults: independent trials and the
#: half-width of the integer sampling box.
DEFAULT_TRIALS = 8
SAMPLE_RANGE = 10**6

Covector = tuple[Fraction, ...]


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    structure: Mapping[tuple[int, int, int], Fraction]
    first_index: int = 1
    _by_pair: Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        by_pair: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for (a, b, c), v in sorted(self.structure.items()):
            by_pair.setdefault((a, b), []).append((c, v))
        object.__setattr__(self, "structure", MappingProxyType(dict(self.structure)))
        object.__setattr__(
            self, "_by_pair", MappingProxyType({k: tuple(v) for k, v in by_pair.items()})
        )

    @property
    def indices(self) -> range:
        return range(self.first_index, self.first_index + self.dim)

    def pos(self, a: int) -> int:
        return a - self.first_index

    def coeff(self, a: int, b: int, c: int) -> Fraction:
        """C^c_ab with antisymmetry in (a, b)."""
        if a < b:
            return self.structure.get((a, b, c), Fraction(0))
        if a > b:
            return -self.structure.get((b, a, c), Fraction(0))
        return Fraction(0)

    def bracket_terms(self, a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
        """Nonzero terms (c, C^c_ab) of [e_a, e_b]."""
        if a < b:
            return self._by_pair.get((a, b), ())
        if a > b:
            return tuple((c, -v) for c, v in self._by_pair.get((b, a), ()))
        return ()

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for (a, b), terms in self._by_pair.items():
            xa, xb = x[self.pos(a)], x[self.pos(b)]
            ya, yb = y[self.pos(a)], y[self.pos(b)]
            w = xa * yb - xb * ya
            if w:
                for c, v in terms:
                    out[self.pos(c)] += w * v
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.structure

    def structure_matrix(self, lam: Sequence) -> list[list[Fraction]]:
        """A(lam)_ab = sum_c C^c_ab lam_c, an antisymmetric matrix."""
        if len(lam) != self.dim:
            raise DimensionMismatch(f"covector has length {len(lam)}, algebra dim {self.dim}")
        lam = [as_fraction(x) for x in lam]
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (a, b), terms in self._by_pair.items():
            s = sum((v * lam[self.pos(c)] for c, v in terms), Fraction(0))
            m[self.pos(a)][self.pos(b)] = s
            m[self.pos(b)][self.pos(a)] = -s
        return m

    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        out: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (a, b, c), v in self.structure.items():
            out.setdefault((a, b), {})[c] = v
        return out

    def describe(self) -> str:
        parts = []
        for (a, b), terms in sorted(self._by_pair.items()):
            rhs = " + ".join(f"{v}*e{c}" if v != 1 else f"e{c}" for c, v in terms)
            parts.append(f"[e{a},e{b}] = {rhs}")
        return f"{self.name}: " + (", ".join(parts) if parts else "abelian")


@dataclass(frozen=True)
class Subspace:
    """A linear subspace held by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors) -> "Subspace":
        vectors = [tuple(as_fraction(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length differs from ambient dimension")
        return cls(ambient_dim, tuple(canonical_basis(vectors, ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return solve_in_span(self.basis, [as_fraction(x) for x in v])

    def __contains__(self, v) -> bool:
        return self.contains(v)


def validate_algebra(name: str, dim: int, brackets, first_index: int = 1) -> LieAlgebra:
    """Build a LieAlgebra from ``{(a, b): {c: value}}`` and check Jacobi exactly.

    Pairs with ``a > b`` are flipped with a sign change. Raises
    ``JacobiViolation`` at the first failing (a, b, c, e).
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    lo, hi = first_index, first_index + dim - 1
    structure: dict[tuple[int, int, int], Fraction] = {}
    for (a, b), terms in brackets.items():
        if not (lo <= a <= hi and lo <= b <= hi):
            raise ValueError(f"bracket index out of range: ({a}, {b})")
        if a == b:
            if any(as_fraction(v) != 0 for v in terms.values()):
                raise ValueError(f"[e{a}, e{a}] must vanish")
            continue
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        for c, v in terms.items():
            if not lo <= c <= hi:
                raise ValueError(f"bracket output index out of range: {c}")
            q = sign * as_fraction(v)
            key = (a, b, c)
            total = structure.get(key, Fraction(0)) + q
            if total:
                structure[key] = total
            else:
                structure.pop(key, None)
    alg = LieAlgebra(name, dim, structure, first_index)
    violation = jacobi_violation(alg)
    if violation is not None:
        raise JacobiViolation(*violation, name=name)
    return alg


def jacobi_violation(alg: LieAlgebra):
    """First (a, b, c, e, residual) with a nonzero Jacobiator, else None.

    The Jacobiator is totally antisymmetric, so a < b < c suffices.
    """
    for a, b, c in combinations(alg.indices, 3):
        acc: dict[int, Fraction] = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for d, v in alg.bracket_terms(x, y):
                for e, w in alg.bracket_terms(d, z):
                    acc[e] = acc.get(e, Fraction(0)) + v * w
        for e in sorted(acc):
            if acc[e]:
                return a, b, c, e, acc[e]
    return None


def annihilator(alg: LieAlgebra, lam: Sequence) -> Subspace:
    """g^lam = {X : <lam, [X, Y]> = 0 for all Y}."""
    m = alg.structure_matrix(lam)
    return Subspace(alg.dim, tuple(nullspace(m, alg.dim)))


def closed_under_bracket(alg: LieAlgebra, space: Subspace) -> bool:
    for x, y in combinations(space.basis, 2):
        if not space.contains(alg.bracket(x, y)):
            return False
    return True


def schwartz_zippel_bound(dim: int, trials: int = DEFAULT_TRIALS, half_range: int = SAMPLE_RANGE) -> float:
    """Upper bound on the probability that randomized max-rank underestimates.

    Rank deficiency at a sample means every maximal nonvanishing Pfaffian
    minor, a polynomial of degree at most ``dim`` in the covector entries,
    vanishes there. Each independent integer sample from
    [-half_range, half_range] hits its zero set with probability at most
    dim / (2 * half_range + 1).
    """
    return (dim / (2 * half_range + 1)) ** trials


def random_covector(dim: int, rng: random.Random, half_range: int = SAMPLE_RANGE) -> Covector:
    return tuple(Fraction(rng.randint(-half_range, half_range)) for _ in range(dim))


def max_rank_over_covectors(
    alg: LieAlgebra,
    base=None,
    *,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    half_range: int = SAMPLE_RANGE,
    exact: bool = False,
) -> int:
    """max over lam of rank(base + A(lam)), where ``base`` defaults to zero.

    The default route samples integer covectors; ``exact=True`` treats lam
    symbolically and tests Pfaffian minors (dim <= 6).
    """
    n = alg.dim
    if base is None:
        base = [[Fraction(0)] * n for _ in range(n)]
    if exact:
        return _symbolic_max_rank(alg, base)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        lam = random_covector(n, rng, half_range)
        a = alg.structure_matrix(lam)
        m = [[b + x for b, x in zip(brow, arow)] for brow, arow in zip(base, a)]
        best = max(best, rank(m))
        if best == n - (n % 2):
            break
    return best


def _symbolic_max_rank(alg: LieAlgebra, base) -> int:
    n = alg.dim
    if n > 6:
        raise ValueError("symbolic rank route is limited to dimension 6")
    m = [[poly_const(base[i][j], n) for j in range(n)] for i in range(n)]
    for a in alg.indices:
        for b in alg.indices:
            for c, v in alg.bracket_terms(a, b):
                term = poly_mul(poly_const(v, n), poly_var(alg.pos(c), n))
                m[alg.pos(a)][alg.pos(b)] = poly_add(m[alg.pos(a)][alg.pos(b)], term)
    return generic_skew_rank(m)


def algebra_index(alg: LieAlgebra, *, seed: int = 0, trials: int = DEFAULT_TRIALS, exact: bool = False) -> int:
    """ind g = dim g - max_lam rank A(lam)."""
    return alg.dim - max_rank_over_covectors(alg, seed=seed, trials=trials, exact=exact)
