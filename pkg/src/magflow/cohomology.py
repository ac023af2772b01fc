"""Second cohomology of a Lie algebra with trivial real coefficients.

Cochains are constant skew forms F_ab = F(e_a, e_b). The closure condition is
the cyclic sum over (a, b, c) of C^d_ab F_cd. The cohomology index of a class
is dim g minus the largest rank attained by a representative F + F_lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import DimensionMismatch, NotACocycle
from .exact import as_fraction, canonical_basis, format_fraction, nullspace, rank
from .lie_core import (
    DEFAULT_TRIALS,
    LieAlgebra,
    Subspace,
    closed_under_bracket,
    max_rank_over_covectors,
)


@dataclass(frozen=True)
class TwoCochain:
    """Skew form stored by its a < b entries (indices start at 1)."""

    dim: int
    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        clean = {}
        for (a, b), v in self.entries.items():
            if not (1 <= a < b <= self.dim):
                raise ValueError(f"cochain index pair ({a}, {b}) invalid for dim {self.dim}")
            v = as_fraction(v)
            if v:
                clean[(a, b)] = v
        object.__setattr__(self, "entries", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[tuple[int, int], object]) -> "TwoCochain":
        """Accumulate terms, flipping pairs with a > b."""
        acc: dict[tuple[int, int], Fraction] = {}
        for (a, b), v in terms.items():
            v = as_fraction(v)
            if a == b:
                if v:
                    raise ValueError("diagonal entries of a skew form must vanish")
                continue
            if a > b:
                a, b, v = b, a, -v
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + v
        return cls(dim, acc)

    @classmethod
    def zero(cls, dim: int) -> "TwoCochain":
        return cls(dim, {})

    @classmethod
    def from_vector(cls, dim: int, vec: Sequence) -> "TwoCochain":
        return cls(dim, dict(zip(pair_order(dim), vec)))

    def value(self, a: int, b: int) -> Fraction:
        if a < b:
            return self.entries.get((a, b), Fraction(0))
        if a > b:
            return -self.entries.get((b, a), Fraction(0))
        return Fraction(0)

    def matrix(self) -> list[list[Fraction]]:
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), v in self.entries.items():
            m[a - 1][b - 1] = v
            m[b - 1][a - 1] = -v
        return m

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.value(a, b) for a, b in pair_order(self.dim))

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        _same_dim(self.dim, other.dim)
        keys = set(self.entries) | set(other.entries)
        return TwoCochain(self.dim, {k: self.value(*k) + other.value(*k) for k in keys})

    def __sub__(self, other: "TwoCochain") -> "TwoCochain":
        return self + other.scaled(-1)

    def scaled(self, s) -> "TwoCochain":
        s = as_fraction(s)
        return TwoCochain(self.dim, {k: s * v for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for (a, b), v in self.entries.items():
            coef = "" if v == 1 else "-" if v == -1 else f"{format_fraction(v)}*"
            parts.append(f"{coef}e{a}^e{b}")
        return " + ".join(parts).replace("+ -", "- ")


def pair_order(dim: int) -> list[tuple[int, int]]:
    """Unknown ordering for the cocycle equations: lexicographic a < b."""
    return list(combinations(range(1, dim + 1), 2))


def _same_dim(n: int, m: int) -> None:
    if n != m:
        raise DimensionMismatch(f"dimension {n} does not match {m}")


@dataclass(frozen=True)
class CocycleCheck:
    """Outcome of the closure test; truthy when the cochain is a cocycle."""

    ok: bool
    residuals: Mapping[tuple[int, int, int], Fraction]

    def __bool__(self) -> bool:
        return self.ok

    def first_violation(self):
        if self.ok:
            return None
        (a, b, c), r = next(iter(self.residuals.items()))
        return a, b, c, r


def cocycle_residuals(alg: LieAlgebra, F: TwoCochain) -> dict[tuple[int, int, int], Fraction]:
    out = {}
    for a, b, c in combinations(range(1, alg.dim + 1), 3):
        s = Fraction(0)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for d, v in alg.bracket_terms(x, y):
                s += v * F.value(z, d)
        if s:
            out[(a, b, c)] = s
    return out


def is_cocycle(alg: LieAlgebra, F: TwoCochain) -> CocycleCheck:
    _same_dim(alg.dim, F.dim)
    res = cocycle_residuals(alg, F)
    return CocycleCheck(not res, MappingProxyType(res))


def require_cocycle(alg: LieAlgebra, F: TwoCochain) -> None:
    check = is_cocycle(alg, F)
    if not check:
        raise NotACocycle(*check.first_violation())


def cocycle_equations(alg: LieAlgebra) -> list[list[Fraction]]:
    """Rows of the linear system for the unknowns F_ab, a < b."""
    n = alg.dim
    col = {p: i for i, p in enumerate(pair_order(n))}
    rows = []
    for a, b, c in combinations(range(1, n + 1), 3):
        row = [Fraction(0)] * len(col)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for d, v in alg.bracket_terms(x, y):
                if z < d:
                    row[col[(z, d)]] += v
                elif z > d:
                    row[col[(d, z)]] -= v
        if any(row):
            rows.append(row)
    return rows


def cocycle_basis(alg: LieAlgebra) -> list[TwoCochain]:
    n = alg.dim
    width = n * (n - 1) // 2
    if width == 0:
        return []
    rows = cocycle_equations(alg)
    if rows:
        vecs = nullspace(rows, width)
    else:
        vecs = [tuple(Fraction(int(i == j)) for j in range(width)) for i in range(width)]
    return [TwoCochain.from_vector(n, v) for v in vecs]


def trivial_cocycle(alg: LieAlgebra, lam: Sequence) -> TwoCochain:
    """F_lam(X, Y) = <lam, [X, Y]>, i.e. F_ab = sum_c C^c_ab lam_c."""
    if len(lam) != alg.dim:
        raise DimensionMismatch(f"covector has length {len(lam)}, algebra dim {alg.dim}")
    lam = [as_fraction(x) for x in lam]
    entries = {}
    for a, b in pair_order(alg.dim):
        s = sum((v * lam[c - 1] for c, v in alg.bracket_terms(a, b)), Fraction(0))
        if s:
            entries[(a, b)] = s
    return TwoCochain(alg.dim, entries)


def coboundary_space(alg: LieAlgebra) -> list[TwoCochain]:
    n = alg.dim
    images = []
    for c in range(n):
        lam = [Fraction(int(i == c)) for i in range(n)]
        images.append(trivial_cocycle(alg, lam).vector())
    basis = canonical_basis([v for v in images if any(v)], n * (n - 1) // 2)
    return [TwoCochain.from_vector(n, v) for v in basis]


@dataclass(frozen=True)
class CohomologyReport:
    dim_Z2: int
    dim_B2: int
    dim_H2: int
    basis_Z2: tuple[TwoCochain, ...]
    basis_B2: tuple[TwoCochain, ...]

    def to_json(self) -> dict:
        from .io import cochain_to_json

        return {
            "dim_Z2": self.dim_Z2,
            "dim_B2": self.dim_B2,
            "dim_H2": self.dim_H2,
            "basis_Z2": [cochain_to_json(F) for F in self.basis_Z2],
            "basis_B2": [cochain_to_json(F) for F in self.basis_B2],
        }


def cohomology_report(alg: LieAlgebra) -> CohomologyReport:
    z = cocycle_basis(alg)
    b = coboundary_space(alg)
    return CohomologyReport(len(z), len(b), len(z) - len(b), tuple(z), tuple(b))


@dataclass(frozen=True)
class KernelSpace(Subspace):
    """g_F together with the result of the subalgebra check."""

    subalgebra: bool = True


def kernel(alg: LieAlgebra, F: TwoCochain) -> KernelSpace:
    """g_F = {X : F(X, .) = 0}."""
    _same_dim(alg.dim, F.dim)
    basis = tuple(nullspace(F.matrix(), F.dim))
    space = Subspace(F.dim, basis)
    return KernelSpace(F.dim, basis, closed_under_bracket(alg, space))


def cohomology_index(
    alg: LieAlgebra,
    F: TwoCochain,
    *,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    exact: bool = False,
) -> int:
    """ind_[F] g = dim g - max over lam of rank(F + F_lam)."""
    require_cocycle(alg, F)
    return alg.dim - max_rank_over_covectors(alg, F.matrix(), seed=seed, trials=trials, exact=exact)


@dataclass(frozen=True)
class Verdict:
    integrable: bool
    lhs: Fraction
    index: int

    def to_json(self) -> dict:
        return {
            "integrable": self.integrable,
            "lhs": format_fraction(self.lhs),
            "cohomology_index": self.index,
        }


def is_integrable(alg: LieAlgebra, F: TwoCochain, **kw) -> Verdict:
    """Integrable in quadratures iff (dim g - ind_[F] g) / 2 < 2."""
    ind = cohomology_index(alg, F, **kw)
    lhs = Fraction(alg.dim - ind, 2)
    return Verdict(lhs < 2, lhs, ind)


def rank_of(F: TwoCochain) -> int:
    return rank(F.matrix())
