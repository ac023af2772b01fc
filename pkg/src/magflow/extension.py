"""One-dimensional central extensions and Casimir checks on their duals.

The extension of g by a cocycle F has basis e0, e1, ..., en with e0 central
and [e_a, e_b] = sum_c C^c_ab e_c + F_ab e0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cohomology import TwoCochain, is_cocycle
from .errors import DimensionMismatch, DomainViolation, NotACocycle
from .exact import as_fraction, nullspace
from .lie_core import LieAlgebra, jacobi_violation, validate_algebra


@dataclass(frozen=True)
class CentralExtension:
    base: LieAlgebra
    cocycle: TwoCochain
    extended: LieAlgebra

    @property
    def dim(self) -> int:
        return self.extended.dim

    def recover(self) -> tuple[dict, TwoCochain]:
        """Read (C, F) back out of the extended structure constants."""
        C = {}
        F = {}
        for (a, b, c), v in self.extended.structure.items():
            if c == 0:
                F[(a, b)] = v
            else:
                C[(a, b, c)] = v
        return C, TwoCochain(self.base.dim, F)


def extension_structure(alg: LieAlgebra, F: TwoCochain) -> dict:
    table = {k: dict(v) for k, v in alg.table().items()}
    for (a, b), v in F.entries.items():
        table.setdefault((a, b), {})[0] = v
    return table


def central_extension(alg: LieAlgebra, F: TwoCochain) -> CentralExtension:
    if F.dim != alg.dim:
        raise DimensionMismatch(f"cocycle dim {F.dim} vs algebra dim {alg.dim}")
    check = is_cocycle(alg, F)
    if not check:
        raise NotACocycle(*check.first_violation())
    ext = validate_algebra(f"{alg.name}~", alg.dim + 1, extension_structure(alg, F), first_index=0)
    return CentralExtension(alg, F, ext)


def extension_jacobi_holds(alg: LieAlgebra, F: TwoCochain) -> bool:
    """Jacobi identity of g + R e0 built from F, without the cocycle gate."""
    ext = LieAlgebra("probe", alg.dim + 1, _flatten(extension_structure(alg, F)), 0)
    return jacobi_violation(ext) is None


def _flatten(table) -> dict:
    return {(a, b, c): as_fraction(v) for (a, b), t in table.items() for c, v in t.items() if v}


def extended_annihilator_dim(ext: CentralExtension, lam: Sequence, eps=1) -> int:
    """dim of the annihilator of lam + eps e^0 inside the extension."""
    eps = as_fraction(eps)
    if eps == 0:
        raise ValueError("eps must be nonzero")
    if len(lam) != ext.base.dim:
        raise DimensionMismatch("covector length must equal the base dimension")
    mu = (eps,) + tuple(as_fraction(x) for x in lam)
    return len(nullspace(ext.extended.structure_matrix(mu), ext.dim))


def split_basis(ext: CentralExtension, lam: Sequence) -> LieAlgebra:
    """Rewrite the extension in the basis e_a' = e_a + lam_a e0.

    When F = F_lam this removes every central term, exhibiting the split
    extension g + R.
    """
    lam = [as_fraction(x) for x in lam]
    base = ext.base
    table = {}
    for (a, b), terms in base.table().items():
        table[(a, b)] = dict(terms)
    for (a, b), v in ext.cocycle.entries.items():
        central = v - sum((w * lam[c - 1] for c, w in base.bracket_terms(a, b)), Fraction(0))
        if central:
            table.setdefault((a, b), {})[0] = central
    return validate_algebra(f"{base.name}~split", base.dim + 1, table, first_index=0)


@dataclass(frozen=True)
class CasimirCandidate:
    """A function on the dual of the extension, given by value and gradient.

    Both callables take the full vector (f0, f1, ..., fn). They are written
    with plain arithmetic so Fractions flow through polynomial candidates.
    """

    name: str
    value: Callable[[Sequence], object]
    gradient: Callable[[Sequence], Sequence]
    domain: Callable[[Sequence], bool] = lambda f: True
    domain_note: str = ""


def lie_poisson_with_coordinates(ext: CentralExtension, f: Sequence, grad: Sequence) -> list:
    """{f_a, K}(f) = sum_{b,c} C~^c_ab f_c dK/df_b for every index a."""
    alg = ext.extended
    out = []
    for a in alg.indices:
        s = 0
        for b in alg.indices:
            gb = grad[alg.pos(b)]
            if not gb:
                continue
            for c, v in alg.bracket_terms(a, b):
                s += v * f[alg.pos(c)] * gb
        out.append(s)
    return out


def verify_casimir(ext: CentralExtension, K: CasimirCandidate, points: Iterable[Sequence]) -> float | Fraction:
    """Largest |{f_a, K}| over the sample points; exact for rational input."""
    worst = 0
    for f in points:
        if len(f) != ext.dim:
            raise DimensionMismatch(f"point has {len(f)} components, extension dim {ext.dim}")
        if not K.domain(f):
            raise DomainViolation(f"{K.name}: point {list(f)} outside domain ({K.domain_note})")
        res = lie_poisson_with_coordinates(ext, f, K.gradient(f))
        worst = max([worst] + [abs(r) for r in res])
    return worst


def center_casimir(dim: int) -> CasimirCandidate:
    """K = f0, a Casimir of every central extension."""
    return CasimirCandidate(
        "K0",
        value=lambda f: f[0],
        gradient=lambda f: [1] + [0] * (dim - 1),
    )
