"""Coordinate charts on a Lie group and their consistency audits.

Array conventions, for a point g with n coordinates:

    eta(g)[a, i]    right-invariant field eta_a^i
    xi(g)[a, i]     left-invariant field xi_a^i
    sigma(g)[a, i]  right-invariant coframe sigma^a_i  (sigma @ eta.T = I)
    eta0(g)[a]      central component of the extended right fields
    xi0(g)[a]       central component of the extended left fields
    Ad(g)[a, b]     (Ad_g)_a^b, with xi_a = -Ad_a^b eta_b

Derivative callables ``d_<name>`` return the same array with a new leading
axis k holding d/dg^k. When one is missing the chart falls back to central
differences with a single Richardson step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..cohomology import TwoCochain
from ..errors import MissingChartData, OutOfChart
from ..lie_core import LieAlgebra

FIELDS = ("eta", "xi", "sigma", "eta0", "xi0", "Ad")


@dataclass(frozen=True)
class GroupChart:
    name: str
    algebra: LieAlgebra
    cocycle: TwoCochain
    box: tuple[tuple[float, float], ...]
    eta: Callable
    sigma: Callable
    xi: Optional[Callable] = None
    eta0: Optional[Callable] = None
    xi0: Optional[Callable] = None
    Ad: Optional[Callable] = None
    d_eta: Optional[Callable] = None
    d_xi: Optional[Callable] = None
    d_sigma: Optional[Callable] = None
    d_eta0: Optional[Callable] = None
    d_xi0: Optional[Callable] = None
    d_Ad: Optional[Callable] = None
    potential_global: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def contains(self, g: Sequence[float]) -> bool:
        return all(lo < x < hi for x, (lo, hi) in zip(g, self.box))

    def require(self, g: Sequence[float]) -> None:
        if not np.all(np.isfinite(g)) or not self.contains(g):
            raise OutOfChart(f"point {list(np.asarray(g, float))} leaves chart {self.name!r}")

    def field(self, name: str, g) -> np.ndarray:
        fn = getattr(self, name)
        if fn is None:
            raise MissingChartData(f"chart {self.name!r} does not supply {name}")
        return np.asarray(fn(np.asarray(g, dtype=float)), dtype=float)

    def derivative(self, name: str, g, numeric: bool = False) -> np.ndarray:
        """d/dg^k of a chart field, stacked along a new leading axis."""
        g = np.asarray(g, dtype=float)
        fn = getattr(self, "d_" + name)
        if fn is not None and not numeric:
            return np.asarray(fn(g), dtype=float)
        return numeric_derivative(lambda x: self.field(name, x), g)


def numeric_derivative(fn: Callable, g: np.ndarray) -> np.ndarray:
    """Central differences, h = 1e-6 * max(1, |g_k|), one Richardson level."""
    out = []
    for k in range(len(g)):
        h = 1e-6 * max(1.0, abs(g[k]))
        step = np.zeros_like(g)
        step[k] = h
        d1 = (fn(g + step) - fn(g - step)) / (2 * h)
        d2 = (fn(g + step / 2) - fn(g - step / 2)) / h
        out.append((4 * d2 - d1) / 3)
    return np.array(out)


def _structure_array(alg: LieAlgebra) -> np.ndarray:
    n = alg.dim
    C = np.zeros((n, n, n))
    for a in alg.indices:
        for b in alg.indices:
            for c, v in alg.bracket_terms(a, b):
                C[alg.pos(a), alg.pos(b), alg.pos(c)] = float(v)
    return C


def _cochain_array(F: TwoCochain) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in F.matrix()]).reshape(F.dim, F.dim)


def _field_brackets(X, dX, Y, dY):
    """[X_a, Y_b]^i = X_a^k d_k Y_b^i - Y_b^k d_k X_a^i for all a, b."""
    return np.einsum("ak,kbi->abi", X, dY) - np.einsum("bk,kai->abi", Y, dX)


def chart_audit(chart: GroupChart, points, numeric: bool = True) -> dict[str, float]:
    """Maximum residuals of the structural identities over sample points.

    duality:       sigma @ eta.T = I
    eta_brackets:  [eta_a, eta_b] = C^c_ab eta_c
    xi_brackets:   [xi_a, xi_b] = C^c_ab xi_c
    commute:       [eta_a, xi_b] = 0
    adjoint:       xi_a = -Ad_a^b eta_b
    eta0_brackets: central part of the extended right fields (equivalently
                   the potential identity)
    xi0_brackets:  central part of the extended left fields
    """
    C = _structure_array(chart.algebra)
    F = _cochain_array(chart.cocycle)
    n = chart.dim
    worst = dict.fromkeys(
        ["duality", "eta_brackets", "xi_brackets", "commute", "adjoint", "eta0_brackets", "xi0_brackets"], 0.0
    )

    def upd(key, arr):
        worst[key] = max(worst[key], float(np.max(np.abs(arr))) if np.size(arr) else 0.0)

    for g in points:
        g = np.asarray(g, dtype=float)
        eta, sigma = chart.field("eta", g), chart.field("sigma", g)
        deta = chart.derivative("eta", g, numeric)
        upd("duality", sigma @ eta.T - np.eye(n))
        upd("eta_brackets", _field_brackets(eta, deta, eta, deta) - np.einsum("abc,ci->abi", C, eta))
        if chart.xi is not None:
            xi = chart.field("xi", g)
            dxi = chart.derivative("xi", g, numeric)
            upd("xi_brackets", _field_brackets(xi, dxi, xi, dxi) - np.einsum("abc,ci->abi", C, xi))
            upd("commute", _field_brackets(eta, deta, xi, dxi))
            if chart.Ad is not None:
                upd("adjoint", xi + chart.field("Ad", g) @ eta)
        if chart.eta0 is not None:
            e0 = chart.field("eta0", g)
            de0 = chart.derivative("eta0", g, numeric)
            D = eta @ de0  # D[a, b] = eta_a(eta0_b)
            upd("eta0_brackets", D - D.T - (C @ e0 - F))
        if chart.xi0 is not None and chart.xi is not None:
            x0 = chart.field("xi0", g)
            dx0 = chart.derivative("xi0", g, numeric)
            D = chart.field("xi", g) @ dx0
            upd("xi0_brackets", D - D.T - (C @ x0 + F))
    return worst
