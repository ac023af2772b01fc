"""Right-hand sides of the reduced and coordinate-level magnetic flows.

Reduced flow on the dual of the extension (f0 = -e is frozen):

    df_a/dt = C^c_ab G^bd f_c f_d - e F_ab G^bd f_d,    df_0/dt = 0

Chart flow for H = 1/2 g^ij p_i p_j with g^ij = G^ab eta_a^i eta_b^j:

    dg^i/dt = dH/dp_i,   dp_i/dt = -dH/dg^i - e F_ij dH/dp_j

The extended flow is the canonical geodesic flow on the extension chart
(coordinates g0, g1..gn, momenta p0, p1..pn); its right moment map relates
to the reduced state by f = -M^R, so f0 = p0 = -e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatch, MissingChartData
from ..extension import CentralExtension
from .charts import GroupChart, _cochain_array, _structure_array
from .metric import Metric


@dataclass(frozen=True)
class CoadjointState:
    """Point (f0, f1, ..., fn) of the extension dual, with f0 = -charge."""

    f: np.ndarray
    charge: float

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        if f[0] != -self.charge:
            raise ValueError(f"f0 must equal -charge ({-self.charge}), got {f[0]}")
        object.__setattr__(self, "f", f)

    @classmethod
    def make(cls, charge: float, momenta: Sequence[float]) -> "CoadjointState":
        return cls(np.concatenate([[-float(charge)], np.asarray(momenta, float)]), float(charge))


@dataclass(frozen=True)
class PhaseState:
    g: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "g", np.asarray(self.g, dtype=float))
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))
        if self.g.shape != self.p.shape:
            raise DimensionMismatch("coordinates and momenta differ in length")

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.g, self.p])


def extension_structure_array(ext: CentralExtension) -> np.ndarray:
    return _structure_array(ext.extended)


class ReducedFlow:
    """Lie-Poisson flow of H(f) = 1/2 G^ab f_a f_b on the extension dual."""

    def __init__(self, ext: CentralExtension, metric: Metric):
        if metric.dim != ext.base.dim:
            raise DimensionMismatch(f"metric dim {metric.dim} vs algebra dim {ext.base.dim}")
        n = ext.base.dim
        self.ext = ext
        self.C = extension_structure_array(ext)
        G = np.zeros((n + 1, n + 1))
        G[1:, 1:] = metric.inverse_array()
        self.Ginv = G

    def __call__(self, t, f):
        u = self.Ginv @ f
        return np.einsum("abc,b,c->a", self.C, u, f)

    def hamiltonian(self, f) -> float:
        return 0.5 * float(f @ self.Ginv @ f)


def reduced_rhs(ext: CentralExtension, metric: Metric, state: CoadjointState) -> np.ndarray:
    if len(state.f) != ext.dim:
        raise DimensionMismatch(f"state has {len(state.f)} components, extension dim {ext.dim}")
    return ReducedFlow(ext, metric)(0.0, state.f)


def reduced_rhs_exact(ext: CentralExtension, metric: Metric, f: Sequence) -> list[Fraction]:
    """Same vector field evaluated in exact arithmetic (for rational f)."""
    alg = ext.extended
    n = ext.base.dim
    u = [Fraction(0)] + [sum(metric.Ginv[a][b] * f[b + 1] for b in range(n)) for a in range(n)]
    out = []
    for a in alg.indices:
        s = Fraction(0)
        for b in alg.indices:
            if not u[b]:
                continue
            for c, v in alg.bracket_terms(a, b):
                s += v * u[b] * f[c]
        out.append(s)
    return out


class MagneticFlow:
    """Coordinate-level magnetic geodesic flow; state y = (g, p)."""

    def __init__(self, chart: GroupChart, metric: Metric, charge: float, F=None):
        if metric.dim != chart.dim:
            raise DimensionMismatch("metric and chart dimensions differ")
        self.chart = chart
        self.charge = float(charge)
        self.Ginv = metric.inverse_array()
        self.Fab = _cochain_array(F if F is not None else chart.cocycle)
        self.n = chart.dim

    def split(self, y):
        return y[: self.n], y[self.n :]

    def field_tensor(self, g) -> np.ndarray:
        """F_ij(g) = F_ab sigma^a_i sigma^b_j."""
        s = self.chart.field("sigma", g)
        return s.T @ self.Fab @ s

    def __call__(self, t, y):
        g, p = self.split(y)
        self.chart.require(g)
        eta = self.chart.field("eta", g)
        deta = self.chart.derivative("eta", g)
        u = self.Ginv @ (eta @ p)
        gdot = eta.T @ u
        dHdg = np.einsum("kai,a,i->k", deta, u, p)
        pdot = -dHdg - self.charge * self.field_tensor(g) @ gdot
        return np.concatenate([gdot, pdot])

    def hamiltonian(self, y) -> float:
        g, p = self.split(y)
        v = self.chart.field("eta", g) @ p
        return 0.5 * float(v @ self.Ginv @ v)


def magnetic_flow_rhs(chart: GroupChart, metric: Metric, F, e: float, state: PhaseState):
    """(dg/dt, dp/dt) at ``state``."""
    flow = MagneticFlow(chart, metric, e, F)
    out = flow(0.0, state.as_array())
    return out[: chart.dim], out[chart.dim :]


def coadjoint_from_phase(chart: GroupChart, charge: float, y) -> np.ndarray:
    """Reduced state f = (-e, -eta(g) p) of a magnetic-flow phase point."""
    n = chart.dim
    g, p = y[:n], y[n:]
    return np.concatenate([[-charge], -(chart.field("eta", g) @ p)])


class ExtendedFlow:
    """Geodesic flow on the extension chart; y = (g0, g1..gn, p0, p1..pn)."""

    def __init__(self, chart: GroupChart, metric: Metric):
        if chart.eta0 is None:
            raise MissingChartData(f"chart {chart.name!r} has no central field data")
        self.chart = chart
        self.Ginv = metric.inverse_array()
        self.n = chart.dim

    def _moments(self, g, p0, p):
        eta = self.chart.field("eta", g)
        e0 = self.chart.field("eta0", g)
        return eta, e0, eta @ p + e0 * p0

    def __call__(self, t, y):
        n = self.n
        g, p0, p = y[1 : n + 1], y[n + 1], y[n + 2 :]
        self.chart.require(g)
        eta, e0, M = self._moments(g, p0, p)
        u = self.Ginv @ M
        deta = self.chart.derivative("eta", g)
        de0 = self.chart.derivative("eta0", g)
        gdot = eta.T @ u
        g0dot = float(e0 @ u)
        pdot = -(np.einsum("kai,a,i->k", deta, u, p) + p0 * (de0 @ u))
        return np.concatenate([[g0dot], gdot, [0.0], pdot])

    def hamiltonian(self, y) -> float:
        n = self.n
        _, _, M = self._moments(y[1 : n + 1], y[n + 1], y[n + 2 :])
        return 0.5 * float(M @ self.Ginv @ M)

    def right_moment_map(self, y) -> np.ndarray:
        """M^R = (eta~_0(p), eta~_1(p), ...) with eta~_0 = -d/dg0."""
        n = self.n
        _, _, M = self._moments(y[1 : n + 1], y[n + 1], y[n + 2 :])
        return np.concatenate([[-y[n + 1]], M])

    def coadjoint(self, y) -> np.ndarray:
        return -self.right_moment_map(y)

    def from_magnetic(self, y_mag, charge: float, g0: float = 0.0) -> np.ndarray:
        """Extended phase point matching a magnetic one: p_ext = p - e*Acal."""
        n = self.n
        g, p = y_mag[:n], y_mag[n:]
        pot = VectorPotential(self.chart)
        p_ext = p - charge * pot.coordinate_form(g)
        return np.concatenate([[g0], g, [-charge], p_ext])


class VectorPotential:
    """A_a(g) = -eta0_a(g) and Acal_i = A_a sigma^a_i (gauge phi = 0)."""

    def __init__(self, chart: GroupChart):
        if chart.eta0 is None:
            raise MissingChartData(f"chart {chart.name!r} has no central field data")
        self.chart = chart
        self.C = _structure_array(chart.algebra)
        self.F = _cochain_array(chart.cocycle)

    @property
    def is_global(self) -> bool:
        return self.chart.potential_global

    def cochain_form(self, g) -> np.ndarray:
        return -self.chart.field("eta0", g)

    def coordinate_form(self, g) -> np.ndarray:
        return self.cochain_form(g) @ self.chart.field("sigma", g)

    def residual(self, g, numeric: bool = False) -> float:
        """max |eta_a A_b - eta_b A_a - C^c_ab A_c - F_ab| at g."""
        eta = self.chart.field("eta", g)
        dA = -self.chart.derivative("eta0", g, numeric)
        D = eta @ dA
        A = self.cochain_form(g)
        return float(np.max(np.abs(D - D.T - self.C @ A - self.F)))


def vector_potential(chart: GroupChart) -> VectorPotential:
    return VectorPotential(chart)


class IntegralsOfMotion:
    """xi^(e)_a(g, p) = xi_a^i(g) p_i + e f_a(g), f_a = -xi0_a - Ad_a^b eta0_b."""

    def __init__(self, chart: GroupChart, charge: float):
        for name in ("xi", "xi0", "eta0", "Ad"):
            if getattr(chart, name) is None:
                raise MissingChartData(f"chart {chart.name!r} does not supply {name}")
        self.chart = chart
        self.charge = float(charge)
        self.n = chart.dim

    def shift(self, g) -> np.ndarray:
        c = self.chart
        return -c.field("xi0", g) - c.field("Ad", g) @ c.field("eta0", g)

    def values(self, g, p) -> np.ndarray:
        return self.chart.field("xi", g) @ p + self.charge * self.shift(g)

    def __call__(self, y) -> np.ndarray:
        return self.values(y[: self.n], y[self.n :])

    def gradients(self, g, p):
        """(d xi_a / d g^k, d xi_a / d p_i) as arrays indexed [a, k] and [a, i]."""
        c = self.chart
        dxi = c.derivative("xi", g)
        dshift = -(
            c.derivative("xi0", g).T
            + np.einsum("kab,b->ak", c.derivative("Ad", g), c.field("eta0", g))
            + c.field("Ad", g) @ c.derivative("eta0", g).T
        )
        dg = np.einsum("kai,i->ak", dxi, p) + self.charge * dshift
        return dg, c.field("xi", g)


def integrals_of_motion(chart: GroupChart, e: float) -> IntegralsOfMotion:
    return IntegralsOfMotion(chart, e)


def poisson_bracket(field_tensor, charge, dphi_g, dphi_p, dpsi_g, dpsi_p) -> float:
    """Deformed bracket with {p_i, g^j} = delta, {p_i, p_j} = e F_ij."""
    return float(dphi_p @ dpsi_g - dphi_g @ dpsi_p + charge * dphi_p @ field_tensor @ dpsi_p)


def bracket_audit(chart: GroupChart, e: float, points) -> float:
    """max |{xi_a, xi_b} - (C^c_ab xi_c - e F_ab)| over phase points (g, p)."""
    ints = IntegralsOfMotion(chart, e)
    flow = MagneticFlow(chart, Metric.identity(chart.dim), e)
    C = _structure_array(chart.algebra)
    F = _cochain_array(chart.cocycle)
    n = chart.dim
    worst = 0.0
    for y in points:
        y = np.asarray(y, dtype=float)
        g, p = y[:n], y[n:]
        vals = ints.values(g, p)
        dg, dp = ints.gradients(g, p)
        Fij = flow.field_tensor(g)
        for a in range(n):
            for b in range(a + 1, n):
                lhs = poisson_bracket(Fij, e, dg[a], dp[a], dg[b], dp[b])
                rhs = float(C[a, b] @ vals) - e * F[a, b]
                worst = max(worst, abs(lhs - rhs))
    return worst


def magnetic_jacobiator(chart: GroupChart, e: float, g) -> float:
    """Largest cyclic sum e(d_i F_jk + d_j F_ki + d_k F_ij) at g."""
    flow = MagneticFlow(chart, Metric.identity(chart.dim), e)
    from .charts import numeric_derivative

    dF = numeric_derivative(flow.field_tensor, np.asarray(g, dtype=float))
    cyc = dF + np.transpose(dF, (1, 2, 0)) + np.transpose(dF, (2, 0, 1))
    return float(np.max(np.abs(e * cyc)))
