"""Explicit group charts: the solvable g7 group with cocycle parameters
(alpha, beta, gamma) and the flat torus with a constant field.

g7 has [e1, e4] = [e2, e4] = e4 and the cocycle
F = alpha e^1^e^2 + beta e^1^e^3 + gamma e^2^e^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ..cohomology import TwoCochain
from ..errors import EntryNotFound
from ..exact import as_fraction, format_fraction
from ..extension import CasimirCandidate, CentralExtension, central_extension, center_casimir
from ..lie_core import LieAlgebra, validate_algebra
from ..dynamics.charts import GroupChart

G7_BOX = 50.0


def g7_algebra() -> LieAlgebra:
    return validate_algebra("g7", 4, {(1, 4): {4: 1}, (2, 4): {4: 1}})


def g7_cocycle(alpha, beta, gamma) -> TwoCochain:
    return TwoCochain.from_terms(4, {(1, 2): alpha, (1, 3): beta, (2, 3): gamma})


def g7_chart(alpha=1, beta=1, gamma=1) -> GroupChart:
    a, b, c = (float(as_fraction(x)) for x in (alpha, beta, gamma))

    def eta(g):
        return np.diag([-1.0, -1.0, -1.0, -math.exp(-(g[0] + g[1]))])

    def d_eta(g):
        d = np.zeros((4, 4, 4))
        d[0, 3, 3] = d[1, 3, 3] = math.exp(-(g[0] + g[1]))
        return d

    def sigma(g):
        return np.diag([-1.0, -1.0, -1.0, -math.exp(g[0] + g[1])])

    def d_sigma(g):
        d = np.zeros((4, 4, 4))
        d[0, 3, 3] = d[1, 3, 3] = -math.exp(g[0] + g[1])
        return d

    def xi(g):
        m = np.eye(4)
        m[0, 3] = m[1, 3] = -g[3]
        return m

    def d_xi(g):
        d = np.zeros((4, 4, 4))
        d[3, 0, 3] = d[3, 1, 3] = -1.0
        return d

    def eta0(g):
        return np.array([0.0, a * g[0], b * g[0] + c * g[1], 0.0])

    def d_eta0(g):
        d = np.zeros((4, 4))
        d[0] = [0.0, a, b, 0.0]
        d[1] = [0.0, 0.0, c, 0.0]
        return d

    def xi0(g):
        return np.array([-(a * g[1] + b * g[2]), -c * g[2], 0.0, 0.0])

    def d_xi0(g):
        d = np.zeros((4, 4))
        d[1, 0] = -a
        d[2] = [-b, -c, 0.0, 0.0]
        return d

    def Ad(g):
        s = math.exp(g[0] + g[1])
        m = np.eye(4)
        m[0, 3] = m[1, 3] = -g[3] * s
        m[3, 3] = s
        return m

    def d_Ad(g):
        s = math.exp(g[0] + g[1])
        d = np.zeros((4, 4, 4))
        for k in (0, 1):
            d[k, 0, 3] = d[k, 1, 3] = -g[3] * s
            d[k, 3, 3] = s
        d[3, 0, 3] = d[3, 1, 3] = -s
        return d

    return GroupChart(
        name="g7",
        algebra=g7_algebra(),
        cocycle=g7_cocycle(alpha, beta, gamma),
        box=((-G7_BOX, G7_BOX),) * 4,
        eta=eta,
        sigma=sigma,
        xi=xi,
        eta0=eta0,
        xi0=xi0,
        Ad=Ad,
        d_eta=d_eta,
        d_xi=d_xi,
        d_sigma=d_sigma,
        d_eta0=d_eta0,
        d_xi0=d_xi0,
        d_Ad=d_Ad,
        potential_global=True,
        notes=("global coordinates; the box only guards exp overflow",),
    )


def torus_algebra() -> LieAlgebra:
    return validate_algebra("torus", 2, {})


def torus_chart(c=1) -> GroupChart:
    """Coordinates (phi, psi) on the cut square (-pi, pi)^2, F = c e^1^e^2."""
    cf = float(as_fraction(c))
    zero2 = lambda g: np.zeros((2, 2, 2))
    return GroupChart(
        name="torus",
        algebra=torus_algebra(),
        cocycle=TwoCochain.from_terms(2, {(1, 2): c}),
        box=((-math.pi, math.pi), (-math.pi, math.pi)),
        eta=lambda g: -np.eye(2),
        sigma=lambda g: -np.eye(2),
        xi=lambda g: np.eye(2),
        eta0=lambda g: np.array([0.0, cf * g[0]]),
        xi0=lambda g: np.array([-cf * g[1], 0.0]),
        Ad=lambda g: np.eye(2),
        d_eta=zero2,
        d_xi=zero2,
        d_sigma=zero2,
        d_eta0=lambda g: np.array([[0.0, cf], [0.0, 0.0]]),
        d_xi0=lambda g: np.array([[0.0, 0.0], [-cf, 0.0]]),
        d_Ad=zero2,
        potential_global=False,
        notes=("the potential c*phi dpsi lives on the cut chart only; a closed non-exact form has no global potential",),
    )


# Reference formulas as printed for the worked examples. Each takes (g, p, e).

def printed_g7_integrals(alpha, beta, gamma) -> Callable:
    a, b, c = (float(as_fraction(x)) for x in (alpha, beta, gamma))

    def fn(g, p, e):
        return np.array(
            [
                p[0] - g[3] * p[3] + e * (a * g[1] + b * g[2]),
                p[1] - g[3] * p[3] - e * (a * g[0] - c * g[2]),
                p[2] - e * (b * g[0] + c * g[1]),
                p[3],
            ]
        )

    return fn


def printed_g7_potential(alpha, beta, gamma) -> Callable:
    """Coordinate 1-form alpha g1 dg2 + (beta g1 + gamma g2) dg3."""
    a, b, c = (float(as_fraction(x)) for x in (alpha, beta, gamma))
    return lambda g: np.array([0.0, a * g[0], b * g[0] + c * g[1], 0.0])


def printed_torus_integrals(g, p, e):
    return np.array([p[0] - e * g[1], p[1] + e * g[0]])


def corrected_torus_integrals(g, p, e):
    return np.array([p[0] + e * g[1], p[1] - e * g[0]])


def printed_torus_potential(c=1) -> Callable:
    cf = float(as_fraction(c))
    return lambda g: np.array([0.0, cf * g[0]])


def g7_extension(alpha, beta, gamma) -> CentralExtension:
    return central_extension(g7_algebra(), g7_cocycle(alpha, beta, gamma))


def g7_casimirs(alpha, beta) -> dict[str, CasimirCandidate]:
    """Casimirs of the g7 extension on the integrable family beta = gamma.

    Coordinates are (f0, f1, f2, f3, f4). K2 is written in the level-covariant
    form f4^beta exp(-f3/f0); on f0 = 1 it is the printed f4^beta exp(-f3),
    which is also offered verbatim with that domain.
    """
    a, b = as_fraction(alpha), as_fraction(beta)
    bf = float(b)

    def k2(f):
        return float(f[4]) ** bf * math.exp(-float(f[3]) / float(f[0]))

    def k2_grad(f):
        K = k2(f)
        f0, f3, f4 = (float(f[i]) for i in (0, 3, 4))
        return [K * f3 / f0**2, 0.0, 0.0, -K / f0, bf * K / f4]

    def k2v(f):
        return float(f[4]) ** bf * math.exp(-float(f[3]))

    def k2v_grad(f):
        K = k2v(f)
        return [0.0, 0.0, 0.0, -K, bf * K / float(f[4])]

    def log_k2_grad(f):
        return [f[3] / f[0] ** 2, 0, 0, -1 / f[0], b / f[4]]

    positive = lambda f: f[4] > 0 and f[0] != 0
    return {
        "K0": center_casimir(5),
        "K1": CasimirCandidate(
            "K1",
            value=lambda f: b * (f[1] - f[2]) + a * f[3] if isinstance(f[1], Fraction) else float(b) * (f[1] - f[2]) + float(a) * f[3],
            gradient=lambda f: [0, b, -b, a, 0],
        ),
        "K2": CasimirCandidate(
            "K2", k2, k2_grad, positive, "f4 > 0 and f0 != 0"
        ),
        "logK2": CasimirCandidate(
            "logK2",
            value=lambda f: bf * math.log(float(f[4])) - float(f[3]) / float(f[0]),
            gradient=log_k2_grad,
            domain=positive,
            domain_note="f4 > 0 and f0 != 0",
        ),
        "K2_printed": CasimirCandidate(
            "K2_printed", k2v, k2v_grad, lambda f: f[4] > 0 and f[0] == 1, "f4 > 0 and f0 = 1"
        ),
    }


@dataclass(frozen=True)
class ChartEntry:
    id: str
    description: str
    params: dict
    build: Callable[..., GroupChart]
    references: dict = field(default_factory=dict)

    def chart(self, **params) -> GroupChart:
        merged = {**self.params, **params}
        return self.build(**merged)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": "chart",
            "description": self.description,
            "params": {k: format_fraction(as_fraction(v)) for k, v in sorted(self.params.items())},
            "references": sorted(self.references),
        }


def chart_entries() -> list[ChartEntry]:
    return [
        ChartEntry(
            "g7-chart",
            "chart of the g7 group with cocycle alpha e^1^e^2 + beta e^1^e^3 + gamma e^2^e^3",
            {"alpha": 1, "beta": 1, "gamma": 1},
            g7_chart,
            {"potential": printed_g7_potential, "integrals": printed_g7_integrals, "casimirs": g7_casimirs},
        ),
        ChartEntry(
            "torus",
            "flat two-torus with constant field c e^1^e^2",
            {"c": 1},
            torus_chart,
            {
                "potential": printed_torus_potential,
                "integrals_printed": printed_torus_integrals,
                "integrals": corrected_torus_integrals,
            },
        ),
    ]


def get_chart_entry(chart_id: str) -> ChartEntry:
    aliases = {"g7": "g7-chart"}
    chart_id = aliases.get(chart_id, chart_id)
    for c in chart_entries():
        if c.id == chart_id:
            return c
    raise EntryNotFound(chart_id)
