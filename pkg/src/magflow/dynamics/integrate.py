"""Fixed-step RK4 and adaptive RK45 drivers with per-step conservation audits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.integrate import RK45

from ..errors import StepRejection

Audit = Callable[[np.ndarray], object]


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    audits: dict[str, np.ndarray] = field(default_factory=dict)
    values: dict[str, np.ndarray] = field(default_factory=dict)
    kind: str = "phase"

    def max_drift(self) -> dict[str, float]:
        return {k: float(np.max(v)) if len(v) else 0.0 for k, v in self.audits.items()}

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def drift(q, q0) -> float:
    """Largest relative change |q - q0| / max(1, |q0|) over components."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    return float(np.max(np.abs(q - q0) / np.maximum(1.0, np.abs(q0))))


def rk4_step(rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + h / 2, y + h / 2 * k1)
    k3 = rhs(t + h / 2, y + h / 2 * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate(
    rhs: Callable,
    y0,
    t_end: float,
    dt: float,
    method: str = "rk4",
    audits: Mapping[str, Audit] | None = None,
    kind: str = "phase",
    rtol: float = 1e-12,
    atol: float = 1e-12,
) -> Trajectory:
    """Integrate y' = rhs(t, y) on [0, t_end].

    rk4 uses the uniform step t_end / ceil(t_end / dt) so the last sample
    lands on t_end. rk45 is scipy's adaptive Dormand-Prince with dt as the
    largest allowed step.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    audits = dict(audits or {})
    y = np.asarray(y0, dtype=float).copy()
    times = [0.0]
    states = [y.copy()]
    if method == "rk4":
        steps = max(1, math.ceil(t_end / dt - 1e-9)) if t_end > 0 else 0
        h = t_end / steps if steps else 0.0
        for k in range(steps):
            y = rk4_step(rhs, k * h, y, h)
            if not np.all(np.isfinite(y)):
                raise StepRejection(f"non-finite state at t = {(k + 1) * h}")
            times.append((k + 1) * h)
            states.append(y)
    elif method in ("rk45", "rk45-adaptive"):
        if t_end > 0:
            solver = RK45(rhs, 0.0, y, t_end, max_step=dt, rtol=rtol, atol=atol)
            while solver.status == "running":
                msg = solver.step()
                if solver.status == "failed":
                    raise StepRejection(f"adaptive step failed at t = {solver.t}: {msg}")
                times.append(float(solver.t))
                states.append(np.array(solver.y))
    else:
        raise ValueError(f"unknown method {method!r}; use rk4 or rk45")
    S = np.array(states)
    values = {name: np.array([np.asarray(fn(s), dtype=float) for s in S]) for name, fn in audits.items()}
    series = {name: np.array([drift(v, vals[0]) for v in vals]) for name, vals in values.items()}
    return Trajectory(np.array(times), S, series, values, kind)


def closed_form_torus(e: float, initial, t: float) -> np.ndarray:
    """Exact torus solution (phi, psi, p_phi, p_psi) at time t; straight line for e = 0."""
    phi0, psi0, a, b = (float(x) for x in initial)
    if e == 0:
        return np.array([phi0 + a * t, psi0 + b * t, a, b])
    s, c = math.sin(e * t), math.cos(e * t)
    return np.array(
        [
            phi0 + a * s / e + b * (c - 1) / e,
            psi0 - a * (c - 1) / e + b * s / e,
            a * c - b * s,
            a * s + b * c,
        ]
    )
