from .charts import GroupChart, chart_audit, numeric_derivative
from .flows import (
    CoadjointState,
    ExtendedFlow,
    IntegralsOfMotion,
    MagneticFlow,
    PhaseState,
    ReducedFlow,
    VectorPotential,
    bracket_audit,
    coadjoint_from_phase,
    integrals_of_motion,
    magnetic_flow_rhs,
    magnetic_jacobiator,
    poisson_bracket,
    reduced_rhs,
    vector_potential,
)
from .integrate import Trajectory, closed_form_torus, drift, integrate
from .metric import Metric

__all__ = [
    "CoadjointState",
    "ExtendedFlow",
    "GroupChart",
    "IntegralsOfMotion",
    "MagneticFlow",
    "Metric",
    "PhaseState",
    "ReducedFlow",
    "Trajectory",
    "VectorPotential",
    "bracket_audit",
    "chart_audit",
    "closed_form_torus",
    "coadjoint_from_phase",
    "drift",
    "integrals_of_motion",
    "integrate",
    "magnetic_flow_rhs",
    "magnetic_jacobiator",
    "numeric_derivative",
    "poisson_bracket",
    "reduced_rhs",
    "vector_potential",
]
