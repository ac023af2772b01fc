"""Integrability and simulation of magnetic geodesic flows on Lie groups."""

from .cohomology import (
    TwoCochain,
    cocycle_basis,
    cohomology_index,
    cohomology_report,
    is_cocycle,
    is_integrable,
    kernel,
    trivial_cocycle,
)
from .extension import central_extension
from .lie_core import LieAlgebra, algebra_index, validate_algebra

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra",
    "TwoCochain",
    "algebra_index",
    "central_extension",
    "cocycle_basis",
    "cohomology_index",
    "cohomology_report",
    "is_cocycle",
    "is_integrable",
    "kernel",
    "trivial_cocycle",
    "validate_algebra",
]
