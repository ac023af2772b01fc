from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..exact import as_fraction, inverse, matmul, identity


@dataclass(frozen=True)
class Metric:
    """Nondegenerate symmetric form G_ab on the algebra and its exact inverse.

    No positivity is required; pseudo-Riemannian metrics are fine.
    """

    G: tuple[tuple[Fraction, ...], ...]
    Ginv: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Metric":
        G = [[as_fraction(x) for x in row] for row in rows]
        n = len(G)
        if any(len(row) != n for row in G):
            raise ValueError("metric must be square")
        if any(G[i][j] != G[j][i] for i in range(n) for j in range(n)):
            raise ValueError("metric must be symmetric")
        try:
            Gi = inverse(G)
        except ZeroDivisionError:
            raise ValueError("metric is degenerate") from None
        assert matmul(G, Gi) == identity(n)
        return cls(tuple(map(tuple, G)), tuple(map(tuple, Gi)))

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls.from_rows(identity(n))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Metric":
        n = len(entries)
        return cls.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.G)

    def inverse_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.Ginv])
