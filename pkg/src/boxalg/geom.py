"""Hyperplanes through n points under the limit algebra.

The points sit as the columns of a square matrix V. Coefficient i of the
hyperplane is the limit determinant of V with row i overwritten by ones,
the right-hand side is the limit determinant of V itself, and membership
is the usual sandwich: the lower envelope of the componentwise products
must not exceed the right-hand side, the upper envelope must reach it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import LOWER, UPPER, as_vector, smile
from .errors import DegenerateConfigurationError, DomainError
from .linalg import DEFAULT_DET_CAP, BoxMatrix, BoxVector, det_inf


class LimitHyperplane:
    """Sandwich-defined hyperplane: lower(coeffs*x) <= rhs <= upper(coeffs*x)."""

    __slots__ = ("coeffs", "rhs")

    def __init__(self, coeffs: Sequence, rhs):
        self.coeffs = as_vector(coeffs)
        self.rhs = Fraction(rhs)
        if self.rhs == 0:
            raise DomainError("hyperplane right-hand side must be nonzero")
        if all(c == 0 for c in self.coeffs):
            raise DomainError("hyperplane coefficients must not all vanish")

    def __repr__(self) -> str:
        terms = " , ".join(str(c) for c in self.coeffs)
        return f"LimitHyperplane(({terms}) ; {self.rhs})"


def hyperplane_through(points: Sequence[Sequence],
                       cap: int = DEFAULT_DET_CAP) -> LimitHyperplane:
    """Hyperplane through n points of length n (points become columns)."""
    pts = [as_vector(pt) for pt in points]
    n = len(pts)
    if n == 0 or any(len(p) != n for p in pts):
        raise DomainError(f"need n points of length n, got lengths "
                          f"{[len(p) for p in pts]}")
    V = BoxMatrix.from_columns(pts)
    rhs = det_inf(V, cap)
    if rhs == 0:
        raise DegenerateConfigurationError(
            "the points are degenerate: the limit determinant vanishes"
        )
    rows = V.to_rows()
    ones = tuple(Fraction(1) for _ in range(n))
    coeffs = tuple(
        det_inf(BoxMatrix(rows[:i] + (ones,) + rows[i + 1:]), cap)
        for i in range(n)
    )
    return LimitHyperplane(coeffs, rhs)


def hyperplane_contains(H: LimitHyperplane, x: Sequence) -> bool:
    vec = as_vector(x)
    if len(vec) != len(H.coeffs):
        raise DomainError(f"point has length {len(vec)}, expected {len(H.coeffs)}")
    products = tuple(c * v for c, v in zip(H.coeffs, vec))
    return smile(products, LOWER) <= H.rhs <= smile(products, UPPER)
