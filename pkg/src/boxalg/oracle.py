"""Finite-index convergence harness.

Every limit operation in this package is the p -> infinity limit of an
odd-power computation. The sweep evaluates a chosen quantity at each
p in {0, ..., p_max}, compares against the limit-module value, and
reports the gap sequence. Convergence speed depends entirely on the
input's magnitude profile: a repeated dominant magnitude approaches its
limit only like |count|^(1/(2p+1)), so the report carries a near-tie
flag predicting, from the exact magnitude groups, whether the final gap
can be expected to beat the tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import as_scalar, as_vector, nary_boxplus
from .eigen import char_monomials, charpoly_eval, eigen_region, perron_p
from .errors import BoxAlgError, DomainError
from .linalg import (
    BoxMatrix,
    as_matrix,
    det_inf,
    det_p,
    permutation_products,
    replace_column,
)
from .signedlog import SignedLog, odd_exponent, phi_p_sum
from .solve import LimitSystem, cramer_limit_solve

DEFAULT_P_MAX = 20
DEFAULT_TOL = 1e-6
HARD_P_MAX = 64

QUANTITIES = ("sum", "det", "cramer", "hyperplane", "charpoly", "perron")


@dataclass(frozen=True)
class SweepReport:
    quantity: str
    p_values: tuple[int, ...]
    values: tuple            # per-p SignedLog, tuple of SignedLog, or None
    limit: object            # Fraction, tuple of Fraction, or float
    abs_gaps: tuple[float, ...]
    rel_gaps: tuple[float, ...]
    final_gap: float
    final_rel_gap: float
    converged: bool
    near_tie: bool

    def __post_init__(self):
        if list(self.p_values) != sorted(set(self.p_values)):
            raise DomainError("p values must be strictly increasing")


def _magnitude_groups(values: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    """Surviving (magnitude, net sign count) pairs, largest magnitude first."""
    net: dict[Fraction, int] = {}
    for v in values:
        if v == 0:
            continue
        m = abs(v)
        net[m] = net.get(m, 0) + (1 if v > 0 else -1)
    return sorted(((m, c) for m, c in net.items() if c != 0), reverse=True)


def predict_near_tie(values: Sequence[Fraction], p_max: int, tol: float) -> bool:
    """Will the relative gap at p_max plausibly still exceed tol?

    The dominant group reaches its limit like |net|^(1/(2p+1)) and every
    other group decays like (m/m1)^(2p+1); both effects are summed from
    the exact magnitude groups of the value multiset. A balanced multiset
    (no surviving group) is exactly zero at every p and never near-tie.
    """
    groups = _magnitude_groups(values)
    if not groups:
        return False
    q = odd_exponent(p_max)
    (m1, n1), rest = groups[0], groups[1:]
    pred = abs(math.expm1(math.log(abs(n1)) / q))
    lm1 = math.log(m1.numerator) - math.log(m1.denominator)
    for m, c in rest:
        lm = math.log(m.numerator) - math.log(m.denominator)
        pred += math.exp(math.log(abs(c)) + q * (lm - lm1))
    return pred >= tol


def _exact_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Classical determinant by exact fraction elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return det


def _powered(M: BoxMatrix, q: int) -> list[list[Fraction]]:
    return [[v ** q for v in row] for row in M.to_rows()]


def _gap(value: Optional[SignedLog], limit: Fraction) -> float:
    if value is None:
        return math.inf
    return abs(value.to_float() - float(limit))


def _vec_gap(value, limit) -> float:
    if value is None:
        return math.inf
    return max(abs(v.to_float() - float(t)) for v, t in zip(value, limit))


def _wrap_p(p: int, exc: BoxAlgError) -> BoxAlgError:
    return type(exc)(f"at p={p}: {exc}")


def sweep(quantity: str, inputs: dict, p_max: int = DEFAULT_P_MAX,
          tol: float = DEFAULT_TOL) -> SweepReport:
    """Evaluate one quantity over p in {0..p_max} against its limit value.

    Quantities and their inputs:
      sum        {"xs": vector}            limit: dominant-magnitude sum
      det        {"A": matrix}             limit: limit determinant
      cramer     {"A": matrix, "b": vec}   limit: Cramer solution vector
      hyperplane {"points": [...], "x": v} limit: 0 (equation residual)
      charpoly   {"A": matrix, "lam": s}   limit: limit evaluation
      perron     {"A": matrix}             limit: largest region member

    Scalar quantities report |value_p - limit| gaps; vector quantities use
    the sup norm. Relative gaps divide by max(1, scale of the limit); the
    hyperplane residual, whose limit is identically zero, scales by the
    magnitude of the configuration's determinant instead.
    """
    if not isinstance(p_max, int) or p_max < 0:
        raise DomainError(f"p_max must be a nonnegative integer, got {p_max!r}")
    if p_max > HARD_P_MAX:
        raise DomainError(f"p_max {p_max} exceeds the guard {HARD_P_MAX}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if quantity not in QUANTITIES:
        raise DomainError(f"unknown quantity {quantity!r}; pick from {QUANTITIES}")

    ps = tuple(range(p_max + 1))
    values: list = []
    abs_gaps: list[float] = []
    scale = 1.0
    vector_valued = quantity == "cramer"

    if quantity == "sum":
        xs = as_vector(inputs["xs"])
        limit = nary_boxplus(xs)
        near_tie = predict_near_tie(xs, p_max, tol)
        terms = [SignedLog.from_rational(v) for v in xs]
        for p in ps:
            values.append(phi_p_sum(terms, p))

    elif quantity == "det":
        A = as_matrix(inputs["A"])
        prods = permutation_products(A)
        limit = nary_boxplus(prods)
        near_tie = predict_near_tie(prods, p_max, tol)
        for p in ps:
            try:
                values.append(det_p(A, p))
            except BoxAlgError as exc:
                raise _wrap_p(p, exc) from exc

    elif quantity == "cramer":
        A = as_matrix(inputs["A"])
        b = as_vector(inputs["b"])
        report = cramer_limit_solve(LimitSystem(A, b))
        if report.solution is None:
            raise DomainError("limit determinant is zero; no limit solution")
        limit = report.solution
        multisets = [permutation_products(A)] + [
            permutation_products(replace_column(A, i, b))
            for i in range(1, A.rows + 1)
        ]
        near_tie = any(predict_near_tie(ms, p_max, tol) for ms in multisets)
        for p in ps:
            den = det_p(A, p)
            if den.is_zero:
                values.append(None)  # this finite index is singular
                continue
            values.append(tuple(
                det_p(replace_column(A, i, b), p) / den
                for i in range(1, A.rows + 1)
            ))

    elif quantity == "hyperplane":
        pts = [as_vector(pt) for pt in inputs["points"]]
        x = as_vector(inputs["x"])
        V = BoxMatrix.from_columns(pts)
        n = V.rows
        if len(x) != n:
            raise DomainError(f"x has length {len(x)}, expected {n}")
        limit = Fraction(0)
        det_limit = det_inf(V)
        scale = max(1.0, abs(float(det_limit)))
        near_tie = False  # the residual either vanishes exactly or diverges
        ones = tuple(Fraction(1) for _ in range(n))
        rows = V.to_rows()
        for p in ps:
            q = odd_exponent(p)
            W = _powered(V, q)
            total = -_exact_det(W)
            for i in range(n):
                Wi = _powered(BoxMatrix(rows[:i] + (ones,) + rows[i + 1:]), q)
                total += _exact_det(Wi) * x[i] ** q
            residual = SignedLog.from_rational(total).root(q)
            values.append(residual)

    elif quantity == "charpoly":
        A = as_matrix(inputs["A"])
        lam = as_scalar(inputs["lam"])
        ms = char_monomials(A)
        limit = charpoly_eval(ms, lam, "limit")
        vals = [m.coeff * lam ** m.degree for m in ms]
        near_tie = predict_near_tie(vals, p_max, tol)
        for p in ps:
            values.append(charpoly_eval(ms, lam, "p", p=p))

    else:  # perron
        A = as_matrix(inputs["A"])
        region = eigen_region(A)
        if not region:
            raise DomainError("empty spectral region; no limit value")
        limit = max(region, key=float)
        near_tie = False
        for p in ps:
            try:
                rho, _vec = perron_p(A, p)
            except BoxAlgError as exc:
                raise _wrap_p(p, exc) from exc
            values.append(rho)

    if vector_valued:
        scale = max([1.0] + [abs(float(t)) for t in limit])
        abs_gaps = [_vec_gap(v, limit) for v in values]
    else:
        if quantity != "hyperplane":
            scale = max(1.0, abs(float(limit)))
        abs_gaps = [_gap(v, limit) for v in values]

    rel_gaps = [g / scale for g in abs_gaps]
    return SweepReport(
        quantity=quantity,
        p_values=ps,
        values=tuple(values),
        limit=limit,
        abs_gaps=tuple(abs_gaps),
        rel_gaps=tuple(rel_gaps),
        final_gap=abs_gaps[-1],
        final_rel_gap=rel_gaps[-1],
        converged=rel_gaps[-1] < tol,
        near_tie=near_tie,
    )
