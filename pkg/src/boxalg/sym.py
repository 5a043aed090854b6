"""Balance-pair semiring and the signed-log comparison structure.

A pair (plus, minus) of nonnegative rationals carries a sign class:
positive when plus dominates, negative when minus does, balanced on a
tie. Addition is componentwise max, multiplication crosses the
components like a sign rule, and the balance relation compares the
cross maxima. The associated determinant is associative, which is what
a Cramer theory would need, but it pays for that by going balanced
exactly when the dominant permutation-product magnitude is reached with
both parities, even when the limit determinant itself survives.

The signed-log half of this module is the numeric carrier used across
the library; it lives in :mod:`boxalg.signedlog` and is re-exported here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .core import LOWER, UPPER, as_scalar, smile
from .errors import CapacityError, DomainError
from .linalg import DEFAULT_DET_CAP, as_matrix, signed_permutations
from .signedlog import (  # noqa: F401  (re-exported API)
    SignedLog,
    psi_exp,
    psi_ln,
    slog_boxplus,
    slog_mul,
    slog_roundtrip,
)


class SPair(NamedTuple):
    plus: Fraction
    minus: Fraction

    @property
    def is_positive(self) -> bool:
        return self.minus < self.plus

    @property
    def is_negative(self) -> bool:
        return self.plus < self.minus

    @property
    def is_balanced(self) -> bool:
        return self.plus == self.minus


def s_pair(plus, minus) -> SPair:
    p, m = as_scalar(plus), as_scalar(minus)
    if p < 0 or m < 0:
        raise DomainError(f"pair components must be nonnegative, got ({p}, {m})")
    return SPair(p, m)


def s_embed(value) -> SPair:
    """A real scalar as a pair: magnitude on the side matching its sign."""
    v = as_scalar(value)
    return SPair(v, Fraction(0)) if v >= 0 else SPair(Fraction(0), -v)


def s_add(x: SPair, y: SPair) -> SPair:
    x, y = s_pair(*x), s_pair(*y)
    return SPair(max(x.plus, y.plus), max(x.minus, y.minus))


def s_mul(t: SPair, x: SPair) -> SPair:
    t, x = s_pair(*t), s_pair(*x)
    return SPair(
        max(t.plus * x.plus, t.minus * x.minus),
        max(t.plus * x.minus, t.minus * x.plus),
    )


def balanced(x: SPair, y: SPair) -> bool:
    x, y = s_pair(*x), s_pair(*y)
    return max(x.plus, y.minus) == max(y.plus, x.minus)


S_ONE = SPair(Fraction(1), Fraction(0))
S_ZERO = SPair(Fraction(0), Fraction(0))


def s_det(rows: Sequence[Sequence[SPair]], cap: int = DEFAULT_DET_CAP) -> SPair:
    """Permutation expansion with parity as component swap.

    Even permutations contribute their product pair as is; odd ones
    contribute it with plus and minus exchanged (the semiring's negation).
    """
    data = [tuple(s_pair(*x) for x in r) for r in rows]
    n = len(data)
    if n == 0 or any(len(r) != n for r in data):
        raise DomainError("square matrix of pairs required")
    if n > cap:
        raise CapacityError(
            f"pair determinant on a {n}x{n} matrix exceeds the size cap {cap}"
        )
    acc = S_ZERO
    for perm, sign in signed_permutations(n):
        prod = S_ONE
        for i, j in enumerate(perm):
            prod = s_mul(prod, data[i][j])
        if sign < 0:
            prod = SPair(prod.minus, prod.plus)
        acc = s_add(acc, prod)
    return acc


def s_embed_matrix(A) -> tuple[tuple[SPair, ...], ...]:
    """Entrywise embedding of a rational matrix into pairs."""
    M = as_matrix(A)
    return tuple(tuple(s_embed(v) for v in row) for row in M.to_rows())


def v_map(x: SPair) -> Fraction:
    """Collapse a pair to its signed representative (balanced goes to 0)."""
    x = s_pair(*x)
    if x.is_positive:
        return x.plus
    if x.is_negative:
        return -x.minus
    return Fraction(0)


def v_identity_check(xs: Iterable[SPair]) -> bool:
    """Does collapsing commute with pair addition through the envelopes?

    Compares v_map of the pair sum against the average of the upper and
    lower envelopes of the collapsed values. The identity holds whenever
    the dominant pairs are strictly signed; a dominant balanced pair can
    break it, and this check reports that honestly.
    """
    pairs = [s_pair(*x) for x in xs]
    if not pairs:
        return True
    total = pairs[0]
    for x in pairs[1:]:
        total = s_add(total, x)
    values = [v_map(x) for x in pairs]
    rhs = (smile(values, UPPER) + smile(values, LOWER)) / 2
    return v_map(total) == rhs
