"""Scalar algebra of the limit operations.

The central operation is the dominant-magnitude sum ``boxplus``: among the
operands, equal magnitudes of opposite sign cancel exactly, and the largest
surviving magnitude wins. It is idempotent and symmetric but *not*
associative, which is why the n-ary form works on the whole vector at once
(via the net occurrence count ``xi``) instead of folding the binary form.

Two associative envelopes bracket it: the lower and upper semicontinuous
operators (``smile``), where an opposite-sign tie at the top magnitude
resolves to the negative respectively positive extreme instead of
cancelling. Everything is computed over exact rationals; finite-index
power sums live in :mod:`boxalg.signedlog`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .signedlog import SignedLog, phi_p_sum

Scalar = Fraction

LOWER = "lower"
UPPER = "upper"


def as_scalar(value) -> Fraction:
    """Coerce ints, rational strings like '-3/4', and Fractions exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a scalar: {value!r}")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        # floats are accepted but converted exactly (binary expansion)
        return Fraction(value)
    raise DomainError(f"not a scalar: {value!r}")


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    vec = tuple(as_scalar(v) for v in values)
    if not vec:
        raise DomainError("vector must be nonempty")
    return vec


def _resolve_index_set(n: int, indices) -> tuple[int, ...]:
    """Normalize a 1-based index set; None means all of 1..n."""
    if indices is None:
        return tuple(range(1, n + 1))
    idx = tuple(sorted(indices))
    seen = set()
    for i in idx:
        if not isinstance(i, int) or i < 1 or i > n:
            raise DomainError(f"index {i!r} out of range 1..{n}")
        if i in seen:
            raise DomainError(f"duplicate index {i}")
        seen.add(i)
    return idx


def _net_counts(xs: Sequence[Fraction], idx: Sequence[int]):
    """Map |x_i| -> (count of +|x_i|) - (count of -|x_i|), zeros skipped."""
    net: dict[Fraction, int] = {}
    for i in idx:
        v = xs[i - 1]
        if v == 0:
            continue
        m = -v if v < 0 else v
        net[m] = net.get(m, 0) + (1 if v > 0 else -1)
    return net


def xi(xs: Sequence, I, alpha) -> int:
    """Net occurrence count of alpha versus -alpha within positions I."""
    vec = as_vector(xs)
    idx = _resolve_index_set(len(vec), I)
    a = as_scalar(alpha)
    count = 0
    for i in idx:
        if vec[i - 1] == a:
            count += 1
        if vec[i - 1] == -a:
            count -= 1
    return count


def residual_set(xs: Sequence, I=None) -> tuple[int, ...]:
    """Positions whose value survives symmetric cancellation (1-based).

    A position j stays iff the net count of its own value is nonzero; zero
    entries never survive (their net count is identically zero).
    """
    vec = as_vector(xs)
    idx = _resolve_index_set(len(vec), I)
    net = _net_counts(vec, idx)
    keep = []
    for i in idx:
        v = vec[i - 1]
        if v == 0:
            continue
        m = -v if v < 0 else v
        n = net[m]
        if (n > 0 and v > 0) or (n < 0 and v < 0):
            keep.append(i)
    return tuple(keep)


def nary_boxplus(xs: Sequence, I=None) -> Fraction:
    """Dominant surviving magnitude with its net sign; 0 when all balance."""
    if I is None and not xs:
        return Fraction(0)
    vec = as_vector(xs)
    idx = _resolve_index_set(len(vec), I)
    net = _net_counts(vec, idx)
    best = None
    for m, n in net.items():
        if n != 0 and (best is None or m > best):
            best = m
    if best is None:
        return Fraction(0)
    return best if net[best] > 0 else -best


def boxplus(x, y) -> Fraction:
    """Binary dominant-magnitude sum; an exact tie averages (x, -x -> 0)."""
    a, b = as_scalar(x), as_scalar(y)
    ma, mb = abs(a), abs(b)
    if ma > mb:
        return a
    if ma < mb:
        return b
    return (a + b) / 2


def boxminus(x, y) -> Fraction:
    """boxplus(x, -y)."""
    return boxplus(as_scalar(x), -as_scalar(y))


def _check_mode(mode: str) -> str:
    if mode not in (LOWER, UPPER):
        raise DomainError(f"mode must be 'lower' or 'upper', got {mode!r}")
    return mode


def smile(xs: Iterable, mode: str) -> Fraction:
    """Semicontinuous envelope of the dominant-magnitude sum.

    Let M be the largest magnitude present. If M = 0 (or the input is
    empty), the result is 0. If both +M and -M occur, the tie resolves to
    -M in lower mode and +M in upper mode; otherwise the single extreme of
    magnitude M is returned in both modes. Associative, so the n-ary value
    equals any fold of the binary operation.
    """
    _check_mode(mode)
    vec = tuple(as_scalar(v) for v in xs)
    if not vec:
        return Fraction(0)
    m = max(abs(v) for v in vec)
    if m == 0:
        return Fraction(0)
    has_pos = m in vec
    has_neg = -m in vec
    if has_pos and has_neg:
        return -m if mode == LOWER else m
    return m if has_pos else -m


def smile_binary(u, v, mode: str) -> Fraction:
    """Binary form of :func:`smile`; provided for fold identities."""
    return smile((u, v), mode)


def inner(x: Sequence, y: Sequence, flavor: str = "limit", p: int | None = None):
    """Componentwise products aggregated per flavor.

    flavor 'limit' -> nary_boxplus of the products (Fraction);
    'lower'/'upper' -> smile of the products (Fraction);
    'p' -> finite-index power sum of the products (SignedLog), p required.
    """
    vx, vy = as_vector(x), as_vector(y)
    if len(vx) != len(vy):
        raise DomainError(f"length mismatch: {len(vx)} vs {len(vy)}")
    products = tuple(a * b for a, b in zip(vx, vy))
    if flavor == "limit":
        return nary_boxplus(products)
    if flavor in (LOWER, UPPER):
        return smile(products, flavor)
    if flavor == "p":
        if p is None:
            raise DomainError("flavor 'p' requires the index p")
        return phi_p_sum([SignedLog.from_rational(t) for t in products], p)
    raise DomainError(f"unknown flavor {flavor!r}")
