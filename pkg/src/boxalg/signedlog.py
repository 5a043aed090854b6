"""Sign-and-log-magnitude arithmetic: the stable carrier for odd-power sums.

Raising rationals to the power 2p+1 overflows any fixed-width float long
before p reaches useful values, so every finite-index computation in this
package runs on ``SignedLog`` values: a sign in {-1, 0, +1} plus the natural
log of the magnitude. The zero element is (sign 0, logmag -inf).

Exact cancellation is the whole point of the limit algebra, and float logs
destroy exact magnitude ties (two equal rational magnitudes reached through
different log additions differ in the last ulp). Values built from rationals
therefore carry their exact magnitude alongside the float log; products
propagate it, and ``phi_p_sum`` groups by the exact magnitude whenever every
input has one. Equal magnitudes of opposite sign then cancel bit-exactly at
every p. Float-born values fall back to a relative logmag tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError

#: relative tolerance for magnitude ties between float-born values
#: (applied to the difference of logmags, scaled by max(1, |logmag|))
DEFAULT_TIE_TOL = 1e-12


def _log_abs_fraction(r: Fraction) -> float:
    # math.log accepts arbitrary-precision ints, so huge rationals are fine
    return math.log(abs(r.numerator)) - math.log(r.denominator)


def check_p(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p < 0:
        raise DomainError(f"p must be a nonnegative integer, got {p!r}")
    return p


def odd_exponent(p: int) -> int:
    """The derived odd exponent 2p+1 for a validated index p."""
    return 2 * check_p(p) + 1


class SignedLog:
    """An extended real as (sign, log of magnitude), optionally exact.

    ``exact`` is the value as a Fraction when it is known exactly (inputs
    built from rationals, and products of such inputs); None otherwise.
    """

    __slots__ = ("sign", "logmag", "exact")

    def __init__(self, sign: int, logmag: float, exact: Fraction | None = None):
        if sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {sign!r}")
        if (sign == 0) != (logmag == -math.inf):
            raise DomainError("sign 0 and logmag -inf must occur together")
        if exact is not None:
            if (exact == 0) != (sign == 0):
                raise DomainError("exact value inconsistent with sign")
            if exact != 0 and (exact > 0) != (sign > 0):
                raise DomainError("exact value inconsistent with sign")
        self.sign = sign
        self.logmag = logmag
        self.exact = exact

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(0, -math.inf, Fraction(0))

    @classmethod
    def from_rational(cls, value) -> "SignedLog":
        r = value if isinstance(value, Fraction) else Fraction(value)
        if r == 0:
            return cls.zero()
        sign = 1 if r > 0 else -1
        return cls(sign, _log_abs_fraction(r), r)

    @classmethod
    def from_float(cls, value: float) -> "SignedLog":
        if value == 0.0:
            return cls.zero()
        if math.isnan(value) or math.isinf(value):
            raise DomainError(f"cannot represent {value!r}")
        sign = 1 if value > 0 else -1
        return cls(sign, math.log(abs(value)))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.logmag,
                         None if self.exact is None else -self.exact)

    def __mul__(self, other: "SignedLog") -> "SignedLog":
        if not isinstance(other, SignedLog):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return SignedLog.zero()
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact * other.exact
        return SignedLog(self.sign * other.sign,
                         self.logmag + other.logmag, exact)

    def __truediv__(self, other: "SignedLog") -> "SignedLog":
        if not isinstance(other, SignedLog):
            return NotImplemented
        if other.sign == 0:
            raise DomainError("division by the zero element")
        if self.sign == 0:
            return SignedLog.zero()
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact / other.exact
        return SignedLog(self.sign * other.sign,
                         self.logmag - other.logmag, exact)

    def root(self, q: int) -> "SignedLog":
        """The q-th root for odd q (sign preserved); exactness is kept only
        for the zero element."""
        if q < 1 or q % 2 == 0:
            raise DomainError(f"odd positive root required, got {q}")
        if self.sign == 0:
            return SignedLog.zero()
        return SignedLog(self.sign, self.logmag / q)

    def scale_rational(self, r) -> "SignedLog":
        """Multiply by an exact rational factor."""
        return self * SignedLog.from_rational(r)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.logmag)
        except OverflowError:
            return self.sign * math.inf

    def to_fraction(self) -> Fraction | None:
        return self.exact

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"SignedLog({self.exact})"
        return f"SignedLog(sign={self.sign}, logmag={self.logmag:.12g})"


def _lse(logs: Sequence[float]) -> float:
    """log(sum(exp(l))) without overflow; logs is nonempty."""
    m = max(logs)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(l - m) for l in logs))


def _tie(lx: float, ly: float, tol: float) -> bool:
    return abs(lx - ly) <= tol * max(1.0, abs(lx), abs(ly))


def _group_by_magnitude(values: Sequence[SignedLog], tol: float):
    """Net the signs of equal-magnitude values.

    Returns a list of (logmag, net, exact_mag_or_None) with net != 0.
    Grouping is exact when every input carries an exact magnitude, otherwise
    by logmag within ``tol``.
    """
    live = [v for v in values if v.sign != 0]
    if not live:
        return []
    if all(v.exact is not None for v in live):
        buckets: dict[Fraction, list] = {}
        for v in live:
            key = abs(v.exact)
            slot = buckets.get(key)
            if slot is None:
                buckets[key] = [v.logmag, v.sign]
            else:
                slot[1] += v.sign
        return [(logmag, net, mag)
                for mag, (logmag, net) in buckets.items() if net != 0]
    # float path: cluster sorted logmags
    live.sort(key=lambda v: v.logmag)
    groups = []
    cur_log, cur_net = live[0].logmag, live[0].sign
    for v in live[1:]:
        if _tie(v.logmag, cur_log, tol):
            cur_net += v.sign
        else:
            if cur_net != 0:
                groups.append((cur_log, cur_net, None))
            cur_log, cur_net = v.logmag, v.sign
    if cur_net != 0:
        groups.append((cur_log, cur_net, None))
    return groups


def phi_p_sum(xs: Iterable[SignedLog], p: int, *,
              tie_tol: float = DEFAULT_TIE_TOL) -> SignedLog:
    """The odd-power mean sum (sum x_i^(2p+1))^(1/(2p+1)) of SignedLogs.

    Equal magnitudes are netted before exponentiation: x^(2p+1) + (-x)^(2p+1)
    is identically zero for every p, so a fully balanced input returns the
    exact zero element regardless of p. Surviving magnitude groups enter a
    split log-sum-exp (positive and negative parts separately) and the two
    parts are combined by signed subtraction in log domain.
    """
    q = odd_exponent(p)
    values = list(xs)
    groups = _group_by_magnitude(values, tie_tol)
    if not groups:
        return SignedLog.zero()
    pos, neg = [], []
    for logmag, net, _mag in groups:
        term = math.log(abs(net)) + q * logmag
        (pos if net > 0 else neg).append(term)
    if pos and neg:
        lp, ln = _lse(pos), _lse(neg)
        if lp == ln:
            return SignedLog.zero()
        sign = 1 if lp > ln else -1
        hi, lo = max(lp, ln), min(lp, ln)
        total = hi + math.log1p(-math.exp(lo - hi))
    else:
        sign = 1 if pos else -1
        total = _lse(pos or neg)
    exact = None
    if len(groups) == 1:
        logmag, net, mag = groups[0]
        if abs(net) == 1 and mag is not None:
            # single surviving magnitude with net +-1: the root is exact
            exact = mag if sign > 0 else -mag
            return SignedLog(sign, logmag, exact)
    return SignedLog(sign, total / q, exact)


def slog_mul(x: SignedLog, y: SignedLog) -> SignedLog:
    """Product: signs multiply, log magnitudes add."""
    return x * y


def slog_boxplus(x: SignedLog, y: SignedLog, *,
                 tie_tol: float = DEFAULT_TIE_TOL) -> SignedLog:
    """Dominant-magnitude sum on SignedLogs.

    Larger magnitude wins; an equal-magnitude tie keeps the value when the
    signs agree and cancels to the zero element when they differ. Ties are
    exact when both operands carry exact magnitudes.
    """
    if x.sign == 0:
        return y
    if y.sign == 0:
        return x
    if x.exact is not None and y.exact is not None:
        tied = abs(x.exact) == abs(y.exact)
    else:
        tied = _tie(x.logmag, y.logmag, tie_tol)
    if tied:
        return x if x.sign == y.sign else SignedLog.zero()
    return x if x.logmag > y.logmag else y


def psi_ln(value) -> SignedLog:
    """Logarithmic embedding; the sign bit records the branch for negatives."""
    if isinstance(value, float):
        return SignedLog.from_float(value)
    return SignedLog.from_rational(value)


def psi_exp(z: SignedLog) -> float:
    """Inverse of the logarithmic embedding, as a float."""
    return z.to_float()


def slog_roundtrip(r, partner=None, *, rel_tol: float = 1e-12) -> bool:
    """Check psi_exp(psi_ln(r)) == r, and the sum homomorphism when given
    a partner: psi_ln(boxplus(r, partner)) equals psi_ln(r) boxplus'd with
    psi_ln(partner) in log domain."""
    z = psi_ln(r)
    back = psi_exp(z)
    want = float(r)
    if back != want and not math.isclose(back, want, rel_tol=rel_tol):
        return False
    if partner is None:
        return True
    from .core import boxplus  # local import avoids a cycle at module load

    direct = psi_ln(boxplus(Fraction(r), Fraction(partner)))
    viaslog = slog_boxplus(psi_ln(Fraction(r)), psi_ln(Fraction(partner)))
    if direct.sign != viaslog.sign:
        return False
    if direct.sign == 0:
        return True
    return math.isclose(direct.logmag, viaslog.logmag, rel_tol=rel_tol,
                        abs_tol=rel_tol)
