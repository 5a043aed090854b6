"""Matrices and determinants over the limit algebra.

The determinant here is the usual signed sum over permutations, except the
sum is the dominant-magnitude operation from :mod:`boxalg.core` (or one of
its semicontinuous envelopes, or a finite-index power sum). All of them
consume the same multiset of signed permutation products, so that multiset
is generated once (Heap's algorithm, sign flipped per swap) and shared.

Work grows as n!, so determinant-flavored operations take a size cap and
raise :class:`~boxalg.errors.CapacityError` past it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import LOWER, UPPER, as_scalar, as_vector, nary_boxplus, smile
from .errors import CapacityError, DomainError
from .signedlog import SignedLog, phi_p_sum

BoxVector = tuple[Fraction, ...]

DEFAULT_DET_CAP = 9


class BoxMatrix:
    """Immutable rational matrix with 1-based element helpers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(as_vector(r) for r in rows)
        if not data:
            raise DomainError("matrix must have at least one row")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DomainError("rows have inconsistent lengths")
        self._rows = data

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable]) -> "BoxMatrix":
        cdata = tuple(as_vector(c) for c in cols)
        if not cdata:
            raise DomainError("matrix must have at least one column")
        return cls(zip(*cdata))

    @classmethod
    def identity(cls, n: int) -> "BoxMatrix":
        if n < 1:
            raise DomainError(f"identity size must be positive, got {n}")
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> BoxVector:
        self._check_row(i)
        return self._rows[i - 1]

    def col(self, j: int) -> BoxVector:
        self._check_col(j)
        return tuple(r[j - 1] for r in self._rows)

    def entry(self, i: int, j: int) -> Fraction:
        self._check_row(i)
        self._check_col(j)
        return self._rows[i - 1][j - 1]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entry(*ij)

    def minor(self, i: int, j: int) -> "BoxMatrix":
        """Submatrix with row i and column j removed (1-based)."""
        self._check_row(i)
        self._check_col(j)
        if self.rows < 2 or self.cols < 2:
            raise DomainError("minor needs at least a 2x2 matrix")
        return BoxMatrix(
            tuple(v for cc, v in enumerate(r, start=1) if cc != j)
            for rr, r in enumerate(self._rows, start=1)
            if rr != i
        )

    def to_rows(self) -> tuple[BoxVector, ...]:
        return self._rows

    def _check_row(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rows:
            raise DomainError(f"row index {i!r} out of range 1..{self.rows}")

    def _check_col(self, j: int) -> None:
        if not isinstance(j, int) or not 1 <= j <= self.cols:
            raise DomainError(f"column index {j!r} out of range 1..{self.cols}")

    def __eq__(self, other) -> bool:
        return isinstance(other, BoxMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self._rows)
        return f"BoxMatrix[{body}]"


def as_matrix(value) -> BoxMatrix:
    return value if isinstance(value, BoxMatrix) else BoxMatrix(value)


def signed_permutations(n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (permutation of 0..n-1, parity sign) via Heap's algorithm."""
    perm = list(range(n))
    sign = 1
    yield tuple(perm), sign
    c = [0] * n
    i = 0
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                perm[0], perm[i] = perm[i], perm[0]
            else:
                perm[c[i]], perm[i] = perm[i], perm[c[i]]
            sign = -sign
            yield tuple(perm), sign
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1


def _check_square(A: BoxMatrix, what: str) -> int:
    if not A.is_square:
        raise DomainError(f"{what} needs a square matrix, got {A.rows}x{A.cols}")
    return A.rows


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapacityError(
            f"{what} on a {n}x{n} matrix exceeds the size cap {cap} "
            f"({n}! permutation products)"
        )


def permutation_products(A, cap: int = DEFAULT_DET_CAP) -> tuple[Fraction, ...]:
    """The n! signed products sgn(s) * prod_i a[i, s(i)], in Heap order."""
    M = as_matrix(A)
    n = _check_square(M, "determinant")
    _check_cap(n, cap, "determinant")
    rows = M.to_rows()
    out = []
    for perm, sign in signed_permutations(n):
        prod = Fraction(sign)
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if prod == 0:
                break
        out.append(prod)
    return tuple(out)


def det_inf(A, cap: int = DEFAULT_DET_CAP) -> Fraction:
    """Limit determinant: dominant-magnitude sum of the signed products."""
    return nary_boxplus(permutation_products(A, cap))


def det_inf_reg(A, mode: str, cap: int = DEFAULT_DET_CAP) -> Fraction:
    """Lower or upper regularized determinant (smile over the products)."""
    return smile(permutation_products(A, cap), mode)


def det_p(A, p: int, cap: int = DEFAULT_DET_CAP) -> SignedLog:
    """Finite-index determinant as a signed log value.

    Exact cancellation between products of equal magnitude and opposite
    sign happens before any exponentiation, so a balanced product multiset
    gives an exact zero at every p.
    """
    terms = [SignedLog.from_rational(t) for t in permutation_products(A, cap)]
    return phi_p_sum(terms, p)


def cofactor_inf(A, i: int, j: int, cap: int = DEFAULT_DET_CAP) -> Fraction:
    M = as_matrix(A)
    n = _check_square(M, "cofactor")
    if n < 2:
        raise DomainError("cofactor needs at least a 2x2 matrix")
    sub = det_inf(M.minor(i, j), cap)
    return sub if (i + j) % 2 == 0 else -sub


def replace_column(A, i: int, b: Sequence) -> BoxMatrix:
    """Copy of A with column i (1-based) replaced by the vector b."""
    M = as_matrix(A)
    M._check_col(i)
    vec = as_vector(b)
    if len(vec) != M.rows:
        raise DomainError(f"column length {len(vec)} != row count {M.rows}")
    return BoxMatrix(
        tuple(vec[r] if c == i - 1 else v for c, v in enumerate(row))
        for r, row in enumerate(M.to_rows())
    )


def matmul_limit(A, B, mode: str = "exact") -> BoxMatrix:
    """Matrix product where entry sums use the limit algebra.

    mode 'exact' aggregates each entry's products with the dominant-
    magnitude sum; 'lower'/'upper' use the corresponding envelope.
    Rectangular operands are fine as long as the inner dimensions agree.
    """
    MA, MB = as_matrix(A), as_matrix(B)
    if MA.cols != MB.rows:
        raise DomainError(
            f"inner dimensions differ: {MA.rows}x{MA.cols} times {MB.rows}x{MB.cols}"
        )
    if mode == "exact":
        agg = nary_boxplus
    elif mode in (LOWER, UPPER):
        def agg(ts, _m=mode):
            return smile(ts, _m)
    else:
        raise DomainError(f"mode must be 'exact', 'lower' or 'upper', got {mode!r}")
    rows = []
    for i in range(1, MA.rows + 1):
        r = MA.row(i)
        rows.append(
            tuple(
                agg(tuple(r[k] * MB.entry(k + 1, j) for k in range(MA.cols)))
                for j in range(1, MB.cols + 1)
            )
        )
    return BoxMatrix(rows)


def matvec_limit(A, x: Sequence, mode: str = "exact") -> BoxVector:
    """Matrix-vector product under :func:`matmul_limit` semantics."""
    col = matmul_limit(A, BoxMatrix.from_columns([as_vector(x)]), mode)
    return col.col(1)


def wedge_eval(vs: Sequence[Sequence], cap: int = DEFAULT_DET_CAP) -> Fraction:
    """Limit determinant of the matrix whose columns are the given vectors."""
    return det_inf(BoxMatrix.from_columns(vs), cap)
