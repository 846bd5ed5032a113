"""Exact dense linear algebra over arbitrary-precision integers and rationals.

Everything here is immutable after construction and every operation is a pure
function, so values can be shared freely across threads.  Determinants use
fraction-free Bareiss elimination, characteristic polynomials use
Faddeev-LeVerrier over exact rationals, and the Smith normal form keeps full
unimodular transforms so callers can recheck U*A*V = D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import InputError

IntLike = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class BigIntMatrix:
    """Dense row-major matrix with arbitrary-precision integer entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InputError("matrix dimensions must be at least 1x1")
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match rows*cols")
        if not all(isinstance(e, int) for e in self.entries):
            raise InputError("BigIntMatrix entries must be ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BigIntMatrix":
        r = len(rows)
        if r == 0:
            raise InputError("no rows given")
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise InputError("ragged rows")
        return cls(r, c, tuple(int(x) for row in rows for x in row))

    @classmethod
    def identity(cls, d: int) -> "BigIntMatrix":
        return cls(d, d, tuple(1 if i == j else 0 for i in range(d) for j in range(d)))

    @classmethod
    def block_diag(cls, blocks: Sequence["BigIntMatrix"]) -> "BigIntMatrix":
        if not blocks:
            raise InputError("block_diag needs at least one block")
        n = sum(b.rows for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            if b.rows != b.cols:
                raise InputError("block_diag blocks must be square")
            for i in range(b.rows):
                for j in range(b.cols):
                    out[off + i][off + j] = b.get(i, j)
            off += b.rows
        return cls.from_rows(out)

    def get(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def mul(self, other: "BigIntMatrix") -> "BigIntMatrix":
        if self.cols != other.rows:
            raise InputError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                out.append(sum(ri[k] * other.get(k, j) for k in range(self.cols)))
        return BigIntMatrix(self.rows, other.cols, tuple(out))

    def sub(self, other: "BigIntMatrix") -> "BigIntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("dimension mismatch in matrix difference")
        return BigIntMatrix(self.rows, self.cols,
                            tuple(a - b for a, b in zip(self.entries, other.entries)))

    def trace(self) -> int:
        if not self.is_square:
            raise InputError("trace of a non-square matrix")
        return sum(self.get(i, i) for i in range(self.rows))

    def to_rational(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(Fraction(e) for e in self.entries))


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major matrix with exact rational entries (Fraction keeps lowest terms)."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InputError("matrix dimensions must be at least 1x1")
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match rows*cols")
        if not all(isinstance(e, Fraction) for e in self.entries):
            raise InputError("RatMatrix entries must be Fractions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[IntLike]]) -> "RatMatrix":
        r = len(rows)
        if r == 0:
            raise InputError("no rows given")
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise InputError("ragged rows")
        return cls(r, c, tuple(_as_fraction(x) for row in rows for x in row))

    @classmethod
    def identity(cls, d: int) -> "RatMatrix":
        return cls(d, d, tuple(Fraction(1 if i == j else 0)
                               for i in range(d) for j in range(d)))

    def get(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise InputError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                out.append(sum((ri[k] * other.get(k, j) for k in range(self.cols)),
                               Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def sub(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("dimension mismatch in matrix difference")
        return RatMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("dimension mismatch in matrix sum")
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: IntLike) -> "RatMatrix":
        c = _as_fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise InputError("trace of a non-square matrix")
        return sum((self.get(i, i) for i in range(self.rows)), Fraction(0))

    def to_bigint(self) -> BigIntMatrix:
        if not self.is_integral:
            raise InputError("matrix has non-integer entries")
        return BigIntMatrix(self.rows, self.cols, tuple(int(e) for e in self.entries))

    def scaled_integer(self) -> tuple:
        """Return (B, L) with B integral and B = L * self."""
        L = lcm(*(e.denominator for e in self.entries)) if self.entries else 1
        B = BigIntMatrix(self.rows, self.cols,
                         tuple(int(e * L) for e in self.entries))
        return B, L

    def is_identity(self) -> bool:
        return self.is_square and all(
            self.get(i, j) == (1 if i == j else 0)
            for i in range(self.rows) for j in range(self.cols))

    def is_scalar(self) -> bool:
        if not self.is_square:
            return False
        c = self.get(0, 0)
        return all(self.get(i, j) == (c if i == j else 0)
                   for i in range(self.rows) for j in range(self.cols))


Matrix = Union[BigIntMatrix, RatMatrix]


def mat_pow(A: Matrix, n: int):
    """A**n by binary exponentiation; A**0 is the identity."""
    if not A.is_square:
        raise InputError("mat_pow needs a square matrix")
    if n < 0:
        raise InputError("mat_pow exponent must be nonnegative")
    result = A.identity(A.rows) if isinstance(A, BigIntMatrix) else RatMatrix.identity(A.rows)
    base = A
    while n:
        if n & 1:
            result = result.mul(base)
        n >>= 1
        if n:
            base = base.mul(base)
    return result


def det_exact(A: BigIntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if not A.is_square:
        raise InputError("determinant of a non-square matrix")
    n = A.rows
    a = A.row_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_rat(A: RatMatrix) -> Fraction:
    """Exact rational determinant (clears denominators, then Bareiss)."""
    if not A.is_square:
        raise InputError("determinant of a non-square matrix")
    B, L = A.scaled_integer()
    return Fraction(det_exact(B), L ** A.rows)


@dataclass(frozen=True)
class SmithForm:
    """U*A*V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , zeros last."""

    D: BigIntMatrix
    U: BigIntMatrix
    V: BigIntMatrix
    rank: int

    def diagonal(self) -> list:
        return [self.D.get(i, i) for i in range(min(self.D.rows, self.D.cols))]


def _smallest_entry(M, t, m, n):
    """Pivot rule: smallest nonzero |entry| in the working submatrix, lowest (row, col) on ties."""
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = M[i][j]
            if v != 0 and (best is None or abs(v) < abs(M[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(A: BigIntMatrix) -> SmithForm:
    m, n = A.rows, A.cols
    M = A.row_lists()
    U = BigIntMatrix.identity(m).row_lists()
    V = BigIntMatrix.identity(n).row_lists()

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in M:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        piv = _smallest_entry(M, t, m, n)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            if M[t][t] < 0:
                negate_row(t)
            p = M[t][t]
            restart = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    if q:
                        add_row(i, t, -q)
                    if M[i][t]:
                        # remainder becomes a strictly smaller pivot
                        swap_rows(i, t)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    if q:
                        add_col(j, t, -q)
                    if M[t][j]:
                        swap_cols(j, t)
                        restart = True
                        break
            if restart:
                continue
            # row/col t clean; force the pivot to divide the rest of the submatrix
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        t += 1

    D = BigIntMatrix.from_rows(M)
    rank = sum(1 for i in range(min(m, n)) if D.get(i, i) != 0)
    return SmithForm(D=D, U=BigIntMatrix.from_rows(U), V=BigIntMatrix.from_rows(V), rank=rank)


def _strip(coeffs: Iterable[int]):
    cs = list(coeffs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order.

    The zero polynomial is stored as (0,) with degree 0 and is_zero True, which
    avoids the -infinity degree convention.
    """

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise InputError("empty coefficient list")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise InputError("IntPolynomial coefficients must be ints")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise InputError("unnormalized coefficients (trailing zeros)")

    @classmethod
    def of(cls, coeffs: Iterable[IntLike]) -> "IntPolynomial":
        return cls(_strip(int(c) for c in coeffs))

    @classmethod
    def x_minus(cls, a: int) -> "IntPolynomial":
        return cls((-a, 1))

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if not self.is_zero else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def __call__(self, x):
        acc = 0 if isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial.of([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial.of([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial((0,))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial.of(out)

    def pow(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise InputError("negative polynomial power")
        result = IntPolynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def reverse(self) -> "IntPolynomial":
        """z^deg * p(1/z); swaps roots with their reciprocals."""
        if self.is_zero:
            return self
        return IntPolynomial.of(tuple(reversed(self.coeffs)))

    def to_fractions(self) -> tuple:
        return tuple(Fraction(c) for c in self.coeffs)


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with exact rational coefficients, ascending degree order."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise InputError("empty coefficient list")
        if not all(isinstance(c, Fraction) for c in self.coeffs):
            raise InputError("RatPolynomial coefficients must be Fractions")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise InputError("unnormalized coefficients (trailing zeros)")

    @classmethod
    def of(cls, coeffs: Iterable[IntLike]) -> "RatPolynomial":
        cs = [_as_fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if not self.is_zero else 0

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_int(self) -> IntPolynomial:
        if not self.is_integral:
            raise InputError("polynomial has non-integer coefficients")
        return IntPolynomial.of(int(c) for c in self.coeffs)

    def clear_denominators(self) -> tuple:
        """Return (q, L) with q integral and q = L * self."""
        L = lcm(*(c.denominator for c in self.coeffs))
        return IntPolynomial.of(int(c * L) for c in self.coeffs), L


def rat_solve(A: RatMatrix, b: Sequence[Fraction]):
    """One exact solution x of A x = b, or None if the system is inconsistent."""
    m, n = A.rows, A.cols
    aug = [list(A.entries[i * n:(i + 1) * n]) + [_as_fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for row, c in enumerate(pivots):
        x[c] = aug[row][n]
    return x


def rat_kernel_basis(A: RatMatrix) -> list:
    """Basis of the right kernel {v : A v = 0} as tuples of Fractions."""
    m, n = A.rows, A.cols
    rows = A.row_lists()
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, c in enumerate(pivots):
            v[c] = -rows[row][fc]
        basis.append(tuple(v))
    return basis


def restrict_to_invariant_subspace(M: RatMatrix, basis: Sequence) -> RatMatrix:
    """Matrix of M on the subspace spanned by ``basis`` (must be M-invariant)."""
    if not basis:
        raise InputError("empty basis")
    n = M.rows
    k = len(basis)
    B = RatMatrix(n, k, tuple(_as_fraction(basis[j][i]) for i in range(n) for j in range(k)))
    cols = []
    for j in range(k):
        image = [sum((M.get(i, l) * basis[j][l] for l in range(n)), Fraction(0))
                 for i in range(n)]
        sol = rat_solve(B, image)
        if sol is None:
            raise InputError("subspace is not invariant under the map")
        cols.append(sol)
    return RatMatrix(k, k, tuple(cols[j][i] for i in range(k) for j in range(k)))


def char_poly(A: Matrix) -> RatPolynomial:
    """det(X*I - A), monic, exact, via Faddeev-LeVerrier over the rationals."""
    if isinstance(A, BigIntMatrix):
        R = A.to_rational()
    else:
        R = A
    if not R.is_square:
        raise InputError("characteristic polynomial of a non-square matrix")
    d = R.rows
    ident = RatMatrix.identity(d)
    # M_1 = A, c_1 = -tr M_1; M_k = A(M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k
    cs = []
    M = R
    for k in range(1, d + 1):
        if k > 1:
            M = R.mul(M.add(ident.scale(cs[-1])))
        c = -M.trace() / k
        cs.append(c)
    ascending = list(reversed(cs)) + [Fraction(1)]
    poly = RatPolynomial.of(ascending)
    if isinstance(A, BigIntMatrix) or R.is_integral:
        assert poly.is_integral, "integer matrix produced non-integer char poly"
    return poly


def poly_at_matrix(p: "RatPolynomial", A: RatMatrix) -> RatMatrix:
    """p(A), exactly (Horner over matrices)."""
    if not A.is_square:
        raise InputError("polynomial of a non-square matrix")
    d = A.rows
    acc = RatMatrix(d, d, tuple(Fraction(0) for _ in range(d * d)))
    ident = RatMatrix.identity(d)
    for c in reversed(p.coeffs):
        acc = acc.mul(A).add(ident.scale(c))
    return acc


def companion_matrix(p: IntPolynomial) -> BigIntMatrix:
    """Integer matrix with characteristic polynomial p (monic, degree >= 1).

    Layout: ones on the subdiagonal, negated ascending coefficients of p in the
    last column.
    """
    if p.is_zero or not p.is_monic:
        raise InputError("companion matrix needs a monic nonzero polynomial")
    d = p.degree
    if d < 1:
        raise InputError("companion matrix needs degree >= 1")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return BigIntMatrix.from_rows(rows)
