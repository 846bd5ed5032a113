"""Rational zeta functions, exponential sums and their bouquet realizations.

Sign conventions, fixed here and used everywhere
------------------------------------------------
A sequence a_1, a_2, ... is an *integer exponential sum* when

    a_n = sum_alpha chi_alpha * (sum of n-th powers of the roots of v_alpha)

with pairwise distinct irreducible monic integer polynomials v_alpha and
nonzero integer exponents chi_alpha.  Writing vt_alpha for the reversal of
v_alpha normalized to constant term 1 (so vt_alpha(z) = prod (1 - lambda z)
over the roots lambda of v_alpha), the zeta function exp(sum a_n z^n / n)
equals

    prod_alpha vt_alpha(z) ** (-chi_alpha)

so positive chi land in the denominator and negative chi in the numerator.
Equivalently a_n = [z^n] of z * d/dz log zeta(z).

The generating function passed to residue_exponents follows the same
indexing: sum_{n >= 1} a_n z^n agrees with the series of u/v (the constant
term of u/v is the model value sum_alpha chi_alpha * deg v_alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    InfiniteValueError,
    InputError,
    NonIntegerResidueError,
    NoRecurrenceError,
    NotSquareFreeError,
)
from .exact_linalg import (
    BigIntMatrix,
    IntPolynomial,
    RatMatrix,
    companion_matrix,
    mat_pow,
    rat_solve,
)
from .polyalg import factor_int, gcd_int, is_squarefree
from .reidemeister import ReidemeisterSequence, is_infinite

__all__ = [
    "RationalFunction",
    "ExponentialSum",
    "BouquetRealization",
    "berlekamp_massey",
    "minimal_recurrence",
    "residue_exponents",
    "zeta_from_sequence",
    "expand",
    "realize_bouquet",
    "power_sums",
]

SequenceLike = Union[Sequence[int], ReidemeisterSequence]


def _finite_values(seq: SequenceLike) -> list:
    if isinstance(seq, ReidemeisterSequence):
        values = seq.values
    else:
        values = seq
    out = []
    for v in values:
        if is_infinite(v):
            raise InfiniteValueError(
                "sequence has an infinite entry; zeta functions need tame input")
        if not isinstance(v, int):
            raise InputError("sequence entries must be integers")
        out.append(v)
    return out


@dataclass(frozen=True)
class RationalFunction:
    """numerator/denominator with integer coefficients, both with constant
    term 1 and no common factor."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    def __post_init__(self):
        if self.numerator.constant != 1 or self.denominator.constant != 1:
            raise InputError("rational function needs constant terms 1")

    def check_coprime(self) -> None:
        if gcd_int(self.numerator, self.denominator).degree != 0:
            raise InputError("numerator and denominator share a factor")


@dataclass(frozen=True)
class ExponentialSum:
    """Terms (v_alpha, chi_alpha): a_n = sum chi_alpha * power_sums(v_alpha, n)."""

    terms: tuple

    def __post_init__(self):
        seen = set()
        for poly, chi in self.terms:
            if not isinstance(poly, IntPolynomial) or not isinstance(chi, int):
                raise InputError("terms must be (IntPolynomial, int) pairs")
            if chi == 0:
                raise InputError("zero exponent term")
            if poly.constant == 0 or not poly.is_monic:
                raise InputError("root polynomials are monic with nonzero constant")
            if poly in seen:
                raise InputError("duplicate root polynomial")
            seen.add(poly)

    def value_at(self, n: int) -> int:
        total = 0
        for poly, chi in self.terms:
            total += chi * power_sums(poly, n)[-1]
        return total

    def values(self, N: int) -> list:
        sums = [(chi, power_sums(poly, N)) for poly, chi in self.terms]
        return [sum(chi * ps[n - 1] for chi, ps in sums) for n in range(1, N + 1)]


@dataclass(frozen=True)
class BouquetRealization:
    """Trace model L(f^n) = tr(a_even^n) - tr(a_odd^n) on a bouquet of
    n1 circles and n2 two-spheres."""

    a_even: BigIntMatrix
    a_odd: BigIntMatrix

    @property
    def n_spheres(self) -> int:
        return self.a_even.rows

    @property
    def n_circles(self) -> int:
        return self.a_odd.rows + 1

    def lefschetz(self, n: int) -> int:
        return mat_pow(self.a_even, n).trace() - mat_pow(self.a_odd, n).trace()

    def lefschetz_values(self, N: int) -> list:
        out = []
        pe = BigIntMatrix.identity(self.a_even.rows)
        po = BigIntMatrix.identity(self.a_odd.rows)
        for _ in range(N):
            pe = pe.mul(self.a_even)
            po = po.mul(self.a_odd)
            out.append(pe.trace() - po.trace())
        return out


def power_sums(poly: IntPolynomial, N: int) -> list:
    """Sums of n-th powers of the roots of a monic polynomial, n = 1..N,
    by Newton's identities (exact integers)."""
    if not poly.is_monic or poly.degree < 1:
        raise InputError("power sums need a monic polynomial of degree >= 1")
    d = poly.degree
    a = poly.coeffs  # ascending, a[d] = 1
    ps: list = []
    for k in range(1, N + 1):
        if k <= d:
            acc = -k * a[d - k]
            for i in range(1, k):
                acc -= a[d - i] * ps[k - i - 1]
        else:
            acc = 0
            for i in range(1, d + 1):
                acc -= a[d - i] * ps[k - i - 1]
        ps.append(acc)
    return ps


def berlekamp_massey(seq: Sequence) -> list:
    """Minimal connection polynomial over Q: returns C (ascending Fractions,
    C[0] = 1, length L+1) with sum_j C[j] * seq[n-j] = 0 for L <= n < len."""
    s = [Fraction(v) for v in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        if 2 * L <= n:
            T = C[:]
            if len(C) < len(B) + m:
                C = C + [Fraction(0)] * (len(B) + m - len(C))
            for i in range(len(B)):
                C[i + m] -= coef * B[i]
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            if len(C) < len(B) + m:
                C = C + [Fraction(0)] * (len(B) + m - len(C))
            for i in range(len(B)):
                C[i + m] -= coef * B[i]
            m += 1
    C = C + [Fraction(0)] * (L + 1 - len(C))
    return C[:L + 1]


def minimal_recurrence(seq: SequenceLike, max_order: Optional[int] = None):
    """Shortest linear recurrence denominator v(z), integer coefficients,
    v(0) = 1; None when no recurrence of order <= max_order fits the window.

    Default max_order is len(seq)//2, the identifiability threshold; callers
    that need the worst-case guarantee should supply windows of length
    2*expected_order + 4.
    """
    values = _finite_values(seq)
    if len(values) < 2:
        raise InputError("need at least two sequence values")
    if max_order is None:
        max_order = len(values) // 2
    C = berlekamp_massey(values)
    if len(C) - 1 > max_order:
        return None
    if any(c.denominator != 1 for c in C):
        # integer exponential sums have integer Fatou-normalized denominators;
        # a fractional fit means the window did not pin down the recurrence
        return None
    v = IntPolynomial.of(int(c) for c in C)
    # exponential sums have no transient (every base is nonzero), so the
    # recurrence must hold from the very first full window; sequences that
    # need a transient are not in the admissible normal form
    L = v.degree
    for j in range(L, len(values)):
        if sum(v.coeffs[i] * values[j - i] for i in range(L + 1)) != 0:
            return None
    return v


def _series_div(num: list, den: Sequence[int], N: int) -> list:
    """First N+1 coefficients of num/den as exact ints; den[0] must be 1."""
    out = []
    for n in range(N + 1):
        c = num[n] if n < len(num) else 0
        for k in range(1, min(n, len(den) - 1) + 1):
            c -= den[k] * out[n - k]
        out.append(c)
    return out


def expand(rf: RationalFunction, N: int) -> list:
    """First N values of the sequence whose zeta function is rf, i.e. the
    coefficients of z * d/dz log rf."""
    if N < 0:
        raise InputError("negative expansion length")

    def logderiv(p: IntPolynomial) -> list:
        zp = [i * c for i, c in enumerate(p.coeffs)]  # z * p'
        return _series_div(zp, p.coeffs, N)

    a = logderiv(rf.numerator)
    b = logderiv(rf.denominator)
    return [a[n] - b[n] for n in range(1, N + 1)]


def _series_coeffs_of_quotient(u: IntPolynomial, v: IntPolynomial, N: int) -> list:
    return _series_div(list(u.coeffs), v.coeffs, N)


def residue_exponents(u: IntPolynomial, v: IntPolynomial) -> ExponentialSum:
    """Exponents chi_alpha per irreducible factor of v for the sequence with
    sum_{n>=1} a_n z^n = series of u/v; exact linear algebra on power sums.

    Errors: v not squarefree (polynomial-times-exponential terms are outside
    the rational-zeta normal form) and non-integer or inconsistent exponents.
    """
    if v.constant != 1:
        raise InputError("recurrence denominator must have constant term 1")
    if gcd_int(u, v).degree != 0:
        raise InputError("u and v must be coprime")
    if v.degree == 0:
        return ExponentialSum(terms=())
    if not is_squarefree(v):
        raise NotSquareFreeError(
            "recurrence denominator has a repeated factor; the sequence is "
            "not a plain integer exponential sum")
    _, factors = factor_int(v)
    tilde = []
    for w, mult in factors:
        assert mult == 1
        if w.constant == -1:
            w = -w
        if w.constant != 1:
            raise InputError("factor of v(0)=1 polynomial must have unit constant")
        tilde.append(w)
    root_polys = [w.reverse() for w in tilde]
    r = v.degree
    a = _series_coeffs_of_quotient(u, v, r)[1:]  # a_1 .. a_r
    sums = [power_sums(p, r) for p in root_polys]
    rows = [[Fraction(sums[j][n]) for j in range(len(root_polys))]
            for n in range(r)]
    matrix = RatMatrix(r, len(root_polys),
                       tuple(x for row in rows for x in row))
    sol = rat_solve(matrix, [Fraction(x) for x in a])
    if sol is None:
        raise NonIntegerResidueError(
            "no Galois-constant exponents reproduce the sequence; it is not "
            "an integer exponential sum")
    chis = []
    for x in sol:
        if x.denominator != 1:
            raise NonIntegerResidueError(
                f"factor exponent {x} is not an integer; refusing to round")
        chis.append(int(x))
    if any(c == 0 for c in chis):
        raise NonIntegerResidueError("zero exponent contradicts minimality of v")
    return ExponentialSum(terms=tuple(zip(root_polys, chis)))


def zeta_from_sequence(seq: SequenceLike, max_order: Optional[int] = None):
    """Reconstruct (zeta as RationalFunction, ExponentialSum) from an exact
    sequence; verifies the roundtrip over the full window before returning."""
    values = _finite_values(seq)
    v = minimal_recurrence(values, max_order)
    if v is None:
        raise NoRecurrenceError(
            f"no recurrence of admissible order fits the {len(values)}-term window")
    # u_A with S_A(z) = sum a_{n+1} z^n = u_A / v, then shift once for the
    # n-indexed convention of residue_exponents
    L = v.degree
    u_coeffs = []
    for j in range(L):
        c = sum(v.coeffs[i] * values[j - i] for i in range(0, j + 1))
        u_coeffs.append(c)
    u_shifted = IntPolynomial.of([0] + u_coeffs)
    es = residue_exponents(u_shifted, v)
    num = IntPolynomial.of([1])
    den = IntPolynomial.of([1])
    for poly, chi in es.terms:
        vt = poly.reverse()
        if chi > 0:
            den = den * vt.pow(chi)
        else:
            num = num * vt.pow(-chi)
    rf = RationalFunction(numerator=num, denominator=den)
    rf.check_coprime()
    if expand(rf, len(values)) != values:
        raise NonIntegerResidueError(
            "reconstructed zeta does not reproduce the sequence")
    return rf, es


def realize_bouquet(es: ExponentialSum) -> BouquetRealization:
    """Block companion matrices realizing a_n = tr(A_e^n) - tr(A_o^n); empty
    sides are padded with a 1x1 zero block (keeps n_circles >= 2 and leaves
    all traces unchanged)."""
    blocks_e = []
    blocks_o = []
    for poly, chi in es.terms:
        M = companion_matrix(poly)
        if chi > 0:
            blocks_e.extend([M] * chi)
        else:
            blocks_o.extend([M] * (-chi))
    zero = BigIntMatrix.from_rows([[0]])
    if not blocks_e:
        blocks_e = [zero]
    if not blocks_o:
        blocks_o = [zero]
    return BouquetRealization(a_even=BigIntMatrix.block_diag(blocks_e),
                              a_odd=BigIntMatrix.block_diag(blocks_o))
