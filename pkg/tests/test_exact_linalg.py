import random
from fractions import Fraction

import pytest

from tdyn.errors import InputError
from tdyn.exact_linalg import (
    BigIntMatrix,
    IntPolynomial,
    RatMatrix,
    RatPolynomial,
    char_poly,
    companion_matrix,
    det_exact,
    det_rat,
    mat_pow,
    smith_normal_form,
)


# ---------------------------------------------------------------- oracles

def det_cofactor(rows):
    """Cofactor-expansion determinant, the independent oracle for Bareiss."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def char_poly_symbolic(rows):
    """Expand det(X*I - A) by cofactors over polynomial entries (oracle)."""
    n = len(rows)
    entries = [[[Fraction(-rows[i][j]), Fraction(1)] if i == j else [Fraction(-rows[i][j])]
                for j in range(n)] for i in range(n)]

    def pdet(m):
        if len(m) == 1:
            return m[0][0]
        acc = [Fraction(0)]
        for j in range(len(m)):
            minor = [r[:j] + r[j + 1:] for r in m[1:]]
            term = poly_mul(m[0][j], pdet(minor))
            if j % 2:
                term = [-c for c in term]
            acc = poly_add(acc, term)
        return acc

    coeffs = pdet(entries)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def random_int_matrix(rng, d, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(d)] for _ in range(d)]


# ---------------------------------------------------------------- mat_pow

def test_mat_pow_scalar_cube():
    A = BigIntMatrix.from_rows([[2]])
    assert mat_pow(A, 3).entries == (8,)


def test_mat_pow_identity():
    I2 = BigIntMatrix.identity(2)
    assert mat_pow(I2, 7) == I2


def test_mat_pow_fibonacci_square():
    A = BigIntMatrix.from_rows([[2, 1], [1, 1]])
    # oracle: direct multiplication
    assert mat_pow(A, 2) == A.mul(A)
    assert mat_pow(A, 2).row_lists() == [[5, 3], [3, 2]]


def test_mat_pow_zero_exponent_and_rational():
    A = RatMatrix.from_rows([[Fraction(1, 2), 1], [0, 2]])
    assert mat_pow(A, 0) == RatMatrix.identity(2)
    assert mat_pow(A, 3) == A.mul(A).mul(A)


# ---------------------------------------------------------------- determinants

def test_det_examples():
    assert det_exact(BigIntMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert det_exact(BigIntMatrix.identity(5)) == 1
    assert det_exact(BigIntMatrix.from_rows([[1, 1], [1, 1]])) == 0


def test_det_matches_cofactor_oracle():
    rng = random.Random(1234)
    for _ in range(200):
        d = rng.randint(1, 4)
        rows = random_int_matrix(rng, d)
        assert det_exact(BigIntMatrix.from_rows(rows)) == det_cofactor(rows)


def test_det_rat_scaling():
    A = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [1, Fraction(5, 6)]])
    # oracle: 2x2 closed form
    expected = Fraction(1, 2) * Fraction(5, 6) - Fraction(1, 3) * 1
    assert det_rat(A) == expected


# ---------------------------------------------------------------- smith normal form

def snf_checks(A):
    sf = smith_normal_form(A)
    assert sf.U.mul(A).mul(sf.V) == sf.D
    assert abs(det_exact(sf.U)) == 1
    assert abs(det_exact(sf.V)) == 1
    diag = sf.diagonal()
    for i in range(min(A.rows, A.cols)):
        for j in range(A.cols):
            if j != i:
                assert sf.D.get(i, j) == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if b != 0:
            assert a != 0 and b % a == 0
    nz = [d for d in diag if d != 0]
    assert nz == diag[:len(nz)], "zeros must come last"
    assert sf.rank == len(nz)
    return sf


def test_snf_diag_2_3():
    sf = snf_checks(BigIntMatrix.from_rows([[2, 0], [0, 3]]))
    assert sf.diagonal() == [1, 6]


def test_snf_identity_and_zero():
    assert snf_checks(BigIntMatrix.identity(3)).diagonal() == [1, 1, 1]
    sf = snf_checks(BigIntMatrix.from_rows([[0, 0], [0, 0]]))
    assert sf.diagonal() == [0, 0]
    assert sf.rank == 0


def test_snf_random_matches_det():
    rng = random.Random(99)
    for _ in range(150):
        d = rng.randint(1, 4)
        A = BigIntMatrix.from_rows(random_int_matrix(rng, d))
        sf = snf_checks(A)
        prod = 1
        for x in sf.diagonal():
            prod *= x
        assert abs(prod) == abs(det_exact(A))


def test_snf_rectangular():
    A = BigIntMatrix.from_rows([[2, 4, 6], [4, 8, 10]])
    snf_checks(A)


# ---------------------------------------------------------------- char poly

def test_char_poly_examples():
    p = char_poly(BigIntMatrix.from_rows([[2, 1], [1, 1]]))
    assert p.coeffs == (Fraction(1), Fraction(-3), Fraction(1))  # X^2 - 3X + 1
    p = char_poly(BigIntMatrix.identity(2))
    assert p.coeffs == (Fraction(1), Fraction(-2), Fraction(1))  # (X-1)^2
    p = char_poly(BigIntMatrix.from_rows([[0, -1], [1, 0]]))
    assert p.coeffs == (Fraction(1), Fraction(0), Fraction(1))  # X^2 + 1


def test_char_poly_matches_symbolic_oracle():
    rng = random.Random(7)
    for _ in range(60):
        d = rng.randint(1, 4)
        rows = random_int_matrix(rng, d)
        expected = char_poly_symbolic(rows)
        got = char_poly(BigIntMatrix.from_rows(rows))
        assert list(got.coeffs) == expected


def test_char_poly_cayley_hamilton():
    rng = random.Random(21)
    for _ in range(40):
        d = rng.randint(1, 4)
        A = BigIntMatrix.from_rows(random_int_matrix(rng, d)).to_rational()
        p = char_poly(A)
        acc = RatMatrix(d, d, tuple(Fraction(0) for _ in range(d * d)))
        power = RatMatrix.identity(d)
        for c in p.coeffs:
            acc = acc.sub(power.scale(-c))
            power = power.mul(A)
        assert all(e == 0 for e in acc.entries)


def test_char_poly_rational_matrix():
    A = RatMatrix.from_rows([[Fraction(1, 2)]])
    assert char_poly(A).coeffs == (Fraction(-1, 2), Fraction(1))


# ---------------------------------------------------------------- companion

def test_companion_examples():
    assert companion_matrix(IntPolynomial.of([-3, 1])).row_lists() == [[3]]
    assert companion_matrix(IntPolynomial.of([1, -3, 1])).row_lists() == [[0, -1], [1, 3]]
    assert companion_matrix(IntPolynomial.of([1, 0, 1])).row_lists() == [[0, -1], [1, 0]]


def test_companion_char_poly_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.randint(1, 4)
        coeffs = [rng.randint(-4, 4) for _ in range(d)] + [1]
        p = IntPolynomial.of(coeffs)
        M = companion_matrix(p)
        assert char_poly(M).to_int() == p


def test_companion_rejects_non_monic():
    with pytest.raises(InputError):
        companion_matrix(IntPolynomial.of([1, 2]))


# ---------------------------------------------------------------- polynomials

def test_polynomial_zero_convention():
    z = IntPolynomial.of([0])
    assert z.is_zero and z.degree == 0
    p = IntPolynomial.of([0, 0, 3, 0])
    assert p.coeffs == (0, 0, 3)
    assert p.degree == 2


def test_polynomial_arithmetic():
    p = IntPolynomial.of([1, 1])      # 1 + x
    q = IntPolynomial.of([-1, 1])     # -1 + x
    assert (p * q).coeffs == (-1, 0, 1)
    assert (p + q).coeffs == (0, 2)
    assert p.pow(2).coeffs == (1, 2, 1)
    assert p.derivative().coeffs == (1,)
    assert IntPolynomial.of([2, 0, 1]).reverse().coeffs == (1, 0, 2)
    assert p(Fraction(1, 2)) == Fraction(3, 2)


def test_rat_polynomial_to_int():
    p = RatPolynomial.of([Fraction(1), Fraction(2)])
    assert p.to_int().coeffs == (1, 2)
    with pytest.raises(InputError):
        RatPolynomial.of([Fraction(1, 2)]).to_int()
