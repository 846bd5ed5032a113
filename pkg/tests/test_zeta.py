import random
from fractions import Fraction

import pytest
import sympy

from tdyn.errors import (
    InfiniteValueError,
    NonIntegerResidueError,
    NoRecurrenceError,
    NotSquareFreeError,
)
from tdyn.exact_linalg import IntPolynomial, companion_matrix, mat_pow
from tdyn.group_model import z_pair, z_times_d
from tdyn.reidemeister import coincidence_sequence, nielsen_sequence
from tdyn.zeta import (
    RationalFunction,
    berlekamp_massey,
    expand,
    minimal_recurrence,
    power_sums,
    realize_bouquet,
    residue_exponents,
    zeta_from_sequence,
)


# ---------------------------------------------------------------- oracles

def brute_force_recurrence(seq, max_order):
    """Smallest-order recurrence by direct exact linear solving (oracle)."""
    n = len(seq)
    for L in range(0, max_order + 1):
        if L == 0:
            if all(v == 0 for v in seq):
                return [Fraction(1)]
            continue
        if n < 2 * L:
            break
        A = sympy.Matrix([[Fraction(seq[m - i]) for i in range(1, L + 1)]
                          for m in range(L, n)])
        b = sympy.Matrix([[-Fraction(seq[m])] for m in range(L, n)])
        try:
            sol, params = A.gauss_jordan_solve(b)
        except ValueError:
            continue  # inconsistent: no recurrence of this order
        if params.rows == 0 or params.cols == 0:
            candidate = [Fraction(1)] + [Fraction(x) for x in sol]
            good = all(
                sum(candidate[i] * seq[m - i] for i in range(L + 1)) == 0
                for m in range(L, n))
            if good:
                return candidate
        else:
            # underdetermined: take the particular solution with params = 0
            particular = sol.subs({p: 0 for p in params.free_symbols})
            candidate = [Fraction(1)] + [Fraction(x) for x in particular]
            good = all(
                sum(candidate[i] * seq[m - i] for i in range(L + 1)) == 0
                for m in range(L, n))
            if good:
                return candidate
    return None


def partial_fraction_exponents(u_coeffs, v_coeffs):
    """chi per linear factor via sympy.apart (oracle, rational roots only)."""
    z = sympy.Symbol("z")
    u = sum(c * z ** i for i, c in enumerate(u_coeffs))
    v = sum(c * z ** i for i, c in enumerate(v_coeffs))
    decomposition = sympy.apart(u / v, z)
    out = {}
    for term in decomposition.as_ordered_terms():
        num, den = sympy.fraction(sympy.together(term))
        poly = sympy.Poly(den, z)
        if poly.degree() != 1:
            raise ValueError("oracle handles simple rational poles only")
        c1, c0 = poly.all_coeffs()
        root = sympy.Rational(-c0, c1)  # pole of u/v at z = root
        lam = sympy.Rational(1) / root
        chi = -sympy.Rational(num) / (c1 * root)
        out[sympy.Integer(lam)] = sympy.Integer(chi)
    return out


# ---------------------------------------------------------------- power sums

def test_power_sums_match_companion_traces():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randint(1, 4)
        coeffs = [rng.randint(-4, 4) for _ in range(d)] + [1]
        p = IntPolynomial.of(coeffs)
        M = companion_matrix(p)
        traces = [mat_pow(M, n).trace() for n in range(1, 9)]
        assert power_sums(p, 8) == traces


# ---------------------------------------------------------------- recurrences

def test_minimal_recurrence_doubling():
    seq = [2 ** n - 1 for n in range(1, 13)]
    v = minimal_recurrence(seq)
    assert v.coeffs == (1, -3, 2)  # (1 - 2z)(1 - z)


def test_minimal_recurrence_constant():
    assert minimal_recurrence([1, 1, 1, 1, 1, 1]).coeffs == (1, -1)


def test_minimal_recurrence_alternating_doubling():
    seq = [abs((-2) ** n - 1) for n in range(1, 13)]
    v = minimal_recurrence(seq)
    assert v.coeffs == (1, -1, -2)  # 1 - z - 2z^2, roots 2 and -1


def test_minimal_recurrence_matches_brute_force():
    rng = random.Random(23)
    for _ in range(30):
        base_terms = []
        for _ in range(rng.randint(1, 3)):
            lam = rng.choice([-3, -2, -1, 1, 2, 3])
            chi = rng.choice([-2, -1, 1, 2])
            base_terms.append((lam, chi))
        seq = [sum(chi * lam ** n for lam, chi in base_terms)
               for n in range(1, 17)]
        v = minimal_recurrence(seq)
        oracle = brute_force_recurrence(seq, 8)
        if v is None:
            assert oracle is None or all(x == 0 for x in seq)
            continue
        assert oracle is not None
        assert list(v.coeffs) == [int(c) for c in oracle]


def test_minimal_recurrence_order_bound():
    seq = [2 ** n - 1 for n in range(1, 13)]
    assert minimal_recurrence(seq, max_order=1) is None


def test_minimal_recurrence_rejects_infinite():
    with pytest.raises(InfiniteValueError):
        minimal_recurrence(coincidence_sequence(z_times_d(1), 6))


def test_minimal_recurrence_rejects_transients():
    # a transient needs a zero base; not an admissible exponential sum
    assert minimal_recurrence([1, 0, 0, 0, 0, 0]) is None
    assert minimal_recurrence([5, 7, 2, 2, 2, 2, 2, 2]) is None
    with pytest.raises(NoRecurrenceError):
        zeta_from_sequence([1, 0, 0, 0, 0, 0])


# ---------------------------------------------------------------- residues

def test_residue_exponents_pure_power():
    es = residue_exponents(IntPolynomial.of([1]), IntPolynomial.of([1, -2]))
    assert es.terms == ((IntPolynomial.of([-2, 1]), 1),)


def test_residue_exponents_doubling():
    # sum (2^n - 1) z^n = 3z... series z(1)/((1-2z)(1-z)) has a_n = 2^n - 1
    u = IntPolynomial.of([0, 1])
    v = IntPolynomial.of([1, -3, 2])
    es = residue_exponents(u, v)
    got = dict(es.terms)
    assert got[IntPolynomial.of([-2, 1])] == 1
    assert got[IntPolynomial.of([-1, 1])] == -1
    # cross-check with the partial fractions oracle
    oracle = partial_fraction_exponents([0, 1], [1, -3, 2])
    assert oracle == {2: 1, 1: -1}


def test_residue_exponents_sign_pair():
    # 2^n - (-1)^n: u = 3z, v = 1 - z - 2z^2
    es = residue_exponents(IntPolynomial.of([0, 3]), IntPolynomial.of([1, -1, -2]))
    got = dict(es.terms)
    assert got[IntPolynomial.of([-2, 1])] == 1
    assert got[IntPolynomial.of([1, 1])] == -1
    oracle = partial_fraction_exponents([0, 3], [1, -1, -2])
    assert oracle == {2: 1, -1: -1}


def test_residue_exponents_rejects_square():
    # n * 2^n needs a double pole
    with pytest.raises(NotSquareFreeError):
        residue_exponents(IntPolynomial.of([0, 2]), IntPolynomial.of([1, -4, 4]))


def test_residue_exponents_rejects_non_galois_sums():
    # Fibonacci: rational zeta form needs non-constant Galois data
    seq = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    v = minimal_recurrence(seq)
    assert v.coeffs == (1, -1, -1)
    with pytest.raises(NonIntegerResidueError):
        zeta_from_sequence(seq)


# ---------------------------------------------------------------- zeta pipeline

def test_zeta_z_pair_2_1():
    rf, es = zeta_from_sequence(coincidence_sequence(z_pair(2, 1), 12))
    assert rf.numerator.coeffs == (1, -1)
    assert rf.denominator.coeffs == (1, -2)


def test_zeta_constant_sequence():
    rf, es = zeta_from_sequence([1] * 8)
    assert rf.numerator.coeffs == (1,)
    assert rf.denominator.coeffs == (1, -1)


def test_zeta_z_times_2_matches_z_pair():
    rf, _ = zeta_from_sequence(coincidence_sequence(z_times_d(2), 12))
    assert rf.numerator.coeffs == (1, -1)
    assert rf.denominator.coeffs == (1, -2)


def test_zeta_roundtrip_random_exponential_sums():
    rng = random.Random(41)
    done = 0
    while done < 30:
        terms = {}
        for _ in range(rng.randint(1, 3)):
            lam = rng.choice([-4, -3, -2, 2, 3, 4, 5])
            chi = rng.choice([-2, -1, 1, 2, 3])
            terms[lam] = terms.get(lam, 0) + chi
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            continue
        N = 2 * (2 * len(terms)) + 6
        seq = [sum(chi * lam ** n for lam, chi in terms.items())
               for n in range(1, N + 1)]
        rf, es = zeta_from_sequence(seq)
        assert expand(rf, N) == seq
        assert es.values(N) == seq
        done += 1


def test_zeta_nielsen_nontame_pair():
    # zeros inserted for even n; zeta still rational
    rf, es = zeta_from_sequence(nielsen_sequence(z_pair(2, -2), 12))
    assert expand(rf, 12) == [abs(2 ** n - (-2) ** n) for n in range(1, 13)]
    assert rf.numerator.coeffs == (1, 2)
    assert rf.denominator.coeffs == (1, -2)


def test_zeta_multi_section_system():
    # (2^n - 1)(3^n - 1)(6^n - 1) = 36^n - 18^n - 12^n + 3^n + 2^n - 1
    # (the 6^n terms cancel); six exponential terms across two sections
    from tdyn.group_model import heisenberg
    sys_ = heisenberg([[2, 0], [0, 3]])
    seq = coincidence_sequence(sys_, 2 * 8 + 4)  # window from the product bound
    rf, es = zeta_from_sequence(seq)
    assert expand(rf, len(seq.values)) == list(seq.values)
    from tdyn.exact_linalg import IntPolynomial as P
    chis = dict(es.terms)
    assert chis == {P.of([-36, 1]): 1, P.of([-18, 1]): -1, P.of([-12, 1]): -1,
                    P.of([-3, 1]): 1, P.of([-2, 1]): 1, P.of([-1, 1]): -1}
    br = realize_bouquet(es)
    assert br.a_even.rows == 3 and br.a_odd.rows == 3
    check = 2 * (br.a_even.rows + br.a_odd.rows) + 5
    long_seq = coincidence_sequence(sys_, check)
    assert br.lefschetz_values(check) == list(long_seq.values)


def test_zeta_with_genuine_multiplicity():
    # chi = 2: the sequence 2 * 5^n + 3^n needs two copies of the base 5
    seq = [2 * 5 ** n + 3 ** n for n in range(1, 13)]
    rf, es = zeta_from_sequence(seq)
    chis = dict(es.terms)
    from tdyn.exact_linalg import IntPolynomial as P
    assert chis == {P.of([-5, 1]): 2, P.of([-3, 1]): 1}
    br = realize_bouquet(es)
    assert br.a_even.rows == 3  # two copies of [[5]] plus [[3]]
    assert br.a_odd.row_lists() == [[0]]  # padded
    assert br.lefschetz_values(8) == [2 * 5 ** n + 3 ** n for n in range(1, 9)]


def test_zeta_all_zero_nielsen():
    rf, es = zeta_from_sequence(nielsen_sequence(z_times_d(1), 8))
    assert rf.numerator.coeffs == (1,)
    assert rf.denominator.coeffs == (1,)
    assert es.terms == ()


def test_zeta_no_recurrence_error():
    rng = random.Random(4)
    seq = [rng.randint(1, 10 ** 6) for _ in range(14)]
    with pytest.raises((NoRecurrenceError, NonIntegerResidueError)):
        zeta_from_sequence(seq)


# ---------------------------------------------------------------- expand

def test_expand_examples():
    rf = RationalFunction(IntPolynomial.of([1, -1]), IntPolynomial.of([1, -2]))
    assert expand(rf, 4) == [1, 3, 7, 15]
    rf = RationalFunction(IntPolynomial.of([1]), IntPolynomial.of([1, -1]))
    assert expand(rf, 3) == [1, 1, 1]
    rf = RationalFunction(IntPolynomial.of([1, -2]), IntPolynomial.of([1, -3]))
    assert expand(rf, 3) == [1, 5, 19]


# ---------------------------------------------------------------- bouquet

def test_realize_bouquet_doubling():
    _, es = zeta_from_sequence([2 ** n - 1 for n in range(1, 11)])
    br = realize_bouquet(es)
    assert br.a_even.row_lists() == [[2]]
    assert br.a_odd.row_lists() == [[1]]
    assert br.lefschetz_values(6) == [2 ** n - 1 for n in range(1, 7)]


def test_realize_bouquet_padding():
    _, es = zeta_from_sequence([1] * 8)
    br = realize_bouquet(es)
    assert br.a_odd.row_lists() == [[0]]
    assert br.n_circles == 2
    assert br.lefschetz_values(4) == [1, 1, 1, 1]


def test_realize_bouquet_lucas():
    p = IntPolynomial.of([1, -3, 1])
    from tdyn.zeta import ExponentialSum
    es = ExponentialSum(terms=((p, 1),))
    br = realize_bouquet(es)
    assert br.a_even.row_lists() == [[0, -1], [1, 3]]
    # power-trace oracle
    expected = [mat_pow(companion_matrix(p), n).trace() for n in range(1, 9)]
    assert br.lefschetz_values(8) == expected
    assert expected[:3] == [3, 7, 18]


def test_realize_bouquet_trace_identity_random():
    rng = random.Random(8)
    for _ in range(15):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            lam = rng.choice([-3, -2, 2, 3])
            chi = rng.choice([-2, -1, 1, 2])
            terms[lam] = terms.get(lam, 0) + chi
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            continue
        N = 4 * len(terms) + 6
        seq = [sum(chi * lam ** n for lam, chi in terms.items())
               for n in range(1, N + 1)]
        _, es = zeta_from_sequence(seq)
        br = realize_bouquet(es)
        total = br.a_even.rows + br.a_odd.rows
        check = 2 * total + 5
        assert br.lefschetz_values(check) == [
            sum(chi * lam ** n for lam, chi in terms.items())
            for n in range(1, check + 1)]


# ---------------------------------------------------------------- BM details

def test_berlekamp_massey_padding():
    # a_n = a_{n-2}: connection polynomial has an interior zero coefficient
    seq = [5, 7, 5, 7, 5, 7, 5, 7]
    C = berlekamp_massey(seq)
    assert C == [Fraction(1), Fraction(0), Fraction(-1)]


def test_berlekamp_massey_rational_sequences():
    seq = [Fraction(1, 2) ** n for n in range(10)]
    C = berlekamp_massey(seq)
    assert C == [Fraction(1), Fraction(-1, 2)]
