import random

import pytest
from hypothesis import given, settings, strategies as st

from tdyn.congruence import (
    dold_check_realization,
    euler_check,
    gauss_check,
    mobius,
)
from tdyn.errors import InfiniteValueError, InputError
from tdyn.exact_linalg import BigIntMatrix
from tdyn.group_model import z_pair, z_times_d
from tdyn.reidemeister import coincidence_sequence, nielsen_sequence
from tdyn.zeta import BouquetRealization


def test_mobius_values():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_mobius_rejects_nonpositive():
    with pytest.raises(InputError):
        mobius(0)


def test_gauss_check_doubling_n2():
    seq = coincidence_sequence(z_times_d(2), 4)
    rep = gauss_check(seq, 2)
    assert rep.combination == (2 ** 2 - 1) - (2 - 1) == 2
    assert rep.passed


def test_gauss_check_z_pair_n6():
    seq = coincidence_sequence(z_pair(2, 1), 6)
    rep = gauss_check(seq, 6)
    assert rep.combination == 63 - 7 - 3 + 1 == 54
    assert rep.residue == 0 and rep.passed


def test_gauss_check_n1_always_passes():
    seq = coincidence_sequence(z_times_d(3), 2)
    rep = gauss_check(seq, 1)
    assert rep.passed and rep.combination == seq.values[0]


def test_gauss_check_rejects_infinite_divisor():
    seq = coincidence_sequence(z_pair(2, -2), 4)  # infinite at even n
    with pytest.raises(InfiniteValueError):
        gauss_check(seq, 2)
    # n = 3 only uses divisors 1 and 3, both finite
    assert gauss_check(seq, 3).passed


def test_gauss_check_nielsen_proceeds_with_zeros():
    seq = nielsen_sequence(z_pair(2, -2), 12)
    for n in range(1, 13):
        assert gauss_check(seq, n).passed


def test_euler_check_examples():
    seq = coincidence_sequence(z_times_d(2), 16)
    rep = euler_check(seq, 2, 2)
    assert rep.combination == (2 ** 4 - 1) - (2 ** 2 - 1) == 12
    assert rep.passed
    seq3 = coincidence_sequence(z_times_d(3), 27)
    rep3 = euler_check(seq3, 3, 1)
    assert rep3.combination == 26 - 2 == 24
    assert rep3.passed


def test_euler_equals_gauss_at_prime_powers():
    seq = coincidence_sequence(z_times_d(2), 32)
    for p, r in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (5, 1)]:
        n = p ** r
        if n > 32:
            continue
        assert euler_check(seq, p, r).combination == gauss_check(seq, n).combination


def test_gauss_congruence_holds_for_tame_fixtures():
    for system in (z_times_d(2), z_times_d(3), z_times_d(-2), z_pair(2, 1),
                   z_pair(3, -1), z_pair(-3, 2)):
        seq = coincidence_sequence(system, 60)
        for n in range(1, 61):
            assert gauss_check(seq, n).passed, (system.name, n)


def test_dold_examples():
    br = BouquetRealization(a_even=BigIntMatrix.from_rows([[2]]),
                            a_odd=BigIntMatrix.from_rows([[1]]))
    rep = dold_check_realization(br, 4)
    assert rep.combination == 15 - 3 == 12
    assert rep.passed
    same = BouquetRealization(a_even=BigIntMatrix.from_rows([[3]]),
                              a_odd=BigIntMatrix.from_rows([[3]]))
    rep = dold_check_realization(same, 6)
    assert rep.combination == 0 and rep.passed


matrix_strategy = st.integers(min_value=1, max_value=3).flatmap(
    lambda d: st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=d, max_size=d),
        min_size=d, max_size=d))


@settings(max_examples=60, deadline=None)
@given(matrix_strategy, matrix_strategy, st.integers(min_value=1, max_value=30))
def test_dold_congruence_random_matrices(rows_e, rows_o, n):
    br = BouquetRealization(a_even=BigIntMatrix.from_rows(rows_e),
                            a_odd=BigIntMatrix.from_rows(rows_o))
    assert dold_check_realization(br, n).passed


def test_reports_carry_exact_combination():
    rng = random.Random(2)
    seq = coincidence_sequence(z_times_d(5), 12)
    for _ in range(10):
        n = rng.randint(1, 12)
        rep = gauss_check(seq, n)
        direct = sum(mobius(n // d) * seq.values[d - 1]
                     for d in range(1, n + 1) if n % d == 0)
        assert rep.combination == direct
