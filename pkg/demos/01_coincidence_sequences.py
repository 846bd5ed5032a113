"""Coincidence Reidemeister sequences, exactly.

A system is a list of abelian sections: for each one the two induced square
rational matrices and the primes allowed in denominators.  The n-th
coincidence number of a section is |det(phi^n - psi^n)| corrected by the
p-adic absolute values of the determinant at the supported primes; the value
for the whole system is the product over sections.
"""

from fractions import Fraction

from tdyn import (
    coincidence_sequence,
    heisenberg,
    nielsen_sequence,
    s_integer,
    tameness_check,
    z_pair,
    z_times_d,
)

# Multiplication by d on the integers: R(phi^n) = |d^n - 1|
for d in (2, 3, -2):
    seq = coincidence_sequence(z_times_d(d), 10)
    print(f"phi = {d}x on Z:        ", list(seq.values))

# A pair of multiplications: R(phi^n, psi^n) = |d_psi^n - d_phi^n|
seq = coincidence_sequence(z_pair(2, 1), 10)
print("pair (2x, x) on Z:     ", list(seq.values))

# S-integers: on Z[1/2] with phi = x/2 the archimedean factor |1/2^n - 1|
# is corrected by |.|_2, giving plain 2^n - 1 again
seq = coincidence_sequence(s_integer(Fraction(1, 2), [2]), 10)
print("phi = x/2 on Z[1/2]:   ", list(seq.values))

# Heisenberg-style class-2 system with a unimodular top section: the center
# is multiplied by det = 1, so every value is infinite
h = heisenberg([[2, 1], [1, 1]])
print("heisenberg [[2,1],[1,1]]:", list(coincidence_sequence(h, 3).values))
print("tameness:", tameness_check(h))

# Nielsen numbers replace infinity by zero (and need integer sections)
print("nielsen of (2x, -2x):  ", list(nielsen_sequence(z_pair(2, -2), 8).values))
