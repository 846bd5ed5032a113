"""Gauss and Euler congruences of coincidence sequences.

For a tame pair with rational zeta function the Möbius combinations
sum_{d|n} mu(n/d) R_d vanish mod n; at prime powers this is the classical
Euler congruence a_{p^r} = a_{p^(r-1)} mod p^r.
"""

from tdyn import (
    coincidence_sequence,
    euler_check,
    gauss_check,
    mobius,
    z_pair,
)

print("mobius 1..12:", [mobius(n) for n in range(1, 13)])

seq = coincidence_sequence(z_pair(2, 1), 60)
print("\nGauss residues for the (2x, x) pair:")
for n in (2, 6, 12, 30, 60):
    rep = gauss_check(seq, n)
    print(f"  n={n:3d}  combination={rep.combination}  residue={rep.residue}")

print("\nEuler congruences at prime powers:")
for p, r in ((2, 1), (2, 3), (3, 2), (5, 1), (7, 2)):
    rep = euler_check(seq, p, r)
    print(f"  a_{p}^{r} - a_{p}^{r - 1} = {rep.combination}  mod {p ** r}: "
          f"residue {rep.residue}")

assert all(gauss_check(seq, n).passed for n in range(1, 61))
print("\nall Gauss residues vanish for n <= 60")
