"""From an exact sequence to its rational zeta function and back.

zeta(z) = exp(sum_n R_n z^n / n) is rational exactly when R_n is an integer
exponential sum; the reconstruction finds the minimal recurrence by exact
Berlekamp-Massey, factors the denominator, solves for the integer exponent of
each irreducible factor, and verifies the roundtrip before returning.
"""

from tdyn import (
    coincidence_sequence,
    dold_check_realization,
    expand,
    realize_bouquet,
    z_pair,
    zeta_from_sequence,
)

seq = coincidence_sequence(z_pair(2, 1), 12)
rf, es = zeta_from_sequence(seq)
print("sequence:   ", list(seq.values))
print("zeta num:   ", rf.numerator.coeffs)      # (1, -1)   i.e. 1 - z
print("zeta den:   ", rf.denominator.coeffs)    # (1, -2)   i.e. 1 - 2z
for poly, chi in es.terms:
    print(f"  exponential term: chi = {chi:+d}, roots of {poly.coeffs}")

# the inverse direction: coefficients of z * d/dz log zeta
print("expand back:", expand(rf, 12))

# trace realization on a bouquet: R_n = tr(A_e^n) - tr(A_o^n)
br = realize_bouquet(es)
print("A_e:", br.a_even.row_lists(), " A_o:", br.a_odd.row_lists())
print("traces:     ", br.lefschetz_values(12))
print("dold check at n = 12:", dold_check_realization(br, 12))
