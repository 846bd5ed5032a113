"""Closed-form growth rates and the dual-torus entropy identity.

The growth rate of the coincidence numbers is a product of max(|xi|, |eta|)
over paired eigenvalues (archimedean place) times exact powers of p from the
finite places of S-integer sections.  For psi = identity on integer sections
its logarithm equals the sum of the topological entropies of the dual toral
endomorphisms.
"""

import math
from fractions import Fraction

from tdyn import (
    entropy_dual_torus,
    growth_rate,
    heisenberg,
    s_integer,
    torus_matrix,
    verify_entropy_identity,
    z_times_d,
)

rep = growth_rate(z_times_d(3), N=20)
print("growth of 3x on Z:", rep.exact_value, " empirical tail:",
      rep.empirical[-1])

# the cat-map style example: golden-ratio growth (3 + sqrt 5)/2
rep = growth_rate(torus_matrix([[2, 1], [1, 1]]), N=40)
print("\ncat map growth:", rep.numeric, " vs (3+sqrt5)/2 =",
      (3 + math.sqrt(5)) / 2)
print("closed-form terms:", rep.log_terms)
print("R_40^(1/40) agreement:", rep.agreement)

# S-integer system: archimedean part 1, all growth from the 2-adic place
rep = growth_rate(s_integer(Fraction(1, 2), [2]), N=20)
print("\nx/2 on Z[1/2]: growth", rep.exact_value,
      "= archimedean", rep.archimedean, "x 2-adic", rep.padic)

# entropy identity
print("\nentropies:")
print("  dual of 5x:        ", entropy_dual_torus([[5]]), "= log 5 =",
      math.log(5))
print("  dual of cat map:   ", entropy_dual_torus([[2, 1], [1, 1]]))
for system in (z_times_d(5), heisenberg([[2, 0], [0, 3]]),
               torus_matrix([[2, 1], [1, 1]])):
    print(f"  identity gap for {system.name}:",
          verify_entropy_identity(system, N=12))
