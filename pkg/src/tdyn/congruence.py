"""Möbius combinations and the Gauss / Euler / Dold congruence checks.

A report always carries the exact combination, not just a verdict: a nonzero
residue is mathematically meaningful (it certifies that the sequence is not
realizable by integer-matrix traces), so it must be debuggable.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .errors import InfiniteValueError, InputError
from .reidemeister import ReidemeisterSequence, is_infinite
from .zeta import BouquetRealization

__all__ = ["CongruenceReport", "mobius", "gauss_check", "euler_check",
           "dold_check_realization"]


@dataclass(frozen=True)
class CongruenceReport:
    n: int
    combination: int
    residue: int
    passed: bool
    kind: str = "gauss"

    def __post_init__(self):
        assert self.passed == (self.residue == 0)


def mobius(n: int) -> int:
    """Möbius function: 1 at 1, (-1)^k on k distinct primes, 0 otherwise."""
    if n < 1:
        raise InputError("mobius needs n >= 1")
    if n == 1:
        return 1
    factors = sympy.factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return (-1) ** len(factors)


def _divisors(n: int) -> list:
    # trial division is plenty at desk scale
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _value_at(seq: ReidemeisterSequence, d: int) -> int:
    v = seq.values[d - 1]
    if is_infinite(v):
        raise InfiniteValueError(
            f"R at iterate {d} is infinite; Gauss congruences need a tame pair")
    return v


def gauss_check(seq: ReidemeisterSequence, n: int) -> CongruenceReport:
    """sum_{d|n} mu(n/d) * a_d mod n, exactly."""
    if n < 1:
        raise InputError("modulus must be >= 1")
    if n > len(seq.values):
        raise InputError(f"sequence has only {len(seq.values)} terms, need {n}")
    combination = 0
    for d in _divisors(n):
        mu = mobius(n // d)
        if mu:
            combination += mu * _value_at(seq, d)
    residue = combination % n
    return CongruenceReport(n=n, combination=combination, residue=residue,
                            passed=residue == 0, kind="gauss")


def euler_check(seq: ReidemeisterSequence, p: int, r: int) -> CongruenceReport:
    """a_{p^r} - a_{p^(r-1)} mod p^r; the prime-power case of the Gauss check."""
    if not sympy.isprime(p):
        raise InputError(f"{p} is not prime")
    if r < 1:
        raise InputError("exponent must be >= 1")
    n = p ** r
    if n > len(seq.values):
        raise InputError(f"sequence has only {len(seq.values)} terms, need {n}")
    combination = _value_at(seq, n) - _value_at(seq, p ** (r - 1))
    residue = combination % n
    return CongruenceReport(n=n, combination=combination, residue=residue,
                            passed=residue == 0, kind="euler")


def dold_check_realization(br: BouquetRealization, n: int) -> CongruenceReport:
    """Möbius combination of the Lefschetz numbers tr(A_e^d) - tr(A_o^d);
    passes for every pair of integer matrices (trace Gauss congruence)."""
    if n < 1:
        raise InputError("modulus must be >= 1")
    combination = 0
    for d in _divisors(n):
        mu = mobius(n // d)
        if mu:
            combination += mu * br.lefschetz(d)
    residue = combination % n
    return CongruenceReport(n=n, combination=combination, residue=residue,
                            passed=residue == 0, kind="dold")
