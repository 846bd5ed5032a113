"""Exact coincidence Reidemeister and Nielsen number sequences.

For one abelian section the n-th coincidence number is

    |det(phi^n - psi^n)|_infinity * prod_{p in S} |det(phi^n - psi^n)|_p

which is a positive integer for valid S-integer sections and infinite exactly
when the determinant vanishes.  A multi-section value is the product over
sections (the product formula for nilpotent systems); Nielsen values replace
infinity by 0 and require finitely generated input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact_linalg import RatMatrix, det_rat, mat_pow, smith_normal_form
from .group_model import AbelianSection, NilpotentSystem, validate
from .padic import ord_p

__all__ = ["INFINITY", "Infinity", "is_infinite", "ReidemeisterSequence",
           "section_coincidence_number", "section_coincidence_number_snf",
           "coincidence_sequence", "nielsen_sequence"]


class Infinity:
    """Explicit infinite Reidemeister number (never a sentinel integer)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = Infinity()


def is_infinite(value) -> bool:
    return isinstance(value, Infinity)


@dataclass(frozen=True)
class ReidemeisterSequence:
    """Values for n = 1..N; kind 'nielsen' has finite entries with 0 for the
    infinite Reidemeister case, kind 'reidemeister' keeps INFINITY explicit."""

    values: tuple
    system_name: str
    kind: str  # "reidemeister" | "nielsen"

    def __post_init__(self):
        if self.kind not in ("reidemeister", "nielsen"):
            raise InputError(f"unknown sequence kind {self.kind!r}")
        for v in self.values:
            if is_infinite(v):
                if self.kind == "nielsen":
                    raise InputError("nielsen sequences cannot hold infinity")
            elif not isinstance(v, int):
                raise InputError("sequence entries must be ints or INFINITY")
            elif self.kind == "reidemeister" and v < 1:
                raise InputError("finite Reidemeister numbers are >= 1")
            elif self.kind == "nielsen" and v < 0:
                raise InputError("Nielsen numbers are >= 0")

    def __len__(self):
        return len(self.values)

    def finite_values(self) -> list:
        if any(is_infinite(v) for v in self.values):
            raise InputError("sequence has infinite entries")
        return list(self.values)


def _adelic_value(det: Fraction, primes) -> int:
    """|det|_inf * prod_{p in S} |det|_p as an exact positive integer."""
    value = abs(det)
    for p in primes:
        value *= Fraction(p) ** (-ord_p(det, p))
    if value.denominator != 1:
        raise InputError(
            "section determinant has denominators outside the prime support")
    return int(value)


def section_coincidence_number(sec: AbelianSection, n: int):
    """R(phi^n, psi^n) on one section: exact positive integer or INFINITY."""
    if n < 1:
        raise InputError("iteration index must be >= 1")
    diff = mat_pow(sec.phi, n).sub(mat_pow(sec.psi, n))
    det = det_rat(diff)
    if det == 0:
        return INFINITY
    return _adelic_value(det, sorted(sec.prime_support))


def section_coincidence_number_snf(sec: AbelianSection, n: int):
    """Independent route for integer sections: order of the cokernel of
    phi^n - psi^n read off the Smith normal form diagonal."""
    if sec.prime_support:
        raise InputError("SNF route applies to integer sections only")
    diff = mat_pow(sec.phi, n).sub(mat_pow(sec.psi, n))
    if not diff.is_integral:
        raise InputError("SNF route applies to integer sections only")
    sf = smith_normal_form(diff.to_bigint())
    order = 1
    for d in sf.diagonal():
        if d == 0:
            return INFINITY
        order *= abs(d)
    return order


def coincidence_sequence(system: NilpotentSystem, N: int) -> ReidemeisterSequence:
    """R(phi^n, psi^n) for n = 1..N, the product over sections."""
    problems = validate(system)
    if problems:
        raise InputError("; ".join(problems))
    if N < 1:
        raise InputError("sequence length must be >= 1")
    values = []
    # incremental powers: one matrix product per section per n
    powers = [(sec, RatMatrix.identity(sec.rank), RatMatrix.identity(sec.rank))
              for sec in system.sections]
    for n in range(1, N + 1):
        total = 1
        infinite = False
        next_powers = []
        for sec, ph, ps in powers:
            ph = ph.mul(sec.phi)
            ps = ps.mul(sec.psi)
            next_powers.append((sec, ph, ps))
            if infinite:
                continue
            det = det_rat(ph.sub(ps))
            if det == 0:
                infinite = True
            else:
                total *= _adelic_value(det, sorted(sec.prime_support))
        powers = next_powers
        values.append(INFINITY if infinite else total)
    return ReidemeisterSequence(values=tuple(values), system_name=system.name,
                                kind="reidemeister")


def nielsen_sequence(system: NilpotentSystem, N: int) -> ReidemeisterSequence:
    """N(f^n, g^n) for the nilmanifold pair realizing the system: equals the
    Reidemeister value when finite and 0 otherwise.  Rejects S-integer input
    (Nielsen theory here is about compact nilmanifolds)."""
    if not system.is_finitely_generated:
        raise InputError("Nielsen sequences need finitely generated sections "
                         "(empty prime support)")
    rseq = coincidence_sequence(system, N)
    values = tuple(0 if is_infinite(v) else v for v in rseq.values)
    return ReidemeisterSequence(values=values, system_name=system.name,
                                kind="nielsen")
