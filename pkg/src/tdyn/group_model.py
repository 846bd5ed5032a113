"""Data model for an endomorphism pair of a torsion-free nilpotent group.

A group enters the library as the ordered list of its abelian sections: for
each section we store the rank d_k, the two induced d_k x d_k rational
matrices, and the finite set of primes S_k whose denominators the section is
allowed to use (S_k empty means the section is the lattice Z^{d_k}; nonempty
S_k models the S-integer sections Z_S^{d_k} that realize finite Prüfer rank
concretely).  The series itself is input data; it is never derived from a
group presentation here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import sympy

from .errors import InputError
from .exact_linalg import RatMatrix, det_rat

__all__ = [
    "AbelianSection",
    "NilpotentSystem",
    "TamenessVerdict",
    "section",
    "validate",
    "tameness_check",
    "builtin_example",
    "z_times_d",
    "z_pair",
    "torus_matrix",
    "heisenberg",
    "s_integer",
    "system_from_json",
    "system_to_json",
]


@dataclass(frozen=True)
class AbelianSection:
    """One abelian factor of the isolated lower central series.

    ``triangularizable_asserted`` records the user's claim that the pair of
    induced rational maps is simultaneously triangularizable; the library
    never verifies it (there is no general exact test), it only relies on it
    where eigenvalue pairings matter.
    """

    rank: int
    phi: RatMatrix
    psi: RatMatrix
    prime_support: frozenset = field(default_factory=frozenset)
    triangularizable_asserted: bool = True


@dataclass(frozen=True)
class NilpotentSystem:
    name: str
    sections: tuple

    @property
    def nilpotency_class(self) -> int:
        return len(self.sections)

    @property
    def is_finitely_generated(self) -> bool:
        return all(not s.prime_support for s in self.sections)

    @property
    def psi_is_identity(self) -> bool:
        return all(s.psi.is_identity() for s in self.sections)


@dataclass(frozen=True)
class TamenessVerdict:
    tame: bool
    witness_n: Optional[int]
    witness_section: Optional[int]
    checked_up_to: int


def section(rank: int, phi, psi=None, primes: Sequence[int] = (),
            triangularizable_asserted: bool = True) -> AbelianSection:
    """Build a section from nested lists; psi defaults to the identity."""
    phi_m = phi if isinstance(phi, RatMatrix) else RatMatrix.from_rows(phi)
    if psi is None:
        psi_m = RatMatrix.identity(rank)
    else:
        psi_m = psi if isinstance(psi, RatMatrix) else RatMatrix.from_rows(psi)
    return AbelianSection(rank=rank, phi=phi_m, psi=psi_m,
                          prime_support=frozenset(int(p) for p in primes),
                          triangularizable_asserted=triangularizable_asserted)


def _denominator_primes(m: RatMatrix):
    primes = set()
    for e in m.entries:
        d = e.denominator
        if d > 1:
            primes.update(sympy.factorint(d).keys())
    return primes


def validate(system: NilpotentSystem) -> list:
    """Return the list of invariant violations (empty list means ok)."""
    violations = []
    if system.nilpotency_class < 1:
        violations.append("system has no sections")
    for k, sec in enumerate(system.sections, start=1):
        if sec.rank < 1:
            violations.append(f"rank must be >= 1 in section {k}")
            continue
        for label, m in (("phi", sec.phi), ("psi", sec.psi)):
            if not (m.is_square and m.rows == sec.rank):
                violations.append(f"size mismatch in section {k}: {label} is "
                                  f"{m.rows}x{m.cols}, expected {sec.rank}x{sec.rank}")
        for p in sec.prime_support:
            if not sympy.isprime(p):
                violations.append(f"{p} in prime support of section {k} is not prime")
        for label, m in (("phi", sec.phi), ("psi", sec.psi)):
            if m.rows != sec.rank or m.cols != sec.rank:
                continue
            bad = _denominator_primes(m) - set(sec.prime_support)
            for p in sorted(bad):
                violations.append(f"denominator {p} outside prime support in "
                                  f"section {k} ({label})")
    return violations


def _tameness_bound(max_rank: int) -> int:
    """Smallest sufficient iteration bound for the vanishing-determinant check.

    If det(phi^n - psi^n) = 0 for some n then some eigenvalue ratio is a root
    of unity whose order m satisfies totient(m) <= max_rank**2, so checking
    n = 1 .. 2*max{such m} is enough (the factor 2 is lcm safety).
    """
    budget = max_rank * max_rank
    # totient(m) >= sqrt(m/2), so m <= 2*budget^2 exhausts all candidates
    best = 1
    for m in range(1, 2 * budget * budget + 2):
        if sympy.totient(m) <= budget:
            best = m
    return 2 * best


def tameness_check(system: NilpotentSystem) -> TamenessVerdict:
    """Decide whether all iterated coincidence numbers are finite.

    R(phi^n, psi^n) is infinite exactly when det(phi_k^n - psi_k^n) = 0 for
    some section k; the eigenvalue-ratio argument reduces the check to a
    finite range of n.
    """
    problems = validate(system)
    if problems:
        raise InputError("; ".join(problems))
    max_rank = max(sec.rank for sec in system.sections)
    bound = _tameness_bound(max_rank)
    powers_phi = [RatMatrix.identity(sec.rank) for sec in system.sections]
    powers_psi = [RatMatrix.identity(sec.rank) for sec in system.sections]
    for n in range(1, bound + 1):
        for k, sec in enumerate(system.sections):
            powers_phi[k] = powers_phi[k].mul(sec.phi)
            powers_psi[k] = powers_psi[k].mul(sec.psi)
            if det_rat(powers_phi[k].sub(powers_psi[k])) == 0:
                return TamenessVerdict(tame=False, witness_n=n,
                                       witness_section=k + 1, checked_up_to=bound)
    return TamenessVerdict(tame=True, witness_n=None, witness_section=None,
                           checked_up_to=bound)


# ---------------------------------------------------------------------------
# builtin catalog


def z_times_d(d) -> NilpotentSystem:
    """Z with multiplication by d (psi = identity)."""
    return NilpotentSystem(name=f"z_times_d({d})",
                           sections=(section(1, [[d]]),))


def z_pair(d_phi, d_psi) -> NilpotentSystem:
    """Z with the pair (multiplication by d_phi, multiplication by d_psi)."""
    return NilpotentSystem(name=f"z_pair({d_phi},{d_psi})",
                           sections=(section(1, [[d_phi]], [[d_psi]]),))


def torus_matrix(rows) -> NilpotentSystem:
    """Z^d with an integer matrix phi and psi = identity."""
    m = RatMatrix.from_rows(rows)
    return NilpotentSystem(name="torus_matrix", sections=(section(m.rows, m),))


def heisenberg(rows) -> NilpotentSystem:
    """Heisenberg-style class-2 system: section 1 is the 2x2 matrix A, section 2
    is multiplication by det A on the center."""
    m = RatMatrix.from_rows(rows)
    if not (m.is_square and m.rows == 2):
        raise InputError("heisenberg expects a 2x2 matrix")
    d = det_rat(m)
    return NilpotentSystem(name="heisenberg",
                           sections=(section(2, m), section(1, [[d]])))


def s_integer(d, primes: Sequence[int]) -> NilpotentSystem:
    """Z_S (rank 1) with multiplication by the rational d, psi = identity."""
    return NilpotentSystem(name=f"s_integer({d},{sorted(primes)})",
                           sections=(section(1, [[Fraction(d)]], primes=primes),))


def _parse_builtin_args(arg_str: str):
    return [a.strip() for a in arg_str.split(",") if a.strip() != ""]


def _square_rows_from_flat(vals):
    d = isqrt(len(vals))
    if d * d != len(vals):
        raise InputError("matrix argument needs a square number of entries")
    return [vals[i * d:(i + 1) * d] for i in range(d)]


def builtin_example(key: str) -> NilpotentSystem:
    """Look up a catalog fixture addressed as ``name:arg1,arg2,...``.

    Catalog: z_times_d:d | z_pair:d_phi,d_psi | torus_matrix:<d*d entries>
    | heisenberg:a,b,c,d | s_integer:d,p1,p2,...
    """
    name, _, arg_str = key.partition(":")
    args = _parse_builtin_args(arg_str)
    try:
        if name == "z_times_d":
            (d,) = args
            return z_times_d(Fraction(d))
        if name == "z_pair":
            a, b = args
            return z_pair(Fraction(a), Fraction(b))
        if name == "torus_matrix":
            rows = _square_rows_from_flat([Fraction(a) for a in args])
            return torus_matrix(rows)
        if name == "heisenberg":
            rows = _square_rows_from_flat([Fraction(a) for a in args])
            return heisenberg(rows)
        if name == "s_integer":
            d, *ps = args
            return s_integer(Fraction(d), [int(p) for p in ps])
    except InputError:
        raise
    except Exception as exc:
        raise InputError(f"bad arguments for builtin {name!r}: {exc}") from exc
    raise InputError(f"unknown builtin key {name!r}")


# ---------------------------------------------------------------------------
# JSON descriptor


def _matrix_from_json(rows, what: str) -> RatMatrix:
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{what}: expected a non-empty list of rows")
    try:
        return RatMatrix.from_rows([[Fraction(str(x)) for x in row] for row in rows])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: bad rational entry ({exc})") from exc


def system_from_json(doc) -> NilpotentSystem:
    """Parse the JSON system descriptor.

    Matrix entries are strings parsed as exact rationals ("3", "-1/2");
    "psi" defaults to the identity and "primes" to the empty set.
    """
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise InputError("descriptor must be a JSON object")
    sections = []
    raw_sections = doc.get("sections")
    if not isinstance(raw_sections, list) or not raw_sections:
        raise InputError("descriptor needs a non-empty 'sections' list")
    for k, raw in enumerate(raw_sections, start=1):
        if "rank" not in raw or "phi" not in raw:
            raise InputError(f"section {k} needs 'rank' and 'phi'")
        rank = int(raw["rank"])
        phi = _matrix_from_json(raw["phi"], f"section {k} phi")
        psi = None
        if "psi" in raw and raw["psi"] is not None:
            psi = _matrix_from_json(raw["psi"], f"section {k} psi")
        primes = raw.get("primes", [])
        sections.append(section(rank, phi, psi, primes,
                                triangularizable_asserted=bool(
                                    raw.get("triangularizable", True))))
    return NilpotentSystem(name=str(doc.get("name", "unnamed")),
                           sections=tuple(sections))


def _matrix_to_json(m: RatMatrix):
    return [[str(m.get(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def system_to_json(system: NilpotentSystem) -> dict:
    return {
        "name": system.name,
        "sections": [
            {
                "rank": sec.rank,
                "phi": _matrix_to_json(sec.phi),
                "psi": _matrix_to_json(sec.psi),
                "primes": sorted(sec.prime_support),
            }
            for sec in system.sections
        ],
    }
