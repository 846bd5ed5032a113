"""Dominant spectral data and the limit-point trichotomy of R_n / lambda^n.

lambda is the maximal root modulus of the exponential-sum polynomials.  It is
located *exactly*: |root|^2 values are roots of the composed-product
polynomial (roots r_i * r_j), the largest positive real one equals lambda^2,
and its multiplicity counts the dominant roots.  Periodicity of the dominant
angles is likewise decided exactly: the ratio of a dominant root with its
conjugate is identified among the roots of the resultant-based ratio
polynomial, and the identified irreducible factor is a cyclotomic polynomial
exactly when the angle is rational.  Indeterminate is the honest fallback
when enclosures cannot separate quantities at the precision ceiling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .enclosures import (
    DEFAULT_BITS,
    MAX_BITS,
    box_conj,
    box_div,
    box_pow,
    boxes_intersect,
    decide_order,
    interval_sqrt,
    poly_root_enclosures,
    real_part_sign,
)
from .errors import InputError, PrecisionError
from .exact_linalg import IntPolynomial
from .polyalg import cyclotomic_order, factor_int, ratio_polynomial, product_polynomial
from .reidemeister import ReidemeisterSequence, is_infinite
from .zeta import ExponentialSum

__all__ = ["DominantTerm", "DominantSpectrum", "Classification",
           "dominant_spectrum", "classify_limit_points", "limit_points_sample"]

DEFAULT_Q_CAP = 10 ** 6


@dataclass(frozen=True)
class DominantTerm:
    poly: IntPolynomial
    chi: int
    root_indices: tuple  # indices into poly_root_enclosures(poly)


@dataclass(frozen=True)
class DominantSpectrum:
    lam: float
    lam_bounds: tuple  # certified (lo, hi) Fractions
    count: int
    dominant_terms: tuple


@dataclass(frozen=True)
class Classification:
    kind: str  # "periodic" | "interval" | "indeterminate"
    period: Optional[int]
    detail: str


class _RealCandidate:
    """A positive real algebraic number with an exact identity key and a
    refinable rational interval."""

    def __init__(self, key, interval_fn, multiplicity):
        self.key = key
        self.interval = interval_fn
        self.multiplicity = multiplicity


def _positive_real_candidates(p: IntPolynomial):
    """Positive real roots of p as _RealCandidate items (multiplicity from
    the factorization of p)."""
    out = []
    _, factors = factor_int(p)
    for g, mult in factors:
        if g.degree == 1:
            r = Fraction(-g.coeffs[0], g.coeffs[1])
            if r > 0:
                out.append(_RealCandidate(("rat", r), lambda bits, r=r: (r, r), mult))
            continue
        for idx, e in enumerate(poly_root_enclosures(g)):
            if not e.is_real:
                continue
            if e.real_sign() > 0:
                out.append(_RealCandidate(
                    (tuple(g.coeffs), idx),
                    lambda bits, e=e: (e.box(bits)[0], e.box(bits)[1]),
                    mult))
    return out


def _max_candidate(cands):
    best = cands[0]
    for c in cands[1:]:
        if c.key == best.key:
            continue
        if decide_order(best.interval, c.interval) < 0:
            best = c
    return best


def dominant_spectrum(es: ExponentialSum, q_cap: int = DEFAULT_Q_CAP) -> DominantSpectrum:
    """lambda, the number of roots on the circle |z| = lambda, and which
    roots of which terms are dominant.

    An empty exponential sum (identically zero sequence) reports lambda = 0
    with count 0.
    """
    if not es.terms:
        return DominantSpectrum(lam=0.0, lam_bounds=(Fraction(0), Fraction(0)),
                                count=0, dominant_terms=())
    per_term = []
    for poly, chi in es.terms:
        cands = _positive_real_candidates(product_polynomial(poly))
        if not cands:
            raise InputError(
                f"no positive real candidate for |root|^2 of {poly.coeffs}; "
                "exponential-sum polynomial is degenerate")
        per_term.append((poly, chi, _max_candidate(cands)))
    overall = _max_candidate([c for _, _, c in per_term])
    dominant = []
    count = 0
    for poly, chi, cand in per_term:
        if cand.key != overall.key:
            continue
        count += cand.multiplicity
        indices = _dominant_root_indices(poly, cand)
        dominant.append(DominantTerm(poly=poly, chi=chi, root_indices=indices))
    s_lo, s_hi = overall.interval(2 * DEFAULT_BITS)
    lam_lo, lam_hi = interval_sqrt(max(s_lo, Fraction(0)), s_hi)
    lam = math.sqrt((float(s_lo) + float(s_hi)) / 2)
    return DominantSpectrum(lam=lam, lam_bounds=(lam_lo, lam_hi), count=count,
                            dominant_terms=tuple(dominant))


def _dominant_root_indices(poly: IntPolynomial, cand: _RealCandidate) -> tuple:
    """Indices of the roots of poly with |root|^2 equal to the dominant value:
    non-dominant roots separate under refinement, so refine until exactly
    ``multiplicity`` survivors remain."""
    encl = poly_root_enclosures(poly)
    bits = DEFAULT_BITS
    while bits <= MAX_BITS:
        s_lo, s_hi = cand.interval(bits)
        alive = [i for i, e in enumerate(encl)
                 if e.modsq(bits)[1] >= s_lo and e.modsq(bits)[0] <= s_hi]
        if len(alive) == cand.multiplicity:
            return tuple(alive)
        bits *= 2
    raise PrecisionError(
        f"could not isolate the dominant roots of {poly.coeffs}")


def _conjugate_ratio_order(poly: IntPolynomial, encl, idx: int):
    """Order m when root_idx / conj(root_idx) is a primitive m-th root of
    unity, or None when it is provably not a root of unity."""
    rp = ratio_polynomial(poly)
    _, factors = factor_int(rp)
    factor_roots = []
    for g, _mult in factors:
        if g.degree == 1:
            # rational cross ratio; represent as a point box
            r = Fraction(-g.coeffs[0], g.coeffs[1])
            factor_roots.append((g, None, r))
        else:
            for root in poly_root_enclosures(g):
                factor_roots.append((g, root, None))

    def ratio_box(bits):
        b = encl[idx].box(bits)
        return box_div(b, box_conj(b))

    bits = DEFAULT_BITS
    while bits <= MAX_BITS:
        rb = ratio_box(bits)
        alive = []
        for g, root, point in factor_roots:
            if root is None:
                pb = (point, point, Fraction(0), Fraction(0))
            else:
                pb = root.box(bits)
            if boxes_intersect(pb, rb):
                alive.append(g)
        if len(alive) == 1:
            return cyclotomic_order(alive[0])
        bits *= 2
    raise PrecisionError("could not identify the conjugate ratio among the "
                         "ratio polynomial roots")


def classify_limit_points(ds: DominantSpectrum,
                          q_cap: int = DEFAULT_Q_CAP) -> Classification:
    """Trichotomy for the limit set of R_n / lambda^n.

    Periodic{q} when every dominant angle is an exact rational multiple of a
    turn (decided by cyclotomic identification); IntervalContaining when some
    dominant angle is certified irrational; Indeterminate when enclosures hit
    the precision ceiling or the period exceeds q_cap.
    """
    if ds.count == 0:
        return Classification(kind="periodic", period=1,
                              detail="identically zero sequence; limit set {0}")
    periods = []
    try:
        for term in ds.dominant_terms:
            encl = poly_root_enclosures(term.poly)
            for i in term.root_indices:
                e = encl[i]
                if e.is_real:
                    periods.append(1 if e.real_sign() > 0 else 2)
                    continue
                # one representative per conjugate pair: positive imaginary part
                if real_part_sign(lambda bits, e=e:
                                  (e.box(bits)[2], e.box(bits)[3],
                                   Fraction(0), Fraction(0))) < 0:
                    continue
                m = _conjugate_ratio_order(term.poly, encl, i)
                if m is None:
                    return Classification(
                        kind="interval", period=None,
                        detail="a dominant angle is irrational (conjugate ratio "
                               "is not a root of unity); Kronecker density gives "
                               "an interval of limit points")
                if m % 2 == 0:
                    periods.append(2 * m)
                else:
                    sign = real_part_sign(
                        lambda bits, e=e, m=m: box_pow(e.box(bits), m))
                    periods.append(m if sign > 0 else 2 * m)
    except PrecisionError as exc:
        return Classification(kind="indeterminate", period=None,
                              detail=f"precision ceiling reached: {exc}")
    q = lcm(*periods)
    if q > q_cap:
        return Classification(kind="indeterminate", period=None,
                              detail=f"period {q} exceeds the cap {q_cap}")
    return Classification(kind="periodic", period=q,
                          detail=f"all dominant angles rational; period {q}")


def limit_points_sample(seq, ds: DominantSpectrum, N: int) -> list:
    """Float samples R_n / lambda^n for n = 1..N (inspection/plotting)."""
    values = seq.values if isinstance(seq, ReidemeisterSequence) else seq
    N = min(N, len(values))
    out = []
    for n in range(1, N + 1):
        v = values[n - 1]
        if is_infinite(v):
            raise InputError("cannot sample an infinite entry")
        if ds.lam == 0.0:
            out.append(0.0)
        elif v == 0:
            out.append(0.0)
        else:
            out.append(math.copysign(
                math.exp(math.log(abs(v)) - n * math.log(ds.lam)), v))
    return out
