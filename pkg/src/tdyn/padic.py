"""Exact p-adic valuations via Newton polygons.

The p-adic absolute value of an algebraic eigenvalue is only ever read off the
Newton polygon of an exact characteristic polynomial: a hull segment of slope
s and horizontal length l certifies exactly l roots of valuation -s, i.e. of
absolute value p**s.  No p-adic root finding happens anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Union

import sympy

from .errors import InputError, UnsupportedPairingError
from .exact_linalg import (
    IntPolynomial,
    RatMatrix,
    RatPolynomial,
    char_poly,
    poly_at_matrix,
    rat_kernel_basis,
    restrict_to_invariant_subspace,
)
from .group_model import AbelianSection

__all__ = ["ord_p", "NewtonPolygon", "newton_polygon", "root_valuations",
           "PadicGrowthFactor", "padic_growth_factor"]


def _check_prime(p: int):
    if not sympy.isprime(p):
        raise InputError(f"{p} is not prime")


def ord_p(q: Union[int, Fraction], p: int) -> int:
    """p-adic ordinal of a nonzero rational; |q|_p = p**(-ord_p(q))."""
    _check_prime(p)
    q = Fraction(q)
    if q == 0:
        raise InputError("ord_p(0) is undefined (the norm is 0)")

    def _ord_int(n: int) -> int:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    return _ord_int(q.numerator) - _ord_int(q.denominator)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, ord_p(a_i)); slopes strictly increase."""

    prime: int
    segments: tuple  # of (slope: Fraction, length: int)

    @property
    def total_length(self) -> int:
        return sum(length for _, length in self.segments)


def _coeff_fractions(f) -> tuple:
    if isinstance(f, IntPolynomial):
        return f.to_fractions()
    if isinstance(f, RatPolynomial):
        return f.coeffs
    return tuple(Fraction(c) for c in f)


def newton_polygon(f, p: int) -> NewtonPolygon:
    """Newton polygon of a nonzero rational-coefficient polynomial at p.

    Zero roots (trailing zero coefficients) are excluded: the polygon starts
    at the first nonzero coefficient, so total length = degree - (multiplicity
    of the root 0).
    """
    _check_prime(p)
    coeffs = _coeff_fractions(f)
    points = [(i, Fraction(ord_p(c, p))) for i, c in enumerate(coeffs) if c != 0]
    if not points:
        raise InputError("newton_polygon of the zero polynomial")
    # lower hull, left to right (Andrew monotone chain, lower part only)
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep hull[-1] only while the slope strictly increases at it
            if (y2 - y1) * (pt[0] - x1) < (pt[1] - y1) * (x2 - x1):
                break
            hull.pop()
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(prime=p, segments=tuple(segments))


def root_valuations(f, p: int) -> list:
    """Valuations of all roots of f, zero roots reported as math.inf.

    Returned with multiplicity; a segment of slope s contributes ``length``
    copies of -s.
    """
    coeffs = _coeff_fractions(f)
    zeros = 0
    while zeros < len(coeffs) and coeffs[zeros] == 0:
        zeros += 1
    vals: list = [inf] * zeros
    if zeros == len(coeffs):
        raise InputError("zero polynomial has no root valuations")
    for slope, length in newton_polygon(f, p).segments:
        vals.extend([-slope] * length)
    return vals


@dataclass(frozen=True)
class PadicGrowthFactor:
    """Factor p**exponent contributed to the growth rate at the prime p."""

    prime: int
    exponent: Fraction

    @property
    def value(self) -> float:
        return float(self.prime) ** float(self.exponent)


def _pair_exponent(v_list, w_list) -> Fraction:
    """Sum of -min(v_i, w_i) over pairs; this is log_p of prod max(|xi|,|eta|)
    with the equal-valuation pairs contributing |eta| (same number)."""
    total = Fraction(0)
    for v, w in zip(v_list, w_list):
        m = min(v, w)
        if m == inf:
            raise UnsupportedPairingError(
                "xi = eta = 0 on a common eigenvector; the pair is not tame")
        total -= Fraction(m)
    return total


def _single_slope(vals) -> bool:
    return len(set(vals)) == 1


def _factor_char(m: RatMatrix):
    """Irreducible factors (as sympy Polys) of the char poly, with multiplicity."""
    x = sympy.Symbol("x")
    cp = char_poly(m)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(cp.coeffs))
    poly = sympy.Poly(expr, x)
    _, factors = poly.factor_list()
    return poly, factors


def _poly_coeffs_ascending(p) -> tuple:
    cs = [Fraction(c.p, c.q) for c in p.all_coeffs()[::-1]]
    return tuple(cs)


def padic_growth_factor(sec: AbelianSection, p: int) -> PadicGrowthFactor:
    """p-adic factor of the growth rate for one section.

    Single-endomorphism case (psi = identity): product over eigenvalues of
    max(|xi|_p, 1).  Coincidence case: product of max(|xi_i|_p, |eta_i|_p)
    over the induced pairing, supported when psi (or phi) is scalar or the two
    maps commute with square-free characteristic polynomials and the pairing
    of valuations is certified by single-slope Newton polygons; anything else
    raises UnsupportedPairingError.
    """
    _check_prime(p)
    phi, psi = sec.phi, sec.psi

    if psi.is_scalar() or phi.is_scalar():
        # includes psi = identity; pairs are (xi_i, s) for the scalar s
        if psi.is_scalar():
            vals = root_valuations(char_poly(phi), p)
            s = psi.get(0, 0)
        else:
            vals = root_valuations(char_poly(psi), p)
            s = phi.get(0, 0)
        w = inf if s == 0 else Fraction(ord_p(s, p))
        return PadicGrowthFactor(p, _pair_exponent(vals, [w] * len(vals)))

    if phi.mul(psi) != psi.mul(phi):
        raise UnsupportedPairingError(
            "phi and psi do not commute; eigenvalue pairing at p cannot be certified")
    cp_phi, factors_phi = _factor_char(phi)
    cp_psi, _ = _factor_char(psi)
    for cp in (cp_phi, cp_psi):
        if sympy.degree(sympy.gcd(cp, cp.diff())) > 0:
            raise UnsupportedPairingError(
                "characteristic polynomial is not square-free; simultaneous "
                "diagonalizability cannot be certified")

    exponent = Fraction(0)
    for f_alpha, mult in factors_phi:
        assert mult == 1
        # kernel of f_alpha(phi) is the joint block; psi restricts to it
        fa = RatPolynomial.of(_poly_coeffs_ascending(f_alpha))
        basis = rat_kernel_basis(poly_at_matrix(fa, phi))
        assert len(basis) == sympy.degree(f_alpha)
        psi_block = restrict_to_invariant_subspace(psi, basis)
        g_alpha = char_poly(psi_block)
        v_phi = root_valuations(fa, p)
        v_psi = root_valuations(g_alpha, p)
        if _single_slope(v_phi):
            exponent += _pair_exponent(v_psi, [v_phi[0]] * len(v_psi))
        elif _single_slope(v_psi):
            exponent += _pair_exponent(v_phi, [v_psi[0]] * len(v_phi))
        else:
            raise UnsupportedPairingError(
                f"mixed Newton polygon slopes at p={p} in both factors of a "
                "joint block; valuation pairing is ambiguous")
    return PadicGrowthFactor(p, exponent)
