"""Closed-form growth rates and the dual-torus entropy identity.

The closed form is a product of per-eigenvalue-pair factors
max(|xi|, |eta|) over the archimedean place plus p**e corrections from the
finite places of S-integer sections.  Factors are carried symbolically:
rational values stay exact Fractions, irrational ones are certified rational
intervals from root enclosures, and p-adic parts are exact rational
multiples of log p.  The numeric value is assembled only at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import sympy

from .enclosures import (
    DEFAULT_BITS,
    box_mul,
    decide_order,
    interval_sqrt,
    modsq_box,
    poly_root_enclosures,
)
from .errors import (
    HypothesisViolatedError,
    InputError,
    NotTameError,
    PrecisionError,
    RootOfUnityError,
    UnsupportedPairingError,
)
from .exact_linalg import (
    BigIntMatrix,
    IntPolynomial,
    RatMatrix,
    RatPolynomial,
    char_poly,
    poly_at_matrix,
    rat_kernel_basis,
    rat_solve,
    restrict_to_invariant_subspace,
)
from .group_model import AbelianSection, NilpotentSystem, tameness_check
from .padic import padic_growth_factor
from .polyalg import cyclotomic_factors, factor_int, to_sympy
from .reidemeister import coincidence_sequence

__all__ = ["RationalLog", "AlgebraicLog", "PadicLog", "GrowthReport",
           "growth_rate", "entropy_dual_torus", "verify_entropy_identity"]

_VALUE_BITS = 192  # fixed working precision for reported algebraic intervals


@dataclass(frozen=True)
class RationalLog:
    """Exact rational factor of the closed form."""

    value: Fraction


@dataclass(frozen=True)
class AlgebraicLog:
    """Certified interval for an irrational product of eigenvalue moduli."""

    note: str
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class PadicLog:
    """Factor prime**exponent from one finite place."""

    prime: int
    exponent: Fraction


LogTerm = Union[RationalLog, AlgebraicLog, PadicLog]


@dataclass(frozen=True)
class GrowthReport:
    log_terms: tuple
    numeric: float
    exact_value: Optional[Fraction]
    archimedean: float
    padic: float
    empirical: tuple
    agreement: float


def _flog(q: Fraction) -> float:
    q = Fraction(q)
    if q <= 0:
        raise InputError("logarithm of a nonpositive value")
    return math.log(q.numerator) - math.log(q.denominator)


def _term_log(term: LogTerm) -> float:
    if isinstance(term, RationalLog):
        return _flog(term.value)
    if isinstance(term, AlgebraicLog):
        return _flog((term.lo + term.hi) / 2)
    return float(term.exponent) * math.log(term.prime)


def _product_of_terms(terms):
    """(float value, exact Fraction or None) for a product of log terms;
    the exact value exists when every factor is rational."""
    exact: Optional[Fraction] = Fraction(1)
    for t in terms:
        if isinstance(t, RationalLog):
            exact *= t.value
        elif isinstance(t, PadicLog) and t.exponent.denominator == 1:
            exact *= Fraction(t.prime) ** int(t.exponent)
        else:
            exact = None
            break
    if exact is not None:
        return float(exact), exact
    return math.exp(sum(_term_log(t) for t in terms)), None


def _monic_rat_factors(p: RatPolynomial):
    """Monic irreducible factors over Q with multiplicity."""
    poly = to_sympy(p)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        f = f.monic()
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((RatPolynomial.of(coeffs), mult))
    return out


def _cleared_int(w: RatPolynomial) -> IntPolynomial:
    return w.clear_denominators()[0]


def _root_modulus_product_interval(enclosures, indices, bits=_VALUE_BITS):
    """Certified (lo, hi) for the product of |root_i| over the given indices."""
    lo, hi = Fraction(1), Fraction(1)
    for i in indices:
        mlo, mhi = enclosures[i].modsq(bits)
        mlo = max(mlo, Fraction(0))
        slo, shi = interval_sqrt(mlo, mhi)
        lo *= slo
        hi *= shi
    return lo, hi


def _scalar_pair_terms(base: RatPolynomial, s: Fraction, copies: int = 1):
    """Terms max(|xi|, |s|) over the roots xi of base, each pair repeated
    ``copies`` times.  Exact where the comparison is rational, certified
    intervals otherwise."""
    terms = []
    s_abs = abs(Fraction(s))
    for w, mult in _monic_rat_factors(base):
        reps = mult * copies
        if w.degree == 1:
            r = -w.coeffs[0]
            if abs(r) == s_abs:
                raise HypothesisViolatedError(
                    f"|{r}| equals |{s}|; the growth formula hypothesis fails")
            v = max(abs(r), s_abs)
            if v != 1:
                terms.append(RationalLog(v ** reps))
            continue
        wi = _cleared_int(w)
        encl = poly_root_enclosures(wi)
        s_sq = s_abs * s_abs
        inside = []
        outside = 0
        for i, e in enumerate(encl):
            try:
                order = decide_order(e.modsq, lambda _bits: (s_sq, s_sq))
            except PrecisionError as exc:
                raise HypothesisViolatedError(
                    f"an eigenvalue modulus of {wi.coeffs} is indistinguishable "
                    f"from |{s}|") from exc
            if order > 0:
                inside.append(i)
            else:
                outside += 1
        if len(inside) == len(encl):
            v = abs(w.coeffs[0])  # product of |roots| of a monic polynomial
            if v != 1:
                terms.append(RationalLog(v ** reps))
        else:
            if inside:
                lo, hi = _root_modulus_product_interval(encl, inside)
                terms.append(AlgebraicLog(
                    note=f"{len(inside)} root(s) of {wi.coeffs} beyond radius {s_abs}",
                    lo=lo ** reps, hi=hi ** reps))
            if outside and s_abs not in (0, 1):
                terms.append(RationalLog(s_abs ** (outside * reps)))
    return terms


def _commuting_block_terms(sec: AbelianSection):
    """max(|xi_i|, |eta_i|) terms for commuting phi, psi with square-free
    characteristic polynomials, paired block by block."""
    phi, psi = sec.phi, sec.psi
    if phi.mul(psi) != psi.mul(phi):
        raise UnsupportedPairingError(
            "phi and psi do not commute; the eigenvalue pairing is not certified")
    for m in (phi, psi):
        cp = to_sympy(char_poly(m))
        if sympy.degree(sympy.gcd(cp, cp.diff())) > 0:
            raise UnsupportedPairingError(
                "characteristic polynomial is not square-free; simultaneous "
                "diagonalizability cannot be certified")
    terms = []
    for f_alpha, mult in _monic_rat_factors(char_poly(phi)):
        assert mult == 1
        basis = rat_kernel_basis(poly_at_matrix(f_alpha, phi))
        phi_block = restrict_to_invariant_subspace(phi, basis)
        psi_block = restrict_to_invariant_subspace(psi, basis)
        g_alpha = char_poly(psi_block)
        if f_alpha.degree == 1:
            terms += _scalar_pair_terms(g_alpha, -f_alpha.coeffs[0])
            continue
        if len(_monic_rat_factors(g_alpha)) > 1:
            raise UnsupportedPairingError(
                "block characteristic polynomial of psi is reducible; the "
                "pairing is ambiguous")
        if g_alpha.degree == 1:
            terms += _scalar_pair_terms(f_alpha, -g_alpha.coeffs[0])
            continue
        # psi_block is a polynomial h in phi_block (the block is a field);
        # the pairing is eta = h(xi)
        m = f_alpha.degree
        cols = []
        pw = RatMatrix.identity(m)
        for _ in range(m):
            cols.append(list(pw.entries))
            pw = pw.mul(phi_block)
        system = RatMatrix(m * m, m, tuple(cols[j][i] for i in range(m * m)
                                           for j in range(m)))
        h = rat_solve(system, list(psi_block.entries))
        assert h is not None, "commuting map must be polynomial in a cyclic map"

        fi = _cleared_int(f_alpha)
        encl = poly_root_enclosures(fi)

        def eta_box(e, bits):
            b = e.box(bits)
            acc_box = (Fraction(0), Fraction(0), Fraction(0), Fraction(0))
            for c in reversed(h):
                acc_box = box_mul(acc_box, b)
                acc_box = (acc_box[0] + c, acc_box[1] + c, acc_box[2], acc_box[3])
            return acc_box

        inside = []
        outside = []
        for i, e in enumerate(encl):
            try:
                order = decide_order(e.modsq,
                                     lambda bits, e=e: modsq_box(eta_box(e, bits)))
            except PrecisionError as exc:
                raise HypothesisViolatedError(
                    "paired eigenvalue moduli are indistinguishable") from exc
            if order > 0:
                inside.append(i)
            else:
                outside.append(i)
        if len(inside) == len(encl):
            v = abs(f_alpha.coeffs[0])
            if v != 1:
                terms.append(RationalLog(v))
        elif not inside:
            v = abs(g_alpha.coeffs[0])
            if v != 1:
                terms.append(RationalLog(v))
        else:
            lo, hi = _root_modulus_product_interval(encl, inside)
            for i in outside:
                mlo, mhi = modsq_box(eta_box(encl[i], _VALUE_BITS))
                slo, shi = interval_sqrt(max(mlo, Fraction(0)), mhi)
                lo *= slo
                hi *= shi
            terms.append(AlgebraicLog(
                note=f"mixed dominant pairing on block {fi.coeffs}", lo=lo, hi=hi))
    return terms


def _archimedean_section_terms(sec: AbelianSection):
    phi, psi = sec.phi, sec.psi
    if psi.is_scalar():
        return _scalar_pair_terms(char_poly(phi), psi.get(0, 0))
    if phi.is_scalar():
        return _scalar_pair_terms(char_poly(psi), phi.get(0, 0))
    return _commuting_block_terms(sec)


def growth_rate(system: NilpotentSystem, N: int = 40) -> GrowthReport:
    """Closed-form growth rate of the coincidence numbers plus empirical
    R_n**(1/n) diagnostics.

    Requires a tame system whose paired eigenvalue moduli differ at the
    archimedean place; the p-adic factors additionally need a certifiable
    pairing (see padic.padic_growth_factor).
    """
    verdict = tameness_check(system)
    if not verdict.tame:
        raise NotTameError(
            f"system is not tame (witness n = {verdict.witness_n}); the growth "
            "rate formula does not apply")
    terms: list = []
    for sec in system.sections:
        terms.extend(_archimedean_section_terms(sec))
        for p in sorted(sec.prime_support):
            pf = padic_growth_factor(sec, p)
            if pf.exponent != 0:
                terms.append(PadicLog(prime=p, exponent=pf.exponent))
    arch_terms = [t for t in terms if not isinstance(t, PadicLog)]
    padic_terms = [t for t in terms if isinstance(t, PadicLog)]
    arch_numeric, arch_exact = _product_of_terms(arch_terms)
    padic_numeric, padic_exact = _product_of_terms(padic_terms)
    if arch_exact is not None and padic_exact is not None:
        exact: Optional[Fraction] = arch_exact * padic_exact
        numeric = float(exact)
    else:
        exact = None
        numeric = arch_numeric * padic_numeric

    seq = coincidence_sequence(system, N)
    empirical = tuple(math.exp(math.log(v) / n)
                      for n, v in enumerate(seq.values, start=1))
    agreement = abs(empirical[-1] - numeric) / numeric if numeric else math.inf
    return GrowthReport(log_terms=tuple(terms), numeric=numeric,
                        exact_value=exact,
                        archimedean=arch_numeric,
                        padic=padic_numeric,
                        empirical=empirical, agreement=agreement)


def entropy_dual_torus(A, bits: int = DEFAULT_BITS) -> float:
    """Topological entropy of the toral endomorphism dual to x -> Ax on Z^d:
    the sum of log max(|xi|, 1) over the eigenvalues of the integer matrix A.

    Raises RootOfUnityError when some eigenvalue is a root of unity (the dual
    system is not even tame); expansiveness and specification of the dual map
    are assumed, not verified.
    """
    if not isinstance(A, (BigIntMatrix, RatMatrix)):
        A = RatMatrix.from_rows(A)
    if isinstance(A, RatMatrix):
        A = A.to_bigint()
    cp = char_poly(A).to_int()
    cyclo = cyclotomic_factors(cp)
    if cyclo:
        orders = ", ".join(str(m) for m, _ in cyclo)
        raise RootOfUnityError(
            f"characteristic polynomial has cyclotomic factor(s) of order {orders}")
    total = 0.0
    _, factors = factor_int(cp)
    for w, mult in factors:
        if w.degree == 1:
            r = Fraction(-w.coeffs[0], w.coeffs[1])
            if abs(r) > 1:
                total += mult * _flog(abs(r))
            continue
        encl = poly_root_enclosures(w)
        one = Fraction(1)
        try:
            inside = [i for i, e in enumerate(encl)
                      if decide_order(e.modsq, lambda _b: (one, one)) > 0]
            if len(inside) == len(encl):
                total += mult * _flog(abs(Fraction(w.coeffs[0], w.coeffs[-1])))
            elif inside:
                lo, hi = _root_modulus_product_interval(encl, inside)
                total += mult * _flog((lo + hi) / 2)
        except PrecisionError:
            # an eigenvalue sits on (or within 1e-30 of) the unit circle:
            # log max(|xi|, 1) is still well defined, use interval midpoints
            for e in encl:
                mlo, mhi = e.modsq(_VALUE_BITS)
                slo, shi = interval_sqrt(max(mlo, Fraction(0)), mhi)
                mid = (max(slo, 1) + max(shi, 1)) / 2
                if mid > 1:
                    total += mult * _flog(mid)
    return total


def verify_entropy_identity(system: NilpotentSystem, N: int = 40) -> float:
    """Gap between log growth_rate(system) and the sum of the dual-torus
    entropies of the section matrices (psi = identity, finitely generated)."""
    if not system.psi_is_identity:
        raise InputError("the entropy identity needs psi = identity")
    if not system.is_finitely_generated:
        raise InputError("the entropy identity needs finitely generated sections")
    report = growth_rate(system, N=N)
    log_growth = math.log(report.numeric)
    entropy_sum = sum(entropy_dual_torus(sec.phi) for sec in system.sections)
    return abs(log_growth - entropy_sum) / max(1.0, abs(entropy_sum))
