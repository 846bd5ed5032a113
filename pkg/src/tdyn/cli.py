"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes are stable:
0 success, 1 input/parse error, 2 non-tame input where tameness is required
(including root-of-unity eigenvalues), 3 unsupported p-adic pairing,
4 numeric indeterminacy at the precision ceiling.  All big integers are
serialized as decimal strings in JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import asymptotics, congruence, growth, reidemeister, zeta
from .errors import (
    HypothesisViolatedError,
    InfiniteValueError,
    InputError,
    NoRecurrenceError,
    NonIntegerResidueError,
    NotSquareFreeError,
    NotTameError,
    PrecisionError,
    RootOfUnityError,
    TdynError,
    UnsupportedPairingError,
)
from .exact_linalg import BigIntMatrix, char_poly
from .group_model import (
    NilpotentSystem,
    builtin_example,
    system_from_json,
    tameness_check,
    validate,
)
from .padic import newton_polygon, padic_growth_factor
from .reidemeister import is_infinite

COMMANDS = ("validate", "tame", "rseq", "nseq", "zeta", "realize",
            "congruence", "growth", "entropy", "classify", "padic")


@dataclass
class RunConfig:
    command: str
    builtin: Optional[str] = None
    input_path: Optional[str] = None
    n: int = 40
    precision_bits: int = 128
    output_format: str = "table"
    prime: Optional[int] = None
    section: int = 1
    moduli: tuple = ()
    nielsen: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise InputError("--n must be >= 1")
        if self.precision_bits < 64:
            raise InputError("--precision must be >= 64")
        if self.output_format not in ("table", "json"):
            raise InputError("--format must be table or json")


def _load_system(config: RunConfig) -> NilpotentSystem:
    if (config.builtin is None) == (config.input_path is None):
        raise InputError("give exactly one of --builtin KEY or --input FILE")
    if config.builtin is not None:
        return builtin_example(config.builtin)
    try:
        with open(config.input_path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {config.input_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {config.input_path}: {exc}") from exc
    return system_from_json(doc)


def _checked(system: NilpotentSystem) -> NilpotentSystem:
    problems = validate(system)
    if problems:
        raise InputError("; ".join(problems))
    return system


def _window_length(system: NilpotentSystem, n: int) -> int:
    order_bound = 1
    for sec in system.sections:
        order_bound *= 2 ** sec.rank
    return max(n, 2 * order_bound + 4)


def _seq_of(config: RunConfig, system: NilpotentSystem, length: int):
    if config.nielsen:
        return reidemeister.nielsen_sequence(system, length)
    return reidemeister.coincidence_sequence(system, length)


def _value_str(v) -> str:
    return "infinity" if is_infinite(v) else str(v)


def _poly_strs(p) -> list:
    return [str(c) for c in p.coeffs]


def _matrix_strs(m: BigIntMatrix) -> list:
    return [[str(m.get(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def _zeta_payload(config: RunConfig, system: NilpotentSystem):
    seq = _seq_of(config, system, _window_length(system, config.n))
    rf, es = zeta.zeta_from_sequence(seq)
    roundtrip = zeta.expand(rf, len(seq.values)) == list(seq.values)
    return seq, rf, es, roundtrip


# ---------------------------------------------------------------- commands

def _cmd_validate(config, system):
    problems = validate(system)
    return {"ok": not problems, "violations": problems}


def _cmd_tame(config, system):
    v = tameness_check(_checked(system))
    return {"tame": v.tame, "witness_n": v.witness_n,
            "witness_section": v.witness_section,
            "checked_up_to": v.checked_up_to}


def _cmd_rseq(config, system):
    seq = reidemeister.coincidence_sequence(_checked(system), config.n)
    return {"sequence": [_value_str(v) for v in seq.values]}


def _cmd_nseq(config, system):
    seq = reidemeister.nielsen_sequence(_checked(system), config.n)
    return {"sequence": [_value_str(v) for v in seq.values]}


def _cmd_zeta(config, system):
    seq, rf, es, roundtrip = _zeta_payload(config, _checked(system))
    return {
        "window": len(seq.values),
        "zeta": {"num": _poly_strs(rf.numerator), "den": _poly_strs(rf.denominator)},
        "exponential_sum": [{"poly": _poly_strs(p), "chi": str(chi)}
                            for p, chi in es.terms],
        "roundtrip_verified": roundtrip,
    }


def _cmd_realize(config, system):
    seq, rf, es, _ = _zeta_payload(config, _checked(system))
    br = zeta.realize_bouquet(es)
    check_n = 2 * (br.a_even.rows + br.a_odd.rows) + 5
    need = max(check_n, len(seq.values))
    long_seq = _seq_of(config, system, need)
    ok = br.lefschetz_values(check_n) == list(long_seq.values[:check_n])
    return {
        "realization": {"A_e": _matrix_strs(br.a_even),
                        "A_o": _matrix_strs(br.a_odd)},
        "n_spheres": br.n_spheres,
        "n_circles": br.n_circles,
        "trace_check_up_to": check_n,
        "trace_check_passed": ok,
    }


def _cmd_congruence(config, system):
    seq = _seq_of(config, _checked(system), config.n)
    moduli = config.moduli or tuple(range(1, config.n + 1))
    reports = []
    for n in moduli:
        rep = congruence.gauss_check(seq, n)
        reports.append({"n": rep.n, "combination": str(rep.combination),
                        "residue": str(rep.residue), "passed": rep.passed})
    return {"congruences": reports, "all_passed": all(r["passed"] for r in reports)}


def _growth_terms_payload(terms):
    out = []
    for t in terms:
        if isinstance(t, growth.RationalLog):
            out.append({"kind": "rational", "value": str(t.value)})
        elif isinstance(t, growth.AlgebraicLog):
            out.append({"kind": "algebraic", "lo": str(t.lo), "hi": str(t.hi),
                        "note": t.note})
        else:
            out.append({"kind": "padic", "prime": t.prime,
                        "exponent": str(t.exponent)})
    return out


def _cmd_growth(config, system):
    rep = growth.growth_rate(_checked(system), N=config.n)
    return {
        "growth": {
            "closed_form_log_terms": _growth_terms_payload(rep.log_terms),
            "numeric": rep.numeric,
            "exact": None if rep.exact_value is None else str(rep.exact_value),
            "archimedean": rep.archimedean,
            "padic": rep.padic,
            "empirical": list(rep.empirical),
            "agreement": rep.agreement,
        }
    }


def _cmd_entropy(config, system):
    system = _checked(system)
    gap = growth.verify_entropy_identity(system, N=config.n)
    entropies = [growth.entropy_dual_torus(sec.phi, bits=config.precision_bits)
                 for sec in system.sections]
    return {"section_entropies": entropies, "entropy_sum": sum(entropies),
            "identity_gap": gap, "hypotheses_note":
            "expansiveness and specification of the dual maps are assumed"}


def _cmd_classify(config, system):
    seq, rf, es, _ = _zeta_payload(config, _checked(system))
    ds = asymptotics.dominant_spectrum(es)
    cls = asymptotics.classify_limit_points(ds)
    samples = asymptotics.limit_points_sample(seq, ds, min(config.n, len(seq.values)))
    return {
        "lambda": ds.lam,
        "lambda_bounds": [str(ds.lam_bounds[0]), str(ds.lam_bounds[1])],
        "count": ds.count,
        "dominant_terms": [{"poly": _poly_strs(t.poly), "chi": str(t.chi),
                            "dominant_roots": list(t.root_indices)}
                           for t in ds.dominant_terms],
        "classification": {"kind": cls.kind, "period": cls.period,
                           "detail": cls.detail},
        "samples": samples,
    }


def _cmd_padic(config, system):
    system = _checked(system)
    if config.prime is None:
        raise InputError("padic needs --prime P")
    k = config.section
    if not (1 <= k <= len(system.sections)):
        raise InputError(f"--section must be in 1..{len(system.sections)}")
    sec = system.sections[k - 1]
    out = {"section": k, "prime": config.prime}
    for label, m in (("phi", sec.phi), ("psi", sec.psi)):
        np_ = newton_polygon(char_poly(m), config.prime)
        out[f"newton_polygon_{label}"] = [
            {"slope": str(s), "length": length} for s, length in np_.segments]
    pf = padic_growth_factor(sec, config.prime)
    out["growth_factor"] = {"prime": pf.prime, "exponent": str(pf.exponent),
                            "value": pf.value}
    return out


_HANDLERS = {
    "validate": _cmd_validate,
    "tame": _cmd_tame,
    "rseq": _cmd_rseq,
    "nseq": _cmd_nseq,
    "zeta": _cmd_zeta,
    "realize": _cmd_realize,
    "congruence": _cmd_congruence,
    "growth": _cmd_growth,
    "entropy": _cmd_entropy,
    "classify": _cmd_classify,
    "padic": _cmd_padic,
}


# ---------------------------------------------------------------- rendering

def _render_table(command: str, result: dict, out) -> None:
    if command in ("rseq", "nseq"):
        print(" ".join(result["sequence"]), file=out)
        return
    if command == "zeta":
        print("numerator:  " + " ".join(result["zeta"]["num"]), file=out)
        print("denominator: " + " ".join(result["zeta"]["den"]), file=out)
        for term in result["exponential_sum"]:
            print(f"term: chi={term['chi']} poly={' '.join(term['poly'])}", file=out)
        print(f"roundtrip_verified: {result['roundtrip_verified']}", file=out)
        return
    if command == "congruence":
        for rep in result["congruences"]:
            status = "passed" if rep["passed"] else "FAILED"
            print(f"n={rep['n']} combination={rep['combination']} "
                  f"residue={rep['residue']} {status}", file=out)
        print(f"all_passed: {result['all_passed']}", file=out)
        return
    _render_generic(result, out)


def _render_generic(result, out, indent=0) -> None:
    pad = "  " * indent
    for key, value in result.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:", file=out)
            _render_generic(value, out, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:", file=out)
            for item in value:
                _render_generic(item, out, indent + 1)
                print(f"{pad}  -", file=out)
        else:
            print(f"{pad}{key}: {value}", file=out)


def run(config: RunConfig, out=None, err=None) -> int:
    """Execute one command; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        system = _load_system(config)
        result = _HANDLERS[config.command](config, system)
    except (NotTameError, RootOfUnityError, InfiniteValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except UnsupportedPairingError as exc:
        print(f"error: {exc}", file=err)
        return 3
    except (PrecisionError, HypothesisViolatedError) as exc:
        print(f"error: {exc}", file=err)
        return 4
    except (InputError, NoRecurrenceError, NonIntegerResidueError,
            NotSquareFreeError, TdynError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    if config.output_format == "json":
        json.dump({"command": config.command, **result}, out, indent=2)
        print(file=out)
    else:
        _render_table(config.command, result, out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdyn",
        description="Exact Reidemeister/Nielsen coincidence sequences, zeta "
                    "functions, congruences and growth rates for endomorphism "
                    "pairs given on the abelian sections of a torsion-free "
                    "nilpotent group.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("validate", "check the system descriptor invariants"),
        ("tame", "decide finiteness of all iterated coincidence numbers"),
        ("rseq", "Reidemeister coincidence number sequence"),
        ("nseq", "Nielsen coincidence number sequence"),
        ("zeta", "rational zeta function and exponential sum"),
        ("realize", "bouquet trace realization matrices A_e, A_o"),
        ("congruence", "Gauss congruence reports"),
        ("growth", "closed-form and empirical growth rate"),
        ("entropy", "dual-torus entropies and the growth identity gap"),
        ("classify", "dominant spectrum and limit-point trichotomy"),
        ("padic", "Newton polygon and p-adic growth factor of a section"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--builtin", help="catalog key, e.g. z_times_d:2, "
                       "z_pair:2,1, torus_matrix:2,1,1,1, heisenberg:2,1,1,1, "
                       "s_integer:1/2,2")
        p.add_argument("--input", dest="input_path",
                       help="path to a JSON system descriptor")
        p.add_argument("--n", type=int, default=40,
                       help="sequence length / congruence range (default 40)")
        p.add_argument("--precision", dest="precision_bits", type=int,
                       default=128, help="starting precision in bits (default 128)")
        p.add_argument("--format", dest="output_format", default="table",
                       choices=("table", "json"))
        if name in ("zeta", "realize", "congruence", "classify"):
            p.add_argument("--nielsen", action="store_true",
                           help="use the Nielsen sequence (zeros at infinite "
                                "Reidemeister numbers)")
        if name == "congruence":
            p.add_argument("--moduli", type=int, nargs="+", default=[],
                           help="explicit moduli (default 1..N)")
        if name == "padic":
            p.add_argument("--prime", type=int, required=True)
            p.add_argument("--section", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; remap to the documented input-error code
        return 0 if exc.code == 0 else 1
    try:
        config = RunConfig(
            command=args.command,
            builtin=args.builtin,
            input_path=args.input_path,
            n=args.n,
            precision_bits=args.precision_bits,
            output_format=args.output_format,
            prime=getattr(args, "prime", None),
            section=getattr(args, "section", 1),
            moduli=tuple(getattr(args, "moduli", []) or ()),
            nielsen=getattr(args, "nielsen", False),
        )
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
