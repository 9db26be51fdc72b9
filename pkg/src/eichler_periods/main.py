"""
Command-line interface for Eichler Periods
"""

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from .config import settings
from .eichler import lehner_constant
from .errors import DomainError, EichlerError, UsageError, require
from .lvalues import TwistSpec, lvalue_vector
from .maass import verify_theorem1, verify_theorem2, verify_theorem3
from .modgroup import S, GroupElement, MultiplierSystem
from .models import complex_pair
from .periods import example_polynomial, period_from_lvalues, period_quadrature
from .poincare import PoincareSpec, kloosterman_coefficient, poincare_coefficient, poincare_eval
from .qseries import (
    FourierExpansion,
    bol_derivative,
    delta_expansion,
    eisenstein,
    eta_expansion,
    eta_power_expansion,
    inverse_delta_expansion,
    j_expansion,
)
from .services import CoefficientCacheService, ReportService

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

MIN_N = 2
MIN_CMAX = 1


def status(message: str):
    print(message, file=sys.stderr)


@dataclass
class RunConfig:
    """Truncations and tolerances for one invocation"""

    N: int
    c_max: int
    tol: float
    out: Optional[str] = None
    json_pretty: bool = False

    def __post_init__(self):
        if self.N < MIN_N:
            raise UsageError(f"--N must be at least {MIN_N}")
        if self.c_max < MIN_CMAX:
            raise UsageError(f"--cmax must be at least {MIN_CMAX}")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            N=args.N if args.N is not None else settings.qseries_n,
            c_max=args.cmax if args.cmax is not None else settings.poincare_cmax,
            tol=args.tol if args.tol is not None else settings.tol,
            out=args.out,
            json_pretty=args.json_pretty or settings.json_pretty,
        )


_ETA_POWER = re.compile(r"^eta\^?(\d+)$")
_EISENSTEIN = re.compile(r"^e(\d+)$")
_BOL = re.compile(r"^d(\d+):(.+)$")


def parse_form(text: str, N: int) -> FourierExpansion:
    """Form ids: zero[:k], eta, eta^r, delta, invdelta, E<k>, j and D<m>:<form>"""
    name = text.strip().lower()
    bol = _BOL.match(name)
    if bol:
        return bol_derivative(parse_form(bol.group(2), N), int(bol.group(1)))
    if name.startswith("zero"):
        weight = int(name.split(":", 1)[1]) if ":" in name else 12
        return FourierExpansion.zero(N, weight)
    if name == "eta":
        return eta_expansion(N)
    match = _ETA_POWER.match(name)
    if match:
        return eta_power_expansion(int(match.group(1)), N)
    if name == "delta":
        return delta_expansion(N)
    if name == "invdelta":
        return inverse_delta_expansion(N)
    if name == "j":
        return j_expansion(N)
    match = _EISENSTEIN.match(name)
    if match:
        return eisenstein(int(match.group(1)), N)
    raise UsageError(f"unknown form id '{text}'")


def parse_gamma(text: str) -> GroupElement:
    try:
        return GroupElement.from_string(text)
    except (DomainError, ValueError) as e:
        raise UsageError(f"cannot parse group element '{text}': {e}")


def parse_point(text: str) -> complex:
    """``x,y`` or a Python complex literal such as 0.3+1.1j"""
    try:
        if "," in text:
            x, y = (float(p) for p in text.split(","))
            return complex(x, y)
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse point '{text}'")


def to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (complex, np.complexfloating)):
        return complex_pair(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def format_float(value: float) -> str:
    """17 significant digits; non-finite values as json.dumps writes them"""
    if not math.isfinite(value):
        return json.dumps(value)
    text = format(value, ".17g")
    return text if any(ch in text for ch in ".e") else text + ".0"


def _join(opening: str, closing: str, parts: List[str], indent: Optional[int], level: int) -> str:
    if not parts:
        return opening + closing
    if indent is None:
        return opening + ", ".join(parts) + closing
    pad = "\n" + " " * indent * (level + 1)
    return opening + pad + ("," + pad).join(parts) + "\n" + " " * indent * level + closing


def dumps(value: Any, indent: Optional[int] = None, level: int = 0) -> str:
    """JSON text with sorted keys and fixed float formatting"""
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, dict):
        parts = [
            f"{json.dumps(str(key))}: {dumps(value[key], indent, level + 1)}" for key in sorted(value, key=str)
        ]
        return _join("{", "}", parts, indent, level)
    if isinstance(value, (list, tuple)):
        return _join("[", "]", [dumps(item, indent, level + 1) for item in value], indent, level)
    return json.dumps(value)


def emit(payload: Dict[str, Any], config: RunConfig):
    text = dumps(to_jsonable(payload), indent=2 if config.json_pretty else None)
    if config.out:
        with open(config.out, "w") as handle:
            handle.write(text + "\n")
        status(f"✅ Wrote {config.out}")
    else:
        print(text)


# Subcommands


def cmd_expansion(args, config: RunConfig) -> int:
    form = parse_form(args.form, config.N)
    emit({"form": args.form, "N": config.N, "expansion": form.to_dict()}, config)
    return EXIT_OK


def _reference_check(form_id: str, gamma: GroupElement, polynomial) -> Optional[Dict[str, Any]]:
    match = _ETA_POWER.match(form_id.strip().lower())
    if not match or gamma != S:
        return None
    r = int(match.group(1))
    if r % 2 or r // 2 not in (3, 4, 5):
        return None
    reference = example_polynomial(r // 2)
    scalar, residual = polynomial.conjugate_reflect().proportionality(reference)
    return {"polynomial": reference.to_list(), "scalar": scalar, "residual": residual}


def cmd_period(args, config: RunConfig) -> int:
    form = parse_form(args.form, config.N)
    gamma = parse_gamma(args.gamma)
    status(f"🧮 Period polynomial of {args.form} at {gamma} ({args.method})")
    payload: Dict[str, Any] = {"form": args.form, "gamma": gamma.to_list(), "k": str(form.weight)}
    polys = {}
    if args.method in ("lvalues", "both"):
        polys["lvalues"] = period_from_lvalues(form, gamma, config.tol)
    if args.method in ("quadrature", "both"):
        polys["quadrature"] = period_quadrature(form, gamma, config.tol)
    for name, poly in polys.items():
        payload[name] = poly.to_list()
    if len(polys) == 2:
        payload["deviation"] = polys["lvalues"].max_deviation(polys["quadrature"])
    reference = _reference_check(args.form, gamma, next(iter(polys.values())))
    if reference is not None:
        payload["reference"] = reference
    emit(payload, config)
    return EXIT_OK


def cmd_lvalues(args, config: RunConfig) -> int:
    form = parse_form(args.form, config.N)
    twist = TwistSpec.from_gamma(parse_gamma(args.gamma))
    status(f"🧮 Twisted L-values of {args.form} at c={twist.c}, d={twist.d}")
    values = lvalue_vector(form, twist, config.tol)
    payload = {
        "form": args.form,
        "twist": [twist.c, twist.d],
        "values": [{"s": s + 1, "value": v} for s, v in enumerate(values)],
    }
    emit(payload, config)
    return EXIT_OK


def cmd_poincare(args, config: RunConfig) -> int:
    spec = PoincareSpec(args.m, args.k, MultiplierSystem(args.eta), config.c_max)
    status(f"🧮 Poincare series g_{spec.m} of weight {spec.k} with {spec.ms}, c_max={spec.c_max}")
    payload: Dict[str, Any] = {"m": spec.m, "k": spec.k, "multiplier": spec.ms.to_dict(), "c_max": spec.c_max}
    if args.z:
        payload["values"] = [
            {"z": parse_point(p), **poincare_eval(spec, parse_point(p)).to_dict()} for p in args.z
        ]
    if args.coefficients:
        cache = CoefficientCacheService() if args.cache else None
        rows = []
        for n in args.coefficients:
            row = {"n": n, "trapezoid": poincare_coefficient(spec, n)}
            estimate = kloosterman_coefficient(spec, n, config.c_max)
            row["kloosterman"] = 2 * estimate.value + (2 if n == spec.m else 0)
            row["kloosterman_error"] = 2 * estimate.error
            rows.append(row)
        payload["coefficients"] = rows
        if cache is not None:
            key = cache.make_key(str(spec.ms), spec.k, spec.m, config.c_max)
            cache.put(key, [complex_pair(r["kloosterman"]) for r in rows])
            payload["cache"] = cache.get_status()
    emit(payload, config)
    return EXIT_OK


def cmd_constant(args, config: RunConfig) -> int:
    form = parse_form(args.form, config.N)
    status(f"🧮 Lehner constant of {args.form}, c_max={config.c_max}")
    estimate = lehner_constant(form, config.c_max)
    emit({"form": args.form, **estimate.to_dict()}, config)
    return EXIT_OK


def _run_verifier(theorem: str, form: FourierExpansion, gamma: GroupElement, config: RunConfig):
    if theorem == "thm1":
        return verify_theorem1(form, N=config.N, c_max=config.c_max)
    if theorem == "thm2":
        return verify_theorem2(form, gamma)
    if theorem == "thm3":
        return verify_theorem3(form, gamma, N=config.N, c_max=config.c_max)
    raise UsageError(f"unknown theorem '{theorem}'")


DEFAULT_SUITE = [
    ("thm1", "zero:3", "S"),
    ("thm1", "eta^6", "S"),
    ("thm2", "eta^6", "S"),
    ("thm2", "eta^8", "S"),
    ("thm3", "eta^6", "S"),
    ("thm3", "delta", "S"),
]


def cmd_verify(args, config: RunConfig) -> int:
    service = ReportService()
    if args.theorem == "all":
        jobs = DEFAULT_SUITE
    else:
        require(args.form is not None, "verify needs a form id", UsageError)
        jobs = [(args.theorem, args.form, args.gamma)]
    for theorem, form_id, gamma_text in jobs:
        status(f"🧮 Verifying {theorem} for {form_id} at {gamma_text}")
        report = _run_verifier(theorem, parse_form(form_id, config.N), parse_gamma(gamma_text), config)
        report.details.setdefault("form", form_id)
        service.add(report)
        icon = "✅" if report.passed else "❌"
        status(f"{icon} {theorem} {form_id}: max deviation {report.max_deviation:.3e}")
    summary = service.get_summary()
    status("=" * 50)
    status(f"📊 {summary['passed']}/{summary['total']} passed, worst deviation {summary['worst_deviation']:.3e}")
    if args.theorem == "all":
        emit(service.to_dict(), config)
    else:
        emit(service.reports[0].to_dict(), config)
    return EXIT_OK if summary["failed"] == 0 else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=None, help="q-series truncation order")
    common.add_argument("--cmax", type=int, default=None, help="coset / Lehner / Kloosterman truncation")
    common.add_argument("--tol", type=float, default=None, help="numerical tolerance")
    common.add_argument("--out", default=None, help="write JSON to this file instead of stdout")
    common.add_argument("--json-pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(prog="eichler-periods", description="Period polynomials and harmonic Maass forms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expansion", parents=[common], help="q-expansion of a named form")
    p.add_argument("form")
    p.set_defaults(handler=cmd_expansion)

    p = sub.add_parser("period", parents=[common], help="period polynomial r(f, gamma; z)")
    p.add_argument("form")
    p.add_argument("gamma")
    p.add_argument("--method", choices=["lvalues", "quadrature", "both"], default="both")
    p.set_defaults(handler=cmd_period)

    p = sub.add_parser("lvalues", parents=[common], help="critical twisted L-values")
    p.add_argument("form")
    p.add_argument("gamma")
    p.set_defaults(handler=cmd_lvalues)

    p = sub.add_parser("poincare", parents=[common], help="Poincare series values and coefficients")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eta", type=int, default=0, help="multiplier exponent r of eta^r")
    p.add_argument("--z", nargs="*", default=[], help="evaluation points x,y")
    p.add_argument("--coefficients", type=int, nargs="*", default=[])
    p.add_argument("--cache", action="store_true", help="store Kloosterman coefficients in the cache")
    p.set_defaults(handler=cmd_poincare)

    p = sub.add_parser("constant", parents=[common], help="Lehner constant c_f")
    p.add_argument("form")
    p.set_defaults(handler=cmd_constant)

    p = sub.add_parser("verify", parents=[common], help="numerical theorem checks")
    p.add_argument("theorem", choices=["thm1", "thm2", "thm3", "all"])
    p.add_argument("form", nargs="?")
    p.add_argument("gamma", nargs="?", default="S")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        config = RunConfig.from_args(args)
        return args.handler(args, config)
    except (UsageError, DomainError) as e:
        status(f"❌ {e}")
        return EXIT_USAGE
    except EichlerError as e:
        status(f"❌ Numerical failure: {e}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
