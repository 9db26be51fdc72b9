#!/usr/bin/env python3
"""
Eichler Periods Acceptance Runner

Runs the numerical acceptance checks and prints a summary.
Run with: python run_acceptance.py [--quick]
"""

import signal
import sys
import time
from pathlib import Path

# Add the src directory to the Python path
src_dir = Path(__file__).parent / "src"
sys.path.insert(0, str(src_dir))

from eichler_periods.config import settings
from eichler_periods.eichler import lehner_constant
from eichler_periods.lvalues import TwistSpec, dirichlet_partial_sum, twisted_lvalue
from eichler_periods.maass import verify_theorem2, verify_theorem3
from eichler_periods.modgroup import S, GroupElement
from eichler_periods.models import VerificationReport
from eichler_periods.periods import example_polynomial, period_quadrature, w_space_check
from eichler_periods.poincare import PoincareSpec, poincare_coefficient, poincare_eval
from eichler_periods.qseries import (
    bol_derivative,
    delta_expansion,
    eta_power_expansion,
    inverse_delta_expansion,
)
from eichler_periods.services import ReportService


def signal_handler(signum, frame):
    """Handle shutdown signals gracefully"""
    print(f"\n🛑 Received signal {signum}. Stopping acceptance run...")
    sys.exit(130)


def check_example_polynomials() -> VerificationReport:
    deviations = {}
    for k in (3, 4, 5):
        f = eta_power_expansion(2 * k, settings.qseries_n)
        reflected = period_quadrature(f, S).conjugate_reflect()
        deviations[f"proportional_k{k}"] = reflected.relative_deviation(example_polynomial(k))
        res_s, res_u = w_space_check(example_polynomial(k), f.multiplier.conjugate())
        deviations[f"w_space_k{k}"] = max(res_s, res_u)
    return VerificationReport("example_polynomials", str(S), deviations=deviations, tolerances={"default": 1e-8})


def check_lvalue_partial_sum() -> VerificationReport:
    f = delta_expansion(200)
    twist = TwistSpec(1, 0)
    moment_route = twisted_lvalue(f, twist, 11)
    direct = dirichlet_partial_sum(f, twist, 11)
    return VerificationReport(
        "lvalue_partial_sum",
        deviations={"s11": abs(moment_route - direct)},
        tolerances={"default": 1e-8},
    )


def check_lehner_constant() -> VerificationReport:
    f = bol_derivative(inverse_delta_expansion(settings.qseries_n), 13)
    value, error = lehner_constant(f, 200)
    return VerificationReport(
        "lehner_constant",
        deviations={"constant_term": abs(value - 24)},
        tolerances={"default": 1e-3},
        details={"heuristic_error": error},
    )


def check_poincare(c_max: int) -> VerificationReport:
    spec = PoincareSpec(-1, 12, c_max=c_max)
    z = 0.3 + 1.1j
    lhs = poincare_eval(spec, S.act(z)).value
    rhs = S.j(z) ** 12 * poincare_eval(spec, z).value
    seed = poincare_coefficient(spec, -1)
    return VerificationReport(
        "poincare",
        str(S),
        [z],
        deviations={"modularity": abs(lhs - rhs), "seed": abs(seed - 2)},
        tolerances={"default": 1e-3},
        truncations={"c_max": c_max},
    )


if __name__ == "__main__":
    # Set up signal handlers for graceful shutdown
    signal.signal(signal.SIGINT, signal_handler)
    signal.signal(signal.SIGTERM, signal_handler)

    quick = "--quick" in sys.argv
    c_max = 50 if quick else 300

    print("🧮 Eichler Periods Acceptance Run")
    print("=" * 50)
    print(f"q-series order: {settings.qseries_n}")
    print(f"Poincare c_max: {c_max}")
    print(f"Tolerance: {settings.tol}")
    print("=" * 50)

    service = ReportService()
    checks = [
        ("Example polynomials", check_example_polynomials),
        ("L-values vs Dirichlet sums", check_lvalue_partial_sum),
        ("Lehner constant", check_lehner_constant),
        ("Poincare series", lambda: check_poincare(c_max)),
        ("Mock period eta^6", lambda: verify_theorem2(eta_power_expansion(6, 80), S)),
        ("Mock period eta^8, c=2", lambda: verify_theorem2(eta_power_expansion(8, 80), GroupElement(1, 0, 2, 1))),
        ("Supplementary periods eta^6", lambda: verify_theorem3(eta_power_expansion(6, 40), S, c_max=c_max)),
    ]

    try:
        for name, check in checks:
            started = time.time()
            try:
                report = service.add(check())
            except Exception as e:
                print(f"❌ {name}: {e}")
                continue
            icon = "✅" if report.passed else "❌"
            elapsed = time.time() - started
            print(f"{icon} {name}: max deviation {report.max_deviation:.2e} ({elapsed:.1f}s)")
    except KeyboardInterrupt:
        print("\n🛑 Acceptance run stopped by user")
    finally:
        summary = service.get_summary()
        print("=" * 50)
        print(f"📊 {summary['passed']}/{summary['total']} passed ({summary['pass_rate']}%)")
        print(f"Worst deviation: {summary['worst_deviation']:.2e}")

    sys.exit(0 if summary["failed"] == 0 and summary["total"] == len(checks) else 1)
