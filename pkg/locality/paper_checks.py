"""End-to-end checks of the Gaussian-packet locality argument."""

import math

from locality.correlation import (
    LOCALITY_BOUND,
    PAPER_BOUND,
    TSIRELSON_BOUND,
    CHSHSettings,
    Scenario,
    chsh_maximize,
    criterion_threshold,
    locality_criterion,
    scenario_correlator,
    threshold_closed_form,
    verify_paper_bound,
)
from locality.lhv import chsh_facet_check, correlation_table, critical_scaling, lhv_membership
from locality.spatial import g_factor_montecarlo, g_factor_quadrature
from locality.spin import e_spin
from models.geometry import UnitVector3, Vector3
from models.result import CheckResult, CheckStatus, check
from utils.helpers import format_number

QUADRATURE_AGREEMENT = 1e-10
OPTIMIZER_AGREEMENT = 1e-6
MONTECARLO_SIGMAS = 3.0
THRESHOLD_AGREEMENT = 1e-7


def check_paper_bound(m: float) -> CheckResult:
    """
    Compare g for the Gaussian boxes with the estimate (2/π)³.

    Args:
        m: Inverse packet width

    Returns:
        CheckResult passing when g < (2/π)³
    """
    g, bound, holds = verify_paper_bound(m)
    return check(
        "(2/π)³ Bound",
        holds,
        f"g = {g:.6f} {'<' if holds else '>='} (2/π)³ = {bound:.6f}",
        g=g,
        bound=bound,
    )


def check_bound_below_threshold() -> CheckResult:
    holds = PAPER_BOUND < LOCALITY_BOUND
    return check(
        "Bound Below Threshold",
        holds,
        f"(2/π)³ = {PAPER_BOUND:.6f} {'<' if holds else '>='} 1/√2 = {LOCALITY_BOUND:.6f}",
        bound=PAPER_BOUND,
        threshold=LOCALITY_BOUND,
    )


def check_locality(scenario: Scenario) -> CheckResult:
    g, local = locality_criterion(scenario)
    return check(
        "Locality Criterion",
        local,
        "local" if local else "criterion violated",
        g=g,
        threshold=LOCALITY_BOUND,
    )


def check_threshold_half_width(m: float) -> CheckResult:
    """
    Locate the box half-width where g reaches 1/√2, by bisection and by the closed inverse.

    Both values are dimensionless (w·m); the check passes when they agree.
    """
    bisected = criterion_threshold(m)
    closed = threshold_closed_form()
    difference = abs(bisected - closed)
    return check(
        "Threshold Half-Width",
        difference <= THRESHOLD_AGREEMENT,
        f"w·m = {bisected:.9f} by bisection, {closed:.9f} closed form",
        bisection=bisected,
        closed_form=closed,
    )


def check_chsh_maximum(scenario: Scenario, tol: float) -> CheckResult:
    """
    Run the CHSH optimizer on the localized correlation.

    Passes when the optimum stays within 2 and matches 2√2·g.
    """
    g = scenario.g()
    _, chsh_max = chsh_maximize(scenario_correlator(scenario), tol=tol)
    expected = g * TSIRELSON_BOUND
    passed = chsh_max <= 2.0 + OPTIMIZER_AGREEMENT and abs(chsh_max - expected) <= OPTIMIZER_AGREEMENT
    return check(
        "CHSH Maximum",
        passed,
        f"max |CHSH| = {chsh_max:.6f}, 2√2·g = {expected:.6f}",
        chsh_max=chsh_max,
        expected=expected,
    )


def check_quadrature(scenario: Scenario) -> CheckResult:
    g = scenario.g()
    g_quad = g_factor_quadrature(scenario.wave, scenario.region1, scenario.region2, tol=QUADRATURE_AGREEMENT)
    difference = abs(g_quad - g)
    return check(
        "Quadrature Agreement",
        difference <= QUADRATURE_AGREEMENT,
        f"|g_quad - g| = {difference:.3g}",
        g=g,
        g_quadrature=g_quad,
    )


def check_montecarlo(scenario: Scenario, n: int, seed: int) -> CheckResult:
    """
    Compare g with a seeded Monte Carlo estimate.

    A statistical miss is reported as a warning, not a failure.
    """
    g = scenario.g()
    estimate, stderr = g_factor_montecarlo(scenario.wave, scenario.region1, scenario.region2, n=n, seed=seed)
    if stderr > 0:
        sigmas = abs(estimate - g) / stderr
    else:
        sigmas = 0.0 if estimate == g else math.inf
    consistent = sigmas <= MONTECARLO_SIGMAS
    return CheckResult(
        name="Monte Carlo Agreement",
        status=CheckStatus.PASS if consistent else CheckStatus.WARNING,
        summary=f"estimate {estimate:.6f} ± {stderr:.2g} ({sigmas:.2f}σ from g)",
        details={"estimate": estimate, "stderr": stderr, "n": n, "seed": seed},
    )


def check_singlet_nonlocal() -> CheckResult:
    table = correlation_table(e_spin, *_tsirelson_lists())
    feasible, _ = lhv_membership(table)
    return check(
        "Singlet Table Nonlocal",
        not feasible,
        "unscaled singlet table is not LHV-representable" if not feasible else "unexpected LHV witness",
        chsh=chsh_facet_check(table),
    )


def check_scaled_local(scenario: Scenario) -> CheckResult:
    table = correlation_table(scenario_correlator(scenario), *_tsirelson_lists())
    feasible, model = lhv_membership(table)
    return check(
        "Scaled Table Local",
        feasible,
        "g-scaled table has an LHV witness" if feasible else "no LHV witness",
        chsh=chsh_facet_check(table),
        strategies=0 if model is None else len(model.strategies),
    )


def check_critical_scaling() -> CheckResult:
    v = critical_scaling(correlation_table(e_spin, *_tsirelson_lists()))
    passed = abs(v - LOCALITY_BOUND) <= 1e-9
    return check("Critical Scaling", passed, f"largest local scaling {format_number(v)}", scaling=v)


def _tsirelson_lists() -> tuple[list[UnitVector3], list[UnitVector3]]:
    settings = CHSHSettings.tsirelson()
    return [settings.a, settings.a_prime], [settings.b, settings.b_prime]


def run_paper_checks(
    m: float = 1.0,
    separation: Vector3 = (10.0, 0.0, 0.0),
    tol: float = 1e-6,
    samples: int = 200_000,
    seed: int = 0,
) -> list[CheckResult]:
    """
    Reproduce the Gaussian-packet argument end to end.

    Args:
        m: Inverse packet width
        separation: Offset l of the second packet
        tol: Optimizer accuracy
        samples: Monte Carlo sample count
        seed: Monte Carlo seed

    Returns:
        One CheckResult per inequality or cross-check
    """
    scenario = Scenario.paper(m=m, separation=separation)
    return [
        check_paper_bound(m),
        check_bound_below_threshold(),
        check_locality(scenario),
        check_threshold_half_width(m),
        check_chsh_maximum(scenario, tol),
        check_quadrature(scenario),
        check_montecarlo(scenario, samples, seed),
        check_singlet_nonlocal(),
        check_scaled_local(scenario),
        check_critical_scaling(),
    ]
