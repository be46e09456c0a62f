"""Built-in worked examples, diffed against app/data/expected_reports.json."""
import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Optional

from ..algebra.gf2n import make_field
from ..algebra.polyops import Degree10Coeffs, Poly, d_alpha
from ..algebra.quartic import klein_check
from ..core.errors import PreconditionError
from ..models.schemas import ReproduceReport, ScenarioResult
from .theorems import KLEIN_BIS_MODULUS, klein_bis_alpha, thm2_check, thm_main_check
from .uniformity import ddt_row

# Configure logging
logger = logging.getLogger(__name__)

EXPECTED_PATH = Path(__file__).resolve().parent.parent / "data" / "expected_reports.json"

MAIN_EXAMPLE = "1,1,0,1,0,0,0,1,0,0,0"
KLEIN_EXAMPLE = "1,0,0,0,0,0,0,1,0,0,0"


@lru_cache(maxsize=1)
def load_expected() -> dict:
    with EXPECTED_PATH.open() as handle:
        return json.load(handle)


def _klein_bis_f16() -> dict:
    ctx = make_field(4, KLEIN_BIS_MODULUS)
    coeffs = Degree10Coeffs.from_poly(Poly.parse(ctx, KLEIN_EXAMPLE))
    alpha = klein_bis_alpha(ctx)
    report = klein_check(coeffs, alpha)
    return {
        "alpha": ctx.format(alpha),
        "b": ctx.format(report.b),
        "c": ctx.format(report.c),
        "q_poly": report.q_poly.to_text(),
        "q_roots": sorted(ctx.format(r[0]) for r in report.q_roots if r[1] == 0),
        "q_roots_are_cubes": report.q_roots_are_cubes,
        "trace_alpha_7": ctx.trace(ctx.pow(alpha, 7)),
        "trace_alpha_2": ctx.trace(ctx.sqr(alpha)),
        "verdict": report.verdict,
    }


def _theorem_witness(report, f: Poly) -> dict:
    ctx = f.ctx
    observed = {
        "conditions": {c.name: c.passed for c in report.conditions},
        "conclusion": report.conclusion,
        "min_n": report.min_n,
    }
    if report.alpha is not None:
        alpha = ctx.parse(report.alpha)
        row = ddt_row(f, alpha)
        observed["d_degree"] = row.d_degree
        observed["has_split_beta"] = bool(row.split_betas)
        logger.debug(f"🔍 alpha={report.alpha}: split betas {[ctx.format(b) for b in row.split_betas[:4]]}")
    return observed


def _main_n13() -> dict:
    ctx = make_field(13)
    coeffs = Degree10Coeffs.from_poly(Poly.parse(ctx, MAIN_EXAMPLE))
    report = thm_main_check(coeffs, ctx)
    observed = _theorem_witness(report, coeffs.to_poly())
    observed["alpha"] = report.alpha
    return observed


def _klein_n16() -> dict:
    ctx = make_field(16)
    coeffs = Degree10Coeffs.from_poly(Poly.parse(ctx, KLEIN_EXAMPLE))
    report = thm2_check(coeffs, ctx)
    observed = _theorem_witness(report, coeffs.to_poly())
    # the x^8 coefficient of D_α f is α(a_0 α + a_1), nonzero for every α when a_1 = 0
    observed["degree_8_for_all_alpha"] = coeffs[1] == 0
    if report.alpha is not None and d_alpha(coeffs.to_poly(), ctx.parse(report.alpha)).degree != 8:
        observed["degree_8_for_all_alpha"] = False
    return observed


SCENARIOS: Dict[str, Callable[[], dict]] = {
    "klein_bis_f16": _klein_bis_f16,
    "main_n13": _main_n13,
    "klein_n16": _klein_n16,
}


def _diff(expected: dict, observed: dict) -> list:
    return [
        f"{key}: expected {expected[key]!r}, observed {observed.get(key)!r}"
        for key in expected
        if observed.get(key) != expected[key]
    ]


def run_scenario(name: str) -> ScenarioResult:
    if name not in SCENARIOS:
        raise PreconditionError(f"unknown scenario '{name}'; choose from {sorted(SCENARIOS)}")
    logger.info(f"🚀 Reproducing scenario {name}")
    expected = load_expected()[name]
    observed = SCENARIOS[name]()
    mismatches = _diff(expected, observed)
    if mismatches:
        logger.warning(f"⚠️ Scenario {name} differs: {mismatches}")
    else:
        logger.info(f"✅ Scenario {name} matches")
    return ScenarioResult(
        name=name,
        passed=not mismatches,
        expected=expected,
        observed=observed,
        mismatches=mismatches,
    )


def reproduce(scenario: Optional[str] = None) -> ReproduceReport:
    names = [scenario] if scenario else list(SCENARIOS)
    results = [run_scenario(name) for name in names]
    return ReproduceReport(passed=all(r.passed for r in results), scenarios=results)
