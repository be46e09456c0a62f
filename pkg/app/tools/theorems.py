"""Theorem condition checkers, the effective Chebotarev threshold and sampled monodromy."""
import logging
from collections import Counter
from fractions import Fraction
from math import isqrt, sqrt
from typing import Optional

import numpy as np

from ..algebra.gf2n import FieldContext, field_embedding, make_field, solve_artin_schreier
from ..algebra.polyops import Degree10Coeffs, Poly, factorization_type, is_squarefree, l_alpha
from ..algebra.quartic import klein_check, morse_check, reduce_quartic
from ..core.config import settings
from ..core.errors import (
    InternalConsistencyError,
    MonodromyViolationError,
    PreconditionError,
)
from ..models.schemas import (
    ChebotarevParams,
    ConditionReport,
    ConditionResult,
    CorollaryReport,
    FieldInfo,
    StatsMode,
    TypeHistogram,
)

# Configure logging
logger = logging.getLogger(__name__)

# degree of Ω over F_{2^n}(t): |S_3| * 2^2 and |(Z/2Z)^2| * 2^3
MAIN_D_OMEGA, MAIN_DEG_D = 24, 6
KLEIN_D_OMEGA, KLEIN_DEG_D = 32, 8
MAIN_MIN_N = 13
KLEIN_MIN_N = 15

# F_16 = F_2[X]/(X^4 + X^3 + 1); θ^10 is the Klein-bis witness
KLEIN_BIS_MODULUS = 0x19
KLEIN_BIS_EXPONENT = 10

EXPECTED_DENSITIES = {
    "cubic_s3": {"1,1,1": 1 / 6, "1,2": 1 / 2, "3": 1 / 3},
    "quartic_klein": {"1,1,1,1": 1 / 4, "2,2": 3 / 4},
}
TOLERANCE_FLOOR = 0.05


def field_info(ctx: FieldContext) -> FieldInfo:
    return FieldInfo(n=ctx.n, modulus=ctx.modulus_hex)


def _pattern_key(pattern: tuple) -> str:
    return ",".join(str(k) for k in pattern)


def _check_context(coeffs: Degree10Coeffs, ctx: Optional[FieldContext]) -> FieldContext:
    if ctx is not None and ctx != coeffs.ctx:
        raise PreconditionError("coefficients belong to a different field model")
    return coeffs.ctx


# ---------------------------------------------------------------------------
# Chebotarev threshold
# ---------------------------------------------------------------------------

def _threshold_holds(n: int, g: int, d_omega: int) -> bool:
    # 2^n - 2g - 3d > 2g * 2^{n/2}, squared to stay in integers
    a = (1 << n) - 2 * g - 3 * d_omega
    return a > 0 and a * a > 4 * g * g * (1 << n)


def chebotarev_threshold(d_omega: int, deg_d_poly: int, n: Optional[int] = None) -> ChebotarevParams:
    """Genus bound and the least n with at least one totally split degree-one place.

    The V lower bound is reported at ``n`` (or at the threshold itself),
    rounding 2^{n/2} up so the fraction stays a valid lower bound.
    """
    if d_omega < 1:
        raise PreconditionError("d_omega must be at least 1")
    if deg_d_poly < 3:
        raise PreconditionError("deg D_alpha f must be at least 3")
    g = (deg_d_poly - 3) * d_omega // 2 + 1
    min_n = 1
    while not _threshold_holds(min_n, g, d_omega):
        min_n += 1
    at = min_n if n is None else n
    q = 1 << at
    root = isqrt(q)
    if root * root < q:
        root += 1
    v_bound = Fraction(q - 2 * (g * root + g + d_omega), d_omega)
    return ChebotarevParams(
        n=at,
        d_omega=d_omega,
        deg_d_poly=deg_d_poly,
        g_bound=g,
        v_lower_bound=str(v_bound),
        min_n=min_n,
    )


def _assert_threshold(expected: int, d_omega: int, deg_d: int) -> None:
    computed = chebotarev_threshold(d_omega, deg_d).min_n
    if computed != expected:
        raise InternalConsistencyError(
            f"threshold calculator gives n >= {computed} for (d_omega={d_omega}, deg={deg_d}), expected {expected}"
        )


# ---------------------------------------------------------------------------
# Theorem checkers
# ---------------------------------------------------------------------------

def thm_main_check(coeffs: Degree10Coeffs, ctx: Optional[FieldContext] = None) -> ConditionReport:
    """Conditions (i)-(iii) for δ >= 6 with α = a_1 on the monic normalization."""
    ctx = _check_context(coeffs, ctx)
    logger.info(f"🚀 Main theorem check over GF(2^{ctx.n}) for {coeffs.to_poly()}")
    monic = coeffs.monic()
    a = monic.a
    m = ctx.mul
    a1, a3, a4, a5, a7 = a[1], a[3], a[4], a[5], a[7]

    cond_i = m(a1, a3) != 0
    conditions = [ConditionResult(name="a1_a3_nonzero", passed=cond_i, witness=ctx.format(m(a1, a3)))]

    if cond_i:
        numerator = m(a1, a4) ^ a5
        ratio = ctx.div(numerator, m(ctx.sqr(a1), a3))
        cond_ii = ctx.trace(ratio) == 0
        solvable = solve_artin_schreier(ctx, a1, ctx.div(numerator, a3)) is not None
        if solvable != cond_ii:
            raise InternalConsistencyError("trace condition (ii) disagrees with Artin-Schreier solvability")
        conditions.append(ConditionResult(name="trace_condition", passed=cond_ii, witness=ctx.format(ratio)))
    else:
        conditions.append(ConditionResult(name="trace_condition", passed=False, witness=None))

    value = (
        m(ctx.sqr(a1), ctx.sqr(a4))
        ^ ctx.sqr(a5)
        ^ m(ctx.pow(a1, 7), a3)
        ^ m(ctx.pow(a1, 4), ctx.sqr(a3))
        ^ m(m(ctx.sqr(a1), a3), a5)
        ^ m(a3, a7)
    )
    morse = morse_check(monic)
    if morse.nondegeneracy_value != value:
        raise InternalConsistencyError("monic Morse expression disagrees with condition (iii)")
    conditions.append(ConditionResult(name="morse_nondegenerate", passed=value != 0, witness=ctx.format(value)))

    _assert_threshold(MAIN_MIN_N, MAIN_D_OMEGA, MAIN_DEG_D)
    concluded = all(c.passed for c in conditions) and ctx.n >= MAIN_MIN_N
    report = ConditionReport(
        theorem="main",
        field=field_info(ctx),
        conditions=conditions,
        alpha=ctx.format(a1),
        min_n=MAIN_MIN_N,
        conclusion="delta_ge_6" if concluded else "inapplicable",
    )
    logger.info(f"✅ Main theorem check: {report.conclusion}")
    return report


def _second_floor_ratio(ctx: FieldContext, a: tuple, alpha: int) -> int:
    return ctx.div(ctx.pow(alpha, 5) ^ ctx.mul(alpha, a[4]) ^ a[5], ctx.pow(alpha, 3))


def _klein_conditions(monic: Degree10Coeffs, alpha: int) -> list:
    ctx = monic.ctx
    a = monic.a
    klein = klein_check(monic, alpha)
    ratio = _second_floor_ratio(ctx, a, alpha)
    trace_ok = ctx.trace(ratio) == 0
    rhs = ctx.div(ctx.pow(alpha, 5) ^ ctx.mul(alpha, a[4]) ^ a[5], alpha)
    if trace_ok and solve_artin_schreier(ctx, alpha, rhs) is None:
        raise InternalConsistencyError(
            f"second-floor trace vanishes but x^2 + {alpha:x}x = {rhs:x} has no solution"
        )
    return [
        ConditionResult(name="c_nonzero", passed=klein.c_nonzero, witness=ctx.format(klein.c)),
        ConditionResult(name="r3_splits", passed=klein.r3_split,
                        witness=",".join(ctx.format(r) for r in klein.r3_roots) or None),
        ConditionResult(name="second_floor_trace", passed=trace_ok, witness=ctx.format(ratio)),
    ]


def _cheap_klein_filter(ctx: FieldContext, a: tuple, alpha: int) -> bool:
    """Trace-only conditions that must hold before the resolvent work."""
    c = ctx.div(ctx.mul(ctx.sqr(alpha), a[5]) ^ a[7], alpha)
    if c == 0:
        return False
    if ctx.trace(_second_floor_ratio(ctx, a, alpha)):
        return False
    b = ctx.div(ctx.pow(alpha, 5) ^ ctx.mul(alpha, a[4]) ^ a[5], alpha)
    return ctx.trace(ctx.div(ctx.pow(b, 3), ctx.sqr(c))) == ctx.trace_of_one


def thm2_check(
    coeffs: Degree10Coeffs,
    ctx: Optional[FieldContext] = None,
    alpha: Optional[int] = None,
    sweep_cap: Optional[int] = None,
) -> ConditionReport:
    """Klein-group conditions for δ = 8 when a_1 = a_3 = 0.

    Without ``alpha`` the nonzero elements are swept in increasing bit order
    and the first passing one is reported. Above SWEEP_FULL_MAX_N only the
    first ``sweep_cap`` elements are tried.
    """
    ctx = _check_context(coeffs, ctx)
    monic = coeffs.monic()
    a = monic.a
    if a[1] != 0 or a[3] != 0:
        raise PreconditionError("a_1 and a_3 must vanish after normalization; use thm_main_check instead")
    logger.info(f"🚀 Klein theorem check over GF(2^{ctx.n}) for {coeffs.to_poly()}")

    if alpha is not None:
        if not 0 < alpha < ctx.order:
            raise PreconditionError(f"alpha must be a nonzero element of GF(2^{ctx.n})")
        conditions = _klein_conditions(monic, alpha)
        found = alpha
    else:
        limit = ctx.order
        if ctx.n > settings.SWEEP_FULL_MAX_N:
            cap = settings.SWEEP_CAP if sweep_cap is None else sweep_cap
            limit = min(limit, cap + 1)
            logger.warning(f"⚠️ Sweeping only the first {limit - 1} alphas of GF(2^{ctx.n})")
        found = None
        conditions = None
        for candidate in range(1, limit):
            if not _cheap_klein_filter(ctx, a, candidate):
                continue
            trial = _klein_conditions(monic, candidate)
            if all(c.passed for c in trial):
                found, conditions = candidate, trial
                break
        if found is None:
            logger.info("🔍 No alpha satisfies the Klein conditions in the sweep")
            conditions = [
                ConditionResult(name=name, passed=False, witness=None)
                for name in ("c_nonzero", "r3_splits", "second_floor_trace")
            ]

    _assert_threshold(KLEIN_MIN_N, KLEIN_D_OMEGA, KLEIN_DEG_D)
    concluded = all(c.passed for c in conditions) and ctx.n >= KLEIN_MIN_N
    report = ConditionReport(
        theorem="a1a3zero",
        field=field_info(ctx),
        conditions=conditions,
        alpha=None if found is None else ctx.format(found),
        min_n=KLEIN_MIN_N,
        conclusion="delta_eq_8" if concluded else "inapplicable",
    )
    logger.info(f"✅ Klein theorem check: {report.conclusion} (alpha={report.alpha})")
    return report


def corollary_check(coeffs: Degree10Coeffs) -> CorollaryReport:
    """a_1 a_3 != 0, a_4 = a_5 = 0 and a_7 != a_1^7 + a_1^4 a_3 (monic)."""
    ctx = coeffs.ctx
    a = coeffs.monic().a
    a1, a3 = a[1], a[3]
    excluded = ctx.pow(a1, 7) ^ ctx.mul(ctx.pow(a1, 4), a3)
    conditions = [
        ConditionResult(name="a1_a3_nonzero", passed=ctx.mul(a1, a3) != 0),
        ConditionResult(name="a4_a5_zero", passed=a[4] == 0 and a[5] == 0),
        ConditionResult(name="a7_off_locus", passed=a[7] != excluded, witness=ctx.format(excluded)),
    ]
    in_family = all(c.passed for c in conditions)
    implied = thm_main_check(coeffs)
    if in_family and not all(c.passed for c in implied.conditions):
        raise InternalConsistencyError("corollary family member fails the main theorem conditions")
    return CorollaryReport(in_family=in_family, conditions=conditions, implied=implied)


def klein_bis_alpha(ctx: FieldContext) -> int:
    """θ^10 from F_16 = F_2[X]/(X^4+X^3+1) embedded into GF(2^n), 4 | n."""
    if ctx.n % 4:
        raise PreconditionError(f"GF(2^{ctx.n}) does not contain F_16 (need 4 | n)")
    f16 = make_field(4, KLEIN_BIS_MODULUS)
    theta_10 = f16.pow(2, KLEIN_BIS_EXPONENT)
    if ctx.n == 4 and ctx.modulus == KLEIN_BIS_MODULUS:
        return theta_10
    alpha = field_embedding(f16, ctx)(theta_10)
    if ctx.trace(ctx.pow(alpha, 7)) != ctx.trace_of_one or ctx.trace(ctx.sqr(alpha)) != 0:
        raise InternalConsistencyError("embedded Klein-bis alpha fails Tr(a^7) = Tr(1), Tr(a^2) = 0")
    return alpha


# ---------------------------------------------------------------------------
# Sampled monodromy
# ---------------------------------------------------------------------------

def _specialization_base(monic: Degree10Coeffs, alpha: int, mode: StatsMode) -> Poly:
    ctx = monic.ctx
    if mode == "cubic_s3":
        if ctx.mul(monic[1], monic[3]) == 0:
            raise PreconditionError("cubic_s3 mode needs a_1 a_3 != 0")
        if alpha != monic[1]:
            raise PreconditionError(f"cubic_s3 mode uses alpha = a_1 = {monic[1]:x}")
        return l_alpha(monic.to_poly(), alpha).l_poly
    if mode == "quartic_klein":
        if not klein_check(monic, alpha).verdict:
            raise PreconditionError(f"Klein conditions fail at alpha={alpha:x}")
        return reduce_quartic(monic, alpha).to_poly()
    raise PreconditionError(f"unknown monodromy mode '{mode}'")


def monodromy_stats(
    coeffs: Degree10Coeffs,
    ctx: Optional[FieldContext],
    alpha: int,
    mode: StatsMode,
    samples: int = settings.DEFAULT_SAMPLES,
    seed: int = settings.DEFAULT_SEED,
) -> TypeHistogram:
    """Tally factorization types of base(x) - t_0 for uniformly drawn t_0."""
    ctx = _check_context(coeffs, ctx)
    monic = coeffs.monic()
    base = _specialization_base(monic, alpha, mode)
    expected = EXPECTED_DENSITIES[mode]
    logger.info(f"🚀 Sampling {samples} specializations ({mode}, alpha={alpha:x}, seed={seed})")

    rng = np.random.default_rng(seed)
    ts = rng.integers(0, ctx.order, size=samples) if samples else []
    counts: Counter = Counter()
    excluded = 0
    constant = base.coeff(0)
    for t0 in ts:
        spec = Poly(ctx, (constant ^ int(t0),) + base.coeffs[1:])
        if not is_squarefree(spec):
            excluded += 1
            continue
        pattern = factorization_type(spec)
        key = _pattern_key(pattern)
        if mode == "quartic_klein" and key not in expected:
            logger.error(f"❌ Forbidden pattern {key} at t0={int(t0):x}")
            raise MonodromyViolationError(
                f"pattern ({key}) is impossible for Klein monodromy (t0={int(t0):x})", pattern
            )
        counts[key] += 1

    kept = samples - excluded
    frequencies = {k: counts[k] / kept for k in sorted(counts)} if kept else {}
    tolerance = TOLERANCE_FLOOR
    if kept:
        tolerance = max(TOLERANCE_FLOOR, max(3 * sqrt(p * (1 - p) / kept) for p in expected.values()))
    within = all(abs(frequencies.get(k, 0.0) - p) <= tolerance for k, p in expected.items()) if kept else True

    histogram = TypeHistogram(
        mode=mode,
        alpha=ctx.format(alpha),
        seed=seed,
        samples=samples,
        excluded=excluded,
        counts={k: counts[k] for k in sorted(counts)},
        frequencies=frequencies,
        expected=expected,
        tolerance=tolerance,
        within_tolerance=within,
    )
    logger.info(f"✅ Patterns {histogram.counts}, excluded {excluded}, within tolerance: {within}")
    return histogram
