"""Reduced quartics, their resolvents and the Morse / Klein-group conditions."""
import logging
from dataclasses import dataclass, field
from typing import Literal, Optional

from ..core.errors import InternalConsistencyError, PreconditionError, SeparabilityError
from .gf2n import FieldContext, is_cube, quadratic_extension
from .polyops import Degree10Coeffs, Poly, compose, hasse_schmidt, evaluate, l_alpha, roots_in_field

# Configure logging
logger = logging.getLogger(__name__)

CubicPattern = Literal["irreducible", "one_root", "three_roots"]


@dataclass(frozen=True)
class QuarticNormal:
    """x^4 + b x^2 + c x + d, optionally remembering the (f, α) it came from."""

    ctx: FieldContext
    b: int
    c: int
    d: int
    alpha: Optional[int] = None
    source: Optional[Degree10Coeffs] = field(default=None, compare=False)

    @property
    def separable(self) -> bool:
        return self.c != 0

    def to_poly(self, t: int = 0) -> Poly:
        return Poly(self.ctx, (self.d ^ t, self.c, self.b, 0, 1))


@dataclass(frozen=True)
class ResolventSet:
    r2: Poly
    r3: Poly
    q: Poly
    depressed: Poly


@dataclass(frozen=True)
class MorseReport:
    applicable: bool
    nondegeneracy_value: int
    is_morse: bool
    alpha: Optional[int] = None
    critical_root: Optional[int] = None
    derivative_at_root: Optional[int] = None


@dataclass(frozen=True)
class KleinReport:
    alpha: int
    b: int
    c: int
    c_nonzero: bool
    r3_split: bool
    trace_condition: bool
    q_roots_are_cubes: bool
    verdict: bool
    r2_reducible: bool = False
    q_poly: Optional[Poly] = None
    q_roots: tuple = ()
    r3_roots: tuple = ()


def _require_klein_setting(coeffs: Degree10Coeffs, alpha: int) -> None:
    if coeffs[0] != 1:
        raise PreconditionError(f"a_0 must be 1 (got {coeffs[0]:x}); normalize to monic first")
    for i in (1, 3):
        if coeffs[i] != 0:
            raise PreconditionError(f"a_{i} must be 0 (got {coeffs[i]:x})")
    if alpha == 0:
        raise PreconditionError("alpha must be nonzero")


def reduce_quartic(coeffs: Degree10Coeffs, alpha: int) -> QuarticNormal:
    """g(x) = L_α f(x) / α² written as x^4 + b x^2 + c x + d."""
    _require_klein_setting(coeffs, alpha)
    ctx = coeffs.ctx
    a = coeffs.a
    inv_alpha = ctx.inv(alpha)
    b = ctx.mul(ctx.pow(alpha, 5) ^ ctx.mul(alpha, a[4]) ^ a[5], inv_alpha)
    c = ctx.mul(ctx.mul(ctx.sqr(alpha), a[5]) ^ a[7], inv_alpha)
    constant = 0
    for i in range(10):
        constant ^= ctx.mul(a[i], ctx.pow(alpha, 10 - i))
    d = ctx.mul(constant, ctx.sqr(inv_alpha))
    quartic = QuarticNormal(ctx, b, c, d, alpha=alpha, source=coeffs)

    scaled = l_alpha(coeffs.to_poly(), alpha).l_poly * ctx.sqr(inv_alpha)
    if scaled != quartic.to_poly():
        raise InternalConsistencyError(
            f"reduced quartic {quartic.to_poly()} disagrees with L_alpha f / alpha^2 = {scaled}"
        )
    return quartic


def resolvents(q: QuarticNormal) -> ResolventSet:
    """R_2, R_3, Q and the depressed cubic; built from b and c only."""
    if not q.separable:
        raise SeparabilityError("quartic with c = 0 is not separable; resolvents are undefined")
    ctx = q.ctx
    b, c = q.b, q.c
    c2 = ctx.sqr(c)
    b2 = ctx.sqr(b)
    b3 = ctx.mul(b2, b)
    r2 = Poly(ctx, (ctx.mul(b3 ^ c2, c2), c2, 1))
    r3 = Poly(ctx, (c2, 0, b, 1))
    q_poly = Poly(ctx, (ctx.pow(b, 6), c2, 1))
    depressed = Poly(ctx, (c2, b2, 0, 1))
    if compose(r3, Poly(ctx, (b, 1))) != depressed:
        raise InternalConsistencyError(f"R_3(x + b) does not reduce to {depressed}")
    return ResolventSet(r2=r2, r3=r3, q=q_poly, depressed=depressed)


def r2_reducible(q: QuarticNormal) -> bool:
    """R_2 = x^2 + c^2 x + (b^3 + c^2) c^2 has a root iff Tr(b^3/c^2) = Tr(1)."""
    if not q.separable:
        raise SeparabilityError("R_2 is undefined when c = 0")
    ctx = q.ctx
    trace_form = ctx.trace(ctx.div(ctx.pow(q.b, 3), ctx.sqr(q.c))) == ctx.trace_of_one
    has_root = bool(roots_in_field(resolvents(q).r2))
    if trace_form != has_root:
        raise InternalConsistencyError(
            f"R_2 trace test ({trace_form}) disagrees with root finding ({has_root})"
        )
    return trace_form


def _q_roots(ctx: FieldContext, b: int, c: int) -> tuple:
    """Roots of T^2 + c^2 T + b^6 as extension pairs."""
    ext = quadratic_extension(ctx)
    return ext.quadratic_roots(ctx.sqr(c), ctx.pow(b, 6))


def _roots_are_cubes(ctx: FieldContext, roots: tuple) -> bool:
    if ctx.n % 2 == 0:
        if any(r[1] for r in roots):
            return False
        return all(is_cube(ctx, r[0]) for r in roots)
    ext = quadratic_extension(ctx)
    return all(ext.is_cube(r) for r in roots)


def cubic_pattern_williams(ctx: FieldContext, b: int, c: int) -> CubicPattern:
    """Root pattern of z^3 + b^2 z + c^2 over GF(2^n) from traces and cubes."""
    if c == 0:
        raise PreconditionError("Williams' criterion needs c != 0")
    ratio = ctx.div(ctx.pow(b, 6), ctx.pow(c, 4))
    if ctx.trace(ratio) != ctx.trace_of_one:
        return "one_root"
    if _roots_are_cubes(ctx, _q_roots(ctx, b, c)):
        return "three_roots"
    return "irreducible"


def morse_check(coeffs: Degree10Coeffs) -> MorseReport:
    """Morse test for L_{a_1/a_0} f by formula, verified through g' and g^[2]."""
    ctx = coeffs.ctx
    a = coeffs.a
    m = ctx.mul
    p = ctx.pow
    a0, a1, a3, a4, a5, a7 = a[0], a[1], a[3], a[4], a[5], a[7]
    value = (
        m(m(p(a0, 4), ctx.sqr(a1)), ctx.sqr(a4))
        ^ m(p(a0, 6), ctx.sqr(a5))
        ^ m(p(a1, 7), a3)
        ^ m(m(ctx.sqr(a0), p(a1, 4)), ctx.sqr(a3))
        ^ m(m(m(p(a0, 4), ctx.sqr(a1)), a3), a5)
        ^ m(m(p(a0, 6), a3), a7)
    )
    applicable = m(a1, a3) != 0
    if not applicable:
        return MorseReport(applicable=False, nondegeneracy_value=value, is_morse=False)

    alpha = ctx.div(a1, a0)
    g = l_alpha(coeffs.to_poly(), alpha).l_poly
    if g.degree != 3:
        raise InternalConsistencyError(f"L_{{a1/a0}} f has degree {g.degree}, expected 3")
    second = hasse_schmidt(g, 2)
    root = ctx.div(second.coeff(0), second.coeff(1))
    g_prime_at_root = evaluate(hasse_schmidt(g, 1), root)
    if (g_prime_at_root != 0) != (value != 0):
        raise InternalConsistencyError(
            f"Morse formula ({value:x}) and g'(r) = {g_prime_at_root:x} disagree at r = {root:x}"
        )
    logger.debug(f"🔍 Morse check: alpha={alpha:x}, r={root:x}, g'(r)={g_prime_at_root:x}")
    return MorseReport(
        applicable=True,
        nondegeneracy_value=value,
        is_morse=value != 0,
        alpha=alpha,
        critical_root=root,
        derivative_at_root=g_prime_at_root,
    )


def klein_check(coeffs: Degree10Coeffs, alpha: int) -> KleinReport:
    quartic = reduce_quartic(coeffs, alpha)
    ctx = quartic.ctx
    b, c = quartic.b, quartic.c
    if not quartic.separable:
        return KleinReport(
            alpha=alpha, b=b, c=c, c_nonzero=False, r3_split=False,
            trace_condition=False, q_roots_are_cubes=False, verdict=False,
        )

    res = resolvents(quartic)
    trace_condition = ctx.trace(ctx.div(ctx.pow(b, 3), ctx.sqr(c))) == ctx.trace_of_one
    q_roots = _q_roots(ctx, b, c)
    cubes = _roots_are_cubes(ctx, q_roots)
    pattern = cubic_pattern_williams(ctx, b, c)
    r3_roots = tuple(roots_in_field(res.r3))
    r3_split = pattern == "three_roots"
    if r3_split != (len(r3_roots) == 3):
        logger.error(f"❌ Williams pattern {pattern} vs {len(r3_roots)} roots of R_3 (alpha={alpha:x})")
        raise InternalConsistencyError(
            f"Williams pattern '{pattern}' disagrees with {len(r3_roots)} roots of {res.r3}"
        )
    if r3_split != (trace_condition and cubes):
        raise InternalConsistencyError("R_3 splitting is not equivalent to trace and cube conditions")
    reducible = r2_reducible(quartic)
    if trace_condition and not reducible:
        raise InternalConsistencyError("trace condition holds but R_2 is irreducible")
    return KleinReport(
        alpha=alpha,
        b=b,
        c=c,
        c_nonzero=True,
        r3_split=r3_split,
        trace_condition=trace_condition,
        q_roots_are_cubes=cubes,
        verdict=r3_split,
        r2_reducible=reducible,
        q_poly=res.q,
        q_roots=q_roots,
        r3_roots=r3_roots,
    )
