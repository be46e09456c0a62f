"""Polynomials over GF(2^n).

A ``Poly`` stores coefficients low-to-high (index k holds the coefficient of
x^k) as a tuple of field elements, trimmed so that the zero polynomial is the
empty tuple. Degree-10 polynomials f = Σ a_{10-i} x^i additionally have the
``Degree10Coeffs`` view indexed the other way round.

The derivative operators come in two flavours for degree 10: the generic
binomial / greedy algorithms and the closed forms, and the generic path
checks itself against the closed form on every call.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from ..core.config import settings
from ..core.errors import (
    InternalConsistencyError,
    NotSquarefreeError,
    ParseError,
    PreconditionError,
)
from .gf2n import FieldContext

# Configure logging
logger = logging.getLogger(__name__)

RootMethod = Literal["auto", "scan", "frobenius"]


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    ctx: FieldContext
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldContext) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def constant(cls, ctx: FieldContext, c: int) -> "Poly":
        return cls(ctx, (c,))

    @classmethod
    def monomial(cls, ctx: FieldContext, k: int, c: int = 1) -> "Poly":
        return cls(ctx, (0,) * k + (c,))

    @classmethod
    def from_leading_first(cls, ctx: FieldContext, coeffs: Sequence[int]) -> "Poly":
        return cls(ctx, tuple(reversed(coeffs)))

    @classmethod
    def parse(cls, ctx: FieldContext, text: str) -> "Poly":
        """Comma-separated hex coefficients, leading coefficient first."""
        parts = [p for p in text.replace(" ", "").split(",")]
        if not parts or any(p == "" for p in parts):
            raise ParseError(f"malformed polynomial '{text}'")
        return cls.from_leading_first(ctx, [ctx.parse(p) for p in parts])

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        return ",".join(f"{c:x}" for c in reversed(self.coeffs))

    # -- basic facts -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.ctx, _add(self.coeffs, other.coeffs))

    __sub__ = __add__

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return Poly(self.ctx, _mul(self.ctx, self.coeffs, other.coeffs))
        return Poly(self.ctx, _scale(self.ctx, self.coeffs, other))

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self * self.ctx.inv(self.leading)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c:x}{'*' + mono if mono else ''}")
        return " + ".join(terms)


@dataclass(frozen=True)
class Degree10Coeffs:
    """f = Σ_{i=0}^{10} a_{10-i} x^i, so a[0] leads and a[10] is the constant."""

    ctx: FieldContext
    a: tuple

    def __post_init__(self):
        if len(self.a) != 11:
            raise PreconditionError(f"expected 11 coefficients a_0..a_10, got {len(self.a)}")
        if self.a[0] == 0:
            raise PreconditionError("a_0 must be nonzero for a degree-10 polynomial")

    @classmethod
    def from_poly(cls, f: Poly) -> "Degree10Coeffs":
        if f.degree != 10:
            raise PreconditionError(f"expected a polynomial of degree 10, got degree {f.degree}")
        return cls(f.ctx, tuple(f.coeff(10 - i) for i in range(11)))

    def __getitem__(self, i: int) -> int:
        return self.a[i]

    def to_poly(self) -> Poly:
        return Poly.from_leading_first(self.ctx, self.a)

    def scaled(self, c: int) -> "Degree10Coeffs":
        return Degree10Coeffs(self.ctx, tuple(self.ctx.mul(c, ai) for ai in self.a))

    def monic(self) -> "Degree10Coeffs":
        return self.scaled(self.ctx.inv(self.a[0]))


@dataclass(frozen=True)
class DerivedPair:
    alpha: int
    d_poly: Poly
    l_poly: Poly

    @property
    def d(self) -> int:
        return self.l_poly.degree


# ---------------------------------------------------------------------------
# tuple-level kernels
# ---------------------------------------------------------------------------

def _add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] ^= c
    return _trim(r)


def _scale(ctx: FieldContext, a: tuple, c: int) -> tuple:
    if c == 0:
        return ()
    if c == 1:
        return a
    return tuple(ctx.mul(x, c) for x in a)


def _mul(ctx: FieldContext, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    r = [0] * (len(a) + len(b) - 1)
    mul = ctx.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    r[i + j] ^= mul(x, y)
    return _trim(r)


def _divmod(ctx: FieldContext, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise PreconditionError("polynomial division by zero")
    db = len(b) - 1
    r = list(a)
    if len(r) <= db:
        return (), _trim(r)
    quot = [0] * (len(r) - db)
    inv = ctx.inv(b[-1])
    mul = ctx.mul
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = mul(c, inv)
        shift = i - db
        quot[shift] = c
        for j in range(db + 1):
            if b[j]:
                r[shift + j] ^= mul(c, b[j])
    return _trim(quot), _trim(r[:db])


def _mod(ctx: FieldContext, a, b: tuple) -> tuple:
    return _divmod(ctx, tuple(a), b)[1]


def _monic(ctx: FieldContext, a: tuple) -> tuple:
    if not a or a[-1] == 1:
        return a
    return _scale(ctx, a, ctx.inv(a[-1]))


def _gcd(ctx: FieldContext, a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, _mod(ctx, a, b)
    return _monic(ctx, a)


def _sqr_mod(ctx: FieldContext, h: tuple, f: tuple) -> tuple:
    # squaring is additive in characteristic 2
    if not h:
        return ()
    spread = [0] * (2 * len(h) - 1)
    for k, c in enumerate(h):
        spread[2 * k] = ctx.sqr(c)
    return _mod(ctx, spread, f)


def _frobenius_mod(ctx: FieldContext, h: tuple, f: tuple) -> tuple:
    """h^q mod f with q = 2^n."""
    for _ in range(ctx.n):
        h = _sqr_mod(ctx, h, f)
    return h


def _x_mod(ctx: FieldContext, f: tuple) -> tuple:
    return _mod(ctx, (0, 1), f)


# ---------------------------------------------------------------------------
# public polynomial algebra
# ---------------------------------------------------------------------------

def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    q, r = _divmod(f.ctx, f.coeffs, g.coeffs)
    return Poly(f.ctx, q), Poly(f.ctx, r)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    return Poly(f.ctx, _gcd(f.ctx, f.coeffs, g.coeffs))


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x)) by Horner's rule."""
    acc: tuple = ()
    for c in reversed(f.coeffs):
        acc = _add(_mul(f.ctx, acc, g.coeffs), (c,))
    return Poly(f.ctx, acc)


def evaluate(f: Poly, x: int) -> int:
    acc = 0
    mul = f.ctx.mul
    for c in reversed(f.coeffs):
        acc = mul(acc, x) ^ c
    return acc


def evaluate_all(f: Poly) -> np.ndarray:
    """Values of f at every field element, indexed by the element's bits."""
    ctx = f.ctx
    xs = ctx.elements_array()
    acc = np.zeros(ctx.order, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = ctx.mul_array(acc, xs) ^ c
    return acc


def hasse_schmidt(f: Poly, k: int) -> Poly:
    """k-th Hasse-Schmidt derivative: x^m contributes binomial(m, k) x^{m-k}.

    binomial(m, k) is odd exactly when the bits of k are a subset of those of m.
    """
    if k < 0:
        raise PreconditionError("Hasse-Schmidt order must be nonnegative")
    return Poly(f.ctx, tuple(
        c if (m & k) == k else 0
        for m, c in enumerate(f.coeffs) if m >= k
    ))


def derivative(f: Poly) -> Poly:
    return hasse_schmidt(f, 1)


def strip_affine(f: Poly) -> Poly:
    """Drop the constant and every x^{2^k} term; these never change δ."""
    return Poly(f.ctx, tuple(
        0 if m == 0 or (m & (m - 1)) == 0 else c
        for m, c in enumerate(f.coeffs)
    ))


# ---------------------------------------------------------------------------
# D_α f and L_α f
# ---------------------------------------------------------------------------

def _alpha_powers(ctx: FieldContext, alpha: int, top: int) -> list:
    powers = [1]
    for _ in range(top):
        powers.append(ctx.mul(powers[-1], alpha))
    return powers


def d_alpha_closed_form(coeffs: Degree10Coeffs, alpha: int) -> Poly:
    ctx = coeffs.ctx
    a = coeffs.a
    p = _alpha_powers(ctx, alpha, 10)

    def t(i: int, e: int) -> int:
        return ctx.mul(a[i], p[e])

    constant = 0
    for i in range(10):
        constant ^= t(i, 10 - i)
    low_to_high = [
        constant,
        t(1, 8) ^ t(3, 6) ^ t(5, 4) ^ t(7, 2),
        t(0, 8) ^ t(3, 5) ^ t(4, 4) ^ t(7, 1),
        t(3, 4),
        t(3, 3) ^ t(4, 2) ^ t(5, 1),
        t(3, 2),
        t(3, 1),
        0,
        t(0, 2) ^ t(1, 1),
    ]
    return Poly(ctx, tuple(low_to_high))


def l_alpha_closed_form(coeffs: Degree10Coeffs, alpha: int) -> Poly:
    ctx = coeffs.ctx
    a = coeffs.a
    p = _alpha_powers(ctx, alpha, 10)

    def t(i: int, e: int) -> int:
        return ctx.mul(a[i], p[e])

    constant = 0
    for i in range(10):
        constant ^= t(i, 10 - i)
    low_to_high = [
        constant,
        t(1, 7) ^ t(3, 5) ^ t(5, 3) ^ t(7, 1),
        t(0, 6) ^ t(1, 5) ^ t(4, 2) ^ t(5, 1),
        t(3, 1),
        t(0, 2) ^ t(1, 1),
    ]
    return Poly(ctx, tuple(low_to_high))


def d_alpha(f: Poly, alpha: int) -> Poly:
    """D_α f(x) = f(x + α) + f(x) by binomial expansion over GF(2)."""
    if alpha == 0:
        raise PreconditionError("D_alpha needs alpha != 0 (D_0 f is identically zero)")
    ctx = f.ctx
    m = f.degree
    if m <= 0:
        return Poly.zero(ctx)
    powers = _alpha_powers(ctx, alpha, m)
    out = [0] * m
    for mm in range(1, m + 1):
        a = f.coeffs[mm]
        if not a:
            continue
        for j in range(mm):
            if (j & mm) == j:
                out[j] ^= ctx.mul(a, powers[mm - j])
    d_poly = Poly(ctx, tuple(out))
    if m == 10:
        closed = d_alpha_closed_form(Degree10Coeffs.from_poly(f), alpha)
        if closed != d_poly:
            raise InternalConsistencyError(
                f"D_alpha binomial expansion {d_poly} disagrees with closed form {closed}"
            )
    return d_poly


def l_alpha(f: Poly, alpha: int) -> DerivedPair:
    """L_α f with L_α f(x(x+α)) = D_α f(x), by greedy reduction in y = x^2 + αx."""
    ctx = f.ctx
    d_poly = d_alpha(f, alpha)
    if d_poly.is_zero:
        raise PreconditionError("D_alpha f vanishes identically; L_alpha f is undefined")
    y = (0, alpha, 1)
    y_powers = [(1,)]
    for _ in range(d_poly.degree // 2):
        y_powers.append(_mul(ctx, y_powers[-1], y))
    rem = d_poly.coeffs
    l_coeffs = [0] * (d_poly.degree // 2 + 1)
    while len(rem) > 1:
        deg = len(rem) - 1
        if deg & 1:
            logger.error(f"❌ D_alpha f reduced to odd degree {deg} (alpha={alpha:x})")
            raise InternalConsistencyError(
                f"odd degree {deg} while reducing D_alpha f: D(x) = D(x + alpha) is violated"
            )
        k = deg // 2
        lead = rem[-1]
        l_coeffs[k] = lead
        rem = _add(rem, _scale(ctx, y_powers[k], lead))
    l_coeffs[0] = rem[0] if rem else 0
    l_poly = Poly(ctx, tuple(l_coeffs))
    if compose(l_poly, Poly(ctx, y)) != d_poly or d_poly.degree != 2 * l_poly.degree:
        raise InternalConsistencyError(f"L_alpha f = {l_poly} does not recompose to D_alpha f")
    if f.degree == 10:
        closed = l_alpha_closed_form(Degree10Coeffs.from_poly(f), alpha)
        if closed != l_poly:
            raise InternalConsistencyError(
                f"L_alpha greedy reduction {l_poly} disagrees with closed form {closed}"
            )
    return DerivedPair(alpha=alpha, d_poly=d_poly, l_poly=l_poly)


# ---------------------------------------------------------------------------
# roots and factorization patterns
# ---------------------------------------------------------------------------

def _trace_poly_mod(ctx: FieldContext, v: int, g: tuple) -> tuple:
    """Tr(v x) = Σ (v x)^{2^i} reduced modulo g."""
    term = _mod(ctx, (0, v), g)
    acc = term
    for _ in range(ctx.n - 1):
        term = _sqr_mod(ctx, term, g)
        acc = _add(acc, term)
    return acc


def _split_linear(ctx: FieldContext, g: tuple) -> list:
    """Roots of a monic product of distinct linear factors."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [g[0]]
    for i in range(ctx.n):
        h = _gcd(ctx, g, _trace_poly_mod(ctx, 1 << i, g))
        if 1 < len(h) < len(g):
            return _split_linear(ctx, h) + _split_linear(ctx, _divmod(ctx, g, h)[0])
    raise InternalConsistencyError(f"trace splitting failed on {Poly(ctx, g)}")


def _roots_frobenius(f: Poly) -> list:
    ctx = f.ctx
    fm = _monic(ctx, f.coeffs)
    x = _x_mod(ctx, fm)
    xq = _frobenius_mod(ctx, x, fm)
    g = _gcd(ctx, fm, _add(xq, x))
    return sorted(_split_linear(ctx, g))


def _roots_scan(f: Poly) -> list:
    values = evaluate_all(f)
    return [int(x) for x in np.flatnonzero(values == 0)]


def roots_in_field(f: Poly, method: RootMethod = "auto") -> list:
    """Distinct roots of f in its coefficient field, in increasing bit order."""
    if f.is_zero:
        raise PreconditionError("the zero polynomial has every element as a root")
    if f.degree == 0:
        return []
    if method == "auto":
        method = "scan" if f.ctx.n <= settings.SCAN_ROOTS_MAX_N else "frobenius"
    if method == "scan":
        return _roots_scan(f)
    if method == "frobenius":
        return _roots_frobenius(f)
    raise PreconditionError(f"unknown root-finding method '{method}'")


def root_multiplicities(f: Poly, method: RootMethod = "auto") -> dict:
    ctx = f.ctx
    result = {}
    for r in roots_in_field(f, method):
        k = 0
        rem = f.coeffs
        while True:
            q, rr = _divmod(ctx, rem, (r, 1))
            if rr:
                break
            k += 1
            rem = q
        result[r] = k
    return result


def ensure_squarefree(f: Poly) -> None:
    """Raise NotSquarefreeError unless gcd(f, f') = 1.

    In characteristic 2 f' vanishes exactly when f is a square, which is
    checked separately.
    """
    if f.degree <= 0:
        return
    df = derivative(f)
    if df.is_zero:
        raise NotSquarefreeError(f"{f} is a square (all odd coefficients vanish)", f.monic())
    g = poly_gcd(f, df)
    if g.degree > 0:
        raise NotSquarefreeError(f"{f} has the repeated factor {g}", g)


def is_squarefree(f: Poly) -> bool:
    try:
        ensure_squarefree(f)
    except NotSquarefreeError:
        return False
    return True


def distinct_degree_factors(f: Poly) -> list:
    """[(k, product of all irreducible factors of degree k)] for squarefree f."""
    ensure_squarefree(f)
    ctx = f.ctx
    rem = _monic(ctx, f.coeffs)
    pieces = []
    h = _x_mod(ctx, rem) if len(rem) > 1 else ()
    k = 0
    while len(rem) - 1 >= 2 * (k + 1):
        k += 1
        h = _frobenius_mod(ctx, h, rem)
        g = _gcd(ctx, rem, _add(h, (0, 1)))
        if len(g) > 1:
            pieces.append((k, Poly(ctx, g)))
            rem = _divmod(ctx, rem, g)[0]
            h = _mod(ctx, h, rem)
    if len(rem) > 1:
        pieces.append((len(rem) - 1, Poly(ctx, rem)))
    return pieces


def factorization_type(f: Poly) -> tuple:
    """Sorted degrees of the irreducible factors of a squarefree f."""
    pattern = []
    for k, g in distinct_degree_factors(f):
        pattern.extend([k] * (g.degree // k))
    return tuple(sorted(pattern))
