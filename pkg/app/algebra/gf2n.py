"""Exact arithmetic in GF(2^n) and its quadratic extension GF(2^{2n}).

Field elements are plain ints holding polynomial-basis coordinates: bit k is
the coefficient of θ^k, where θ is a root of the modulus. Zero and one are
always 0 and 1, and addition is XOR. Extension elements are pairs (a0, a1)
standing for a0 + a1*y with y^2 = y + δ.

Contexts are immutable and cached, so they can be shared freely between
threads.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_irred_p_ben_or

from ..core.config import settings
from ..core.errors import (
    FieldConstructionError,
    FieldDivisionByZero,
    FieldRangeError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    UnsupportedConfigurationError,
)

# Configure logging
logger = logging.getLogger(__name__)

MIN_N = 1
MAX_N = 32

FieldElement = int
ExtElement = tuple[int, int]


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on bit-packed ints
# ---------------------------------------------------------------------------

def clmul(a: int, b: int) -> int:
    """Carryless (GF(2)[x]) product of two bit-packed polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while True:
        da = a.bit_length() - 1
        if da < dm:
            return a
        a ^= m << (da - dm)


def _to_sympy_dense(bits: int) -> list:
    return [ZZ(int(ch)) for ch in bin(bits)[2:]]


def is_irreducible_gf2(modulus: int) -> bool:
    """Ben-Or test: gcd with x^{2^k} - x for k <= deg/2."""
    return bool(gf_irred_p_ben_or(_to_sympy_dense(modulus), 2, ZZ))


def smallest_factor_degree(modulus: int) -> int:
    _, factors = gf_factor(_to_sympy_dense(modulus), 2, ZZ)
    return min(len(f) - 1 for f, _ in factors)


@lru_cache(maxsize=None)
def default_modulus(n: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree n over GF(2)."""
    if not MIN_N <= n <= MAX_N:
        raise FieldRangeError(f"extension degree n={n} outside [{MIN_N}, {MAX_N}]")
    top = 1 << n
    for low in range(top):
        # for n > 1 an even constant term means x divides the candidate
        if n > 1 and not low & 1:
            continue
        candidate = top | low
        if is_irreducible_gf2(candidate):
            return candidate
    raise InternalConsistencyError(f"no irreducible polynomial of degree {n} found")


def parse_hex(text: str) -> int:
    cleaned = text.strip().lower()
    if cleaned.startswith("0x"):
        cleaned = cleaned[2:]
    if not cleaned:
        raise ParseError("empty hexadecimal value")
    try:
        return int(cleaned, 16)
    except ValueError as e:
        raise ParseError(f"'{text}' is not a hexadecimal value") from e


# ---------------------------------------------------------------------------
# GF(2^n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldContext:
    """A concrete model of GF(2^n): GF(2)[X]/(modulus)."""

    n: int
    modulus: int
    generator: Optional[int] = None
    use_tables: bool = field(default=True, compare=False)
    _exp: Optional[list] = field(default=None, init=False, repr=False, compare=False)
    _log: Optional[list] = field(default=None, init=False, repr=False, compare=False)
    _exp_np: Optional[np.ndarray] = field(default=None, init=False, repr=False, compare=False)
    _log_np: Optional[np.ndarray] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not MIN_N <= self.n <= MAX_N:
            raise FieldRangeError(f"extension degree n={self.n} outside [{MIN_N}, {MAX_N}]")
        if self.modulus.bit_length() - 1 != self.n:
            raise PreconditionError(
                f"modulus {self.modulus:x} has degree {self.modulus.bit_length() - 1}, expected {self.n}"
            )
        if not is_irreducible_gf2(self.modulus):
            degree = smallest_factor_degree(self.modulus)
            logger.error(f"❌ Modulus {self.modulus:x} is reducible (factor of degree {degree})")
            raise FieldConstructionError(
                f"modulus {self.modulus:x} is reducible over GF(2): it has a factor of degree {degree}",
                factor_degree=degree,
            )
        if self.generator is not None:
            if self.multiplicative_order(self.generator) != self.order - 1:
                raise FieldConstructionError(
                    f"{self.generator:x} does not generate GF(2^{self.n})^*", factor_degree=0
                )
            if self.use_tables and self.n <= settings.TABLE_MAX_N:
                self._build_tables()

    def _build_tables(self) -> None:
        q1 = self.order - 1
        exp = [1] * (2 * q1)
        v = 1
        for i in range(q1):
            exp[i] = v
            v = self.mul_clmul(v, self.generator)
        for i in range(q1, 2 * q1):
            exp[i] = exp[i - q1]
        log = [0] * self.order
        for i in range(q1):
            log[exp[i]] = i
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_exp_np", np.array(exp, dtype=np.int64))
        object.__setattr__(self, "_log_np", np.array(log, dtype=np.int64))

    # -- basic facts ---------------------------------------------------------

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    @property
    def trace_of_one(self) -> int:
        return self.n & 1

    @cached_property
    def trace_one(self) -> int:
        """Smallest element (bit order) with absolute trace 1."""
        for a in range(1, self.order):
            if self.trace(a):
                return a
        raise InternalConsistencyError("trace map is identically zero")

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def elements(self) -> range:
        return range(self.order)

    def elements_array(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul_clmul(self, a: int, b: int) -> int:
        return gf2_mod(clmul(a, b), self.modulus)

    def mul_table(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return gf2_mod(clmul(a, b), self.modulus)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero("inverse of zero in GF(2^n)")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        # Frobenius has order n, so sqrt is the (n-1)-fold square
        for _ in range(self.n - 1):
            a = self.sqr(a)
        return a

    def trace(self, a: int) -> int:
        s = a
        t = a
        for _ in range(self.n - 1):
            t = self.sqr(t)
            s ^= t
        return s

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero("zero has no multiplicative order")
        order = self.order - 1
        for p, k in factorint(order).items():
            for _ in range(k):
                if self._pow_clmul(a, order // p) == 1:
                    order //= p
                else:
                    break
        return order

    def _pow_clmul(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_clmul(result, a)
            a = self.mul_clmul(a, a)
            e >>= 1
        return result

    # -- vectorized ----------------------------------------------------------

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of int64 arrays (or scalars) of field elements."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._exp_np is not None:
            r = self._exp_np[self._log_np[a] + self._log_np[b]]
            return np.where((a == 0) | (b == 0), 0, r)
        return np.vectorize(self.mul, otypes=[np.int64])(a, b)

    # -- text ----------------------------------------------------------------

    def format(self, a: int) -> str:
        width = max(1, (self.n + 3) // 4)
        return f"{a:0{width}x}"

    def parse(self, text: str) -> int:
        value = parse_hex(text)
        if not self.contains(value):
            raise ParseError(f"'{text}' does not fit in {self.n} bits")
        return value

    @property
    def modulus_hex(self) -> str:
        return f"{self.modulus:x}"


def _find_generator(provisional: FieldContext) -> int:
    q = provisional.order
    for g in range(1, q):
        if provisional.multiplicative_order(g) == q - 1:
            return g
    raise InternalConsistencyError(f"no generator found for GF(2^{provisional.n})")


@lru_cache(maxsize=64)
def make_field(n: int, modulus: Optional[int] = None, use_tables: bool = True) -> FieldContext:
    """Build a validated GF(2^n) context, with a generator found by search."""
    if not MIN_N <= n <= MAX_N:
        logger.error(f"❌ Extension degree out of range: {n}")
        raise FieldRangeError(f"extension degree n={n} outside [{MIN_N}, {MAX_N}]")
    if modulus is None:
        modulus = default_modulus(n)
    provisional = FieldContext(n=n, modulus=modulus, use_tables=False)
    generator = _find_generator(provisional)
    ctx = FieldContext(n=n, modulus=modulus, generator=generator, use_tables=use_tables)
    logger.info(
        f"🏗️  Built GF(2^{n}) modulus={modulus:x} generator={generator:x} tables={ctx.has_tables}"
    )
    return ctx


_OPERATIONS: dict[str, Callable[..., int]] = {
    "add": lambda ctx, a, b: ctx.add(a, b),
    "mul": lambda ctx, a, b: ctx.mul(a, b),
    "inv": lambda ctx, a: ctx.inv(a),
    "pow": lambda ctx, a, e: ctx.pow(a, e),
}


def field_arith(ctx: FieldContext, op: str, *operands: int) -> int:
    if op not in _OPERATIONS:
        raise PreconditionError(f"unknown field operation '{op}'")
    elements = operands[:1] if op == "pow" else operands
    for a in elements:
        if not ctx.contains(a):
            raise PreconditionError(f"operand {a:x} is not an element of GF(2^{ctx.n})")
    return _OPERATIONS[op](ctx, *operands)


def trace(ctx: FieldContext, a: int) -> int:
    return ctx.trace(a)


def _solve_y2_plus_y(ctx: FieldContext, c: int) -> int:
    """A solution of y^2 + y = c, assuming Tr(c) = 0.

    With τ of trace one and T_i = τ + τ^2 + ... + τ^{2^{i-1}},
    y = Σ c^{2^i} T_i works for every n.
    """
    tau_pow = ctx.trace_one
    partial = 0
    c_pow = c
    y = 0
    for _ in range(ctx.n):
        y ^= ctx.mul(c_pow, partial)
        partial ^= tau_pow
        tau_pow = ctx.sqr(tau_pow)
        c_pow = ctx.sqr(c_pow)
    return y


def solve_artin_schreier(ctx: FieldContext, alpha: int, b: int) -> Optional[tuple[int, int]]:
    """Both solutions of x^2 + alpha*x = b, or None when Tr(b/alpha^2) = 1."""
    if alpha == 0:
        raise PreconditionError("Artin-Schreier solving needs alpha != 0")
    c = ctx.div(b, ctx.sqr(alpha))
    if ctx.trace(c):
        return None
    x = ctx.mul(alpha, _solve_y2_plus_y(ctx, c))
    if ctx.sqr(x) ^ ctx.mul(alpha, x) != b:
        raise InternalConsistencyError(
            f"Artin-Schreier solution {x:x} fails x^2 + {alpha:x}x = {b:x}"
        )
    low, high = sorted((x, x ^ alpha))
    return low, high


def is_cube(ctx: FieldContext, a: int, in_quadratic_extension: bool = False) -> bool:
    if a == 0:
        return True
    if in_quadratic_extension:
        ext = quadratic_extension(ctx)
        return ext.is_cube(ext.lift(a))
    if (ctx.order - 1) % 3:
        raise UnsupportedConfigurationError(
            f"3 does not divide 2^{ctx.n} - 1; test cubes in the quadratic extension instead"
        )
    return ctx.pow(a, (ctx.order - 1) // 3) == 1


# ---------------------------------------------------------------------------
# GF(2^{2n}) = GF(2^n)[y]/(y^2 + y + δ)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionContext:
    base: FieldContext
    delta: int

    def __post_init__(self):
        if self.base.trace(self.delta) != 1:
            raise FieldConstructionError(
                f"y^2 + y + {self.delta:x} is reducible over GF(2^{self.base.n})", factor_degree=1
            )

    @property
    def order(self) -> int:
        return self.base.order ** 2

    @property
    def zero(self) -> ExtElement:
        return (0, 0)

    @property
    def one(self) -> ExtElement:
        return (1, 0)

    def lift(self, a: int) -> ExtElement:
        return (a, 0)

    def in_base(self, u: ExtElement) -> bool:
        return u[1] == 0

    def add(self, u: ExtElement, v: ExtElement) -> ExtElement:
        return (u[0] ^ v[0], u[1] ^ v[1])

    def mul(self, u: ExtElement, v: ExtElement) -> ExtElement:
        f = self.base
        hi = f.mul(u[1], v[1])
        return (
            f.mul(u[0], v[0]) ^ f.mul(hi, self.delta),
            f.mul(u[0], v[1]) ^ f.mul(u[1], v[0]) ^ hi,
        )

    def sqr(self, u: ExtElement) -> ExtElement:
        return self.mul(u, u)

    def pow(self, u: ExtElement, e: int) -> ExtElement:
        if e < 0:
            return self.pow(self.inv(u), -e)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            e >>= 1
        return result

    def inv(self, u: ExtElement) -> ExtElement:
        if u == self.zero:
            raise FieldDivisionByZero("inverse of zero in GF(2^{2n})")
        return self.pow(u, self.order - 2)

    def is_cube(self, u: ExtElement) -> bool:
        if u == self.zero:
            return True
        return self.pow(u, (self.order - 1) // 3) == self.one

    def quadratic_roots(self, b: int, c: int) -> tuple[ExtElement, ExtElement]:
        """Roots of T^2 + bT + c (coefficients in the base field)."""
        f = self.base
        if b == 0:
            r = self.lift(f.sqrt(c))
            roots = (r, r)
        else:
            e = f.div(c, f.sqr(b))
            sol = solve_artin_schreier(f, 1, e)
            if sol is not None:
                u = sol[0]
                roots = (self.lift(f.mul(b, u)), self.lift(f.mul(b, u ^ 1)))
            else:
                # u = v + y with v^2 + v = e + δ
                v = solve_artin_schreier(f, 1, e ^ self.delta)[0]
                roots = ((f.mul(b, v), b), (f.mul(b, v ^ 1), b))
        for r in roots:
            value = self.add(self.add(self.sqr(r), self.mul(self.lift(b), r)), self.lift(c))
            if value != self.zero:
                raise InternalConsistencyError(f"{r} is not a root of T^2 + {b:x}T + {c:x}")
        return tuple(sorted(roots))


@lru_cache(maxsize=64)
def quadratic_extension(ctx: FieldContext) -> ExtensionContext:
    return ExtensionContext(base=ctx, delta=ctx.trace_one)


# ---------------------------------------------------------------------------
# Embeddings between models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldEmbedding:
    """Ring embedding GF(2^k) -> GF(2^n) fixed by the image of θ."""

    sub: FieldContext
    big: FieldContext
    theta_image: int

    @cached_property
    def _basis_images(self) -> list:
        images = [1]
        for _ in range(self.sub.n - 1):
            images.append(self.big.mul(images[-1], self.theta_image))
        return images

    def __call__(self, a: int) -> int:
        r = 0
        for k, image in enumerate(self._basis_images):
            if (a >> k) & 1:
                r ^= image
        return r


def _eval_gf2_poly(ctx: FieldContext, bits: int, x: int) -> int:
    acc = 0
    for k in range(bits.bit_length() - 1, -1, -1):
        acc = ctx.mul(acc, x) ^ ((bits >> k) & 1)
    return acc


def field_embedding(sub: FieldContext, big: FieldContext) -> FieldEmbedding:
    """Embed sub into big by sending θ to the smallest root of sub's modulus."""
    if big.n % sub.n:
        raise PreconditionError(f"GF(2^{sub.n}) is not a subfield of GF(2^{big.n})")
    if big.generator is None:
        raise PreconditionError("the target field needs a generator; build it with make_field")
    step = (big.order - 1) // (sub.order - 1)
    gamma = big.pow(big.generator, step)
    candidates = [0]
    v = 1
    for _ in range(sub.order - 1):
        candidates.append(v)
        v = big.mul(v, gamma)
    roots = [c for c in candidates if _eval_gf2_poly(big, sub.modulus, c) == 0]
    if not roots:
        raise InternalConsistencyError(
            f"modulus {sub.modulus:x} has no root in GF(2^{big.n}) model {big.modulus:x}"
        )
    logger.debug(f"🔍 Embedding θ ↦ {min(roots):x} ({len(roots)} candidate roots)")
    return FieldEmbedding(sub=sub, big=big, theta_image=min(roots))
