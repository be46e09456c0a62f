import unittest
import os
import sys
import itertools

from hypothesis import given, settings as hyp_settings, strategies as st

# Add the parent directory to the path so we can import from app
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.algebra.gf2n import make_field
from app.algebra.polyops import Degree10Coeffs, Poly, compose, evaluate, l_alpha, roots_in_field
from app.algebra.quartic import (
    QuarticNormal,
    cubic_pattern_williams,
    klein_check,
    morse_check,
    r2_reducible,
    reduce_quartic,
    resolvents,
)
from app.core.errors import PreconditionError, SeparabilityError

THETA = 0x2


def coeffs_of(ctx, a):
    return Degree10Coeffs(ctx, tuple(a))


def klein_poly(ctx, a4=0, a5=0, a7=1, a2=0, a6=0):
    a = [1, 0, a2, 0, a4, a5, a6, a7, 0, 0, 0]
    return coeffs_of(ctx, a)


def brute_cubic_roots(ctx, b, c):
    b2, c2 = ctx.sqr(b), ctx.sqr(c)
    return sum(1 for z in ctx.elements() if ctx.pow(z, 3) ^ ctx.mul(b2, z) ^ c2 == 0)


PATTERN_BY_COUNT = {0: "irreducible", 1: "one_root", 3: "three_roots"}


class TestReduceQuartic(unittest.TestCase):

    def setUp(self):
        self.ctx = make_field(4, 0x19)

    def test_x10_x3(self):
        coeffs = klein_poly(self.ctx)
        for alpha in range(1, 16):
            q = reduce_quartic(coeffs, alpha)
            self.assertEqual(q.b, self.ctx.pow(alpha, 4))
            self.assertEqual(q.c, self.ctx.inv(alpha))
        q = reduce_quartic(coeffs, 1)
        self.assertEqual((q.b, q.c), (1, 1))

    def test_matches_scaled_companion(self):
        for a5 in range(16):
            coeffs = klein_poly(self.ctx, a5=a5)
            for alpha in range(1, 16):
                q = reduce_quartic(coeffs, alpha)
                expected_c = self.ctx.div(self.ctx.mul(self.ctx.sqr(alpha), a5) ^ 1, alpha)
                self.assertEqual(q.c, expected_c)
                scaled = l_alpha(coeffs.to_poly(), alpha).l_poly * self.ctx.inv(self.ctx.sqr(alpha))
                self.assertEqual(q.to_poly(), scaled)

    def test_preconditions_name_the_coefficient(self):
        a = [1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0]
        with self.assertRaisesRegex(PreconditionError, "a_1"):
            reduce_quartic(coeffs_of(self.ctx, a), 1)
        a = [1, 0, 0, 5, 0, 0, 0, 1, 0, 0, 0]
        with self.assertRaisesRegex(PreconditionError, "a_3"):
            reduce_quartic(coeffs_of(self.ctx, a), 1)
        a = [3, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]
        with self.assertRaisesRegex(PreconditionError, "a_0"):
            reduce_quartic(coeffs_of(self.ctx, a), 1)
        with self.assertRaises(PreconditionError):
            reduce_quartic(klein_poly(self.ctx), 0)


class TestResolvents(unittest.TestCase):

    def test_b0_c1(self):
        ctx = make_field(4, 0x19)
        res = resolvents(QuarticNormal(ctx, b=0, c=1, d=0))
        self.assertEqual(res.r2, Poly(ctx, (1, 1, 1)))
        self.assertEqual(res.r3, Poly(ctx, (1, 0, 0, 1)))
        self.assertEqual(res.q, Poly(ctx, (0, 1, 1)))

    def test_klein_bis_q(self):
        ctx = make_field(4, 0x19)
        alpha = ctx.pow(THETA, 10)
        q = reduce_quartic(klein_poly(ctx), alpha)
        self.assertEqual(resolvents(q).q, Poly(ctx, (1, alpha, 1)))

    def test_depressed_substitution_over_f8(self):
        ctx = make_field(3)
        for b in ctx.elements():
            for c in range(1, 8):
                res = resolvents(QuarticNormal(ctx, b, c, 0))
                self.assertEqual(compose(res.r3, Poly(ctx, (b, 1))), res.depressed)

    def test_d_never_enters(self):
        ctx = make_field(5)
        for d in (0, 1, 0x1F):
            self.assertEqual(resolvents(QuarticNormal(ctx, 0x3, 0x7, d)),
                             resolvents(QuarticNormal(ctx, 0x3, 0x7, 0)))

    def test_not_separable(self):
        ctx = make_field(3)
        with self.assertRaises(SeparabilityError):
            resolvents(QuarticNormal(ctx, 1, 0, 1))
        with self.assertRaises(SeparabilityError):
            r2_reducible(QuarticNormal(ctx, 1, 0, 1))


class TestWilliams(unittest.TestCase):

    def test_exhaustive_small_fields(self):
        for n in range(1, 7):
            ctx = make_field(n)
            for b in ctx.elements():
                for c in range(1, ctx.order):
                    expected = PATTERN_BY_COUNT[brute_cubic_roots(ctx, b, c)]
                    self.assertEqual(cubic_pattern_williams(ctx, b, c), expected, msg=f"n={n} b={b} c={c}")

    def test_b_zero(self):
        ctx = make_field(4, 0x19)
        for c in range(1, 16):
            pattern = cubic_pattern_williams(ctx, 0, c)
            cube_roots = [z for z in ctx.elements() if ctx.pow(z, 3) == ctx.sqr(c)]
            self.assertEqual(pattern == "three_roots", len(cube_roots) == 3)

    def test_klein_bis(self):
        ctx = make_field(4, 0x19)
        alpha = ctx.pow(THETA, 10)
        self.assertEqual(cubic_pattern_williams(ctx, ctx.pow(alpha, 4), ctx.inv(alpha)), "three_roots")

    def test_c_zero(self):
        with self.assertRaises(PreconditionError):
            cubic_pattern_williams(make_field(3), 1, 0)

    def test_trace_frobenius_invariance(self):
        for n in range(1, 7):
            ctx = make_field(n)
            for b in ctx.elements():
                for c in range(1, ctx.order):
                    six = ctx.div(ctx.pow(b, 6), ctx.pow(c, 4))
                    three = ctx.div(ctx.pow(b, 3), ctx.sqr(c))
                    self.assertEqual(ctx.trace(six), ctx.trace(three))


@hyp_settings(max_examples=200, deadline=None)
@given(st.sampled_from([7, 8, 11, 16]), st.data())
def test_williams_random_pairs(n, data):
    ctx = make_field(n)
    b = data.draw(st.integers(0, ctx.order - 1))
    c = data.draw(st.integers(1, ctx.order - 1))
    depressed = Poly(ctx, (ctx.sqr(c), ctx.sqr(b), 0, 1))
    assert cubic_pattern_williams(ctx, b, c) == PATTERN_BY_COUNT[len(roots_in_field(depressed))]


class TestMorse(unittest.TestCase):

    def test_x10_x9_x7_x3(self):
        ctx = make_field(13)
        report = morse_check(coeffs_of(ctx, [1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0]))
        self.assertTrue(report.applicable)
        self.assertEqual(report.nondegeneracy_value, 1)
        self.assertTrue(report.is_morse)

    def test_a3_zero_not_applicable(self):
        ctx = make_field(5)
        report = morse_check(coeffs_of(ctx, [1, 3, 0, 0, 1, 2, 0, 1, 0, 0, 0]))
        self.assertFalse(report.applicable)
        self.assertFalse(report.is_morse)

    def test_corollary_locus_is_degenerate(self):
        ctx = make_field(6)
        for a1 in (1, 3, 0x21):
            for a3 in (1, 5):
                a7 = ctx.pow(a1, 7) ^ ctx.mul(ctx.pow(a1, 4), a3)
                report = morse_check(coeffs_of(ctx, [1, a1, 0, a3, 0, 0, 0, a7, 0, 0, 0]))
                self.assertTrue(report.applicable)
                self.assertEqual(report.nondegeneracy_value, 0)
                self.assertFalse(report.is_morse)

    def test_formula_and_analytic_paths_agree_over_f4(self):
        ctx = make_field(2)
        for a1, a3, a4, a5, a7 in itertools.product(range(4), repeat=5):
            report = morse_check(coeffs_of(ctx, [1, a1, 0, a3, a4, a5, 0, a7, 0, 0, 0]))
            self.assertEqual(report.is_morse, report.applicable and report.nondegeneracy_value != 0)
            if report.applicable:
                self.assertEqual(report.derivative_at_root != 0, report.nondegeneracy_value != 0)
                g = l_alpha(coeffs_of(ctx, [1, a1, 0, a3, a4, a5, 0, a7, 0, 0, 0]).to_poly(), a1).l_poly
                self.assertEqual(g.degree, 3)

    def test_scaling_is_homogeneous(self):
        ctx = make_field(5)
        coeffs = coeffs_of(ctx, [1, 3, 7, 1, 2, 9, 4, 5, 6, 8, 1])
        base = morse_check(coeffs).nondegeneracy_value
        for s in range(1, 32):
            scaled = morse_check(coeffs.scaled(s))
            self.assertEqual(scaled.nondegeneracy_value, ctx.mul(ctx.pow(s, 8), base))
            self.assertEqual(scaled.is_morse, base != 0)


class TestKlein(unittest.TestCase):

    def setUp(self):
        self.ctx = make_field(4, 0x19)

    def test_klein_bis_verdict(self):
        alpha = self.ctx.pow(THETA, 10)
        report = klein_check(klein_poly(self.ctx), alpha)
        self.assertTrue(report.c_nonzero)
        self.assertTrue(report.trace_condition)
        self.assertTrue(report.q_roots_are_cubes)
        self.assertTrue(report.r2_reducible)
        self.assertTrue(report.verdict)
        roots = sorted(r[0] for r in report.q_roots)
        self.assertEqual(roots, sorted([self.ctx.pow(THETA, 6), self.ctx.pow(THETA, 9)]))
        self.assertEqual(len(report.r3_roots), 3)

    def test_c_zero_instance(self):
        report = klein_check(klein_poly(self.ctx, a5=1, a7=1), 1)
        self.assertFalse(report.c_nonzero)
        self.assertFalse(report.verdict)

    def test_sweep_matches_brute_force(self):
        coeffs = klein_poly(self.ctx)
        for alpha in range(1, 16):
            report = klein_check(coeffs, alpha)
            b, c = report.b, report.c
            r3_roots = [x for x in self.ctx.elements()
                        if self.ctx.pow(x, 3) ^ self.ctx.mul(b, self.ctx.sqr(x)) ^ self.ctx.sqr(c) == 0]
            self.assertEqual(report.verdict, len(r3_roots) == 3, msg=f"alpha={alpha:x}")

    def test_trace_condition_implies_r2_reducible(self):
        for n in (5, 6, 8):
            ctx = make_field(n)
            for a5 in (0, 1, 3):
                coeffs = klein_poly(ctx, a5=a5, a4=2)
                for alpha in range(1, min(ctx.order, 64)):
                    report = klein_check(coeffs, alpha)
                    if report.trace_condition:
                        self.assertTrue(report.r2_reducible)
                    if report.c_nonzero:
                        r2 = resolvents(reduce_quartic(coeffs, alpha)).r2
                        has_root = any(evaluate(r2, x) == 0 for x in ctx.elements())
                        self.assertEqual(has_root, report.trace_condition)


if __name__ == '__main__':
    unittest.main()
