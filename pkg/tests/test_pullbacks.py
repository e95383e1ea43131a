#!/usr/bin/env python3
"""Test suite for hyperelliptic and flag pullbacks and the F-divisor inequalities."""

import unittest
from unittest.mock import patch
from fractions import Fraction

from app.config import config
from app.errors import ContractViolation
from app.divisors.classes import fcurves
from app.divisors.cb import cb_divisor_class, closed_form_class
from app.pullbacks.maps import (
    FLAG, HYPERELLIPTIC, GDivisor, build_script_D, default_script_parameters, flag_pullback, h_pullback,
    hodge_class, hyperelliptic_scalar, satake_identity_holds, twelve_lambda_minus_delta0,
)
from app.pullbacks.flag import (
    FLAG_TAGS, condition5_value, f_divisor_check, flag_bound_b, flag_divisor, minimal_flag_parameters, search_d,
    verify_flag_program,
)


class TestGDivisor(unittest.TestCase):
    """Divisors a*lambda - sum b_i delta_i."""

    def test_index_ranges(self):
        """Test the index range of each context."""
        self.assertEqual(GDivisor(7, 1, {}, HYPERELLIPTIC).max_index, 3)
        self.assertEqual(GDivisor(8, 1, {}, FLAG).max_index, 4)
        self.assertEqual(GDivisor(8, 1, {}, FLAG).g, 3)
        with self.assertRaises(ContractViolation):
            GDivisor(3, 1, {2: 1}, HYPERELLIPTIC)
        with self.assertRaises(ContractViolation):
            GDivisor(7, 1, {}, FLAG)
        with self.assertRaises(ContractViolation):
            GDivisor(8, 1, {}, "elliptic")

    def test_folding_and_arithmetic(self):
        D = GDivisor(8, 2, {0: 1, 3: 5}, FLAG)
        self.assertEqual(D.folded(5), 5)
        self.assertEqual(D.folded(8), 1)
        self.assertEqual((D + D).a, 4)
        self.assertEqual(D.scale(Fraction(1, 2)).coeff(3), Fraction(5, 2))
        with self.assertRaises(ContractViolation):
            D + GDivisor(10, 1, {}, FLAG)


class TestHyperellipticPullback(unittest.TestCase):
    """Pullbacks to M_0,2g+2."""

    def test_satake_identity(self):
        """2 h*(lambda) is the level one class."""
        print("\n🔗 Testing 2 h*(lambda) = D_1...")

        for g in range(2, 11):
            self.assertTrue(satake_identity_holds(g), g)

        print("   ✅ Identity holds for g <= 10")

    def test_level_two_scalar(self):
        """D_2 = 2^(g-3) h*(12 lambda - delta_0)."""
        print("\n📐 Testing hyperelliptic scalar...")

        for g in range(2, 11):
            self.assertEqual(hyperelliptic_scalar(g), Fraction(2) ** (g - 3), g)

        print("   ✅ Scalar is 2^(g-3)")

    def test_explicit_pullback(self):
        """h*(12 lambda - delta_0) at g=3 is the level two class of M_0,8."""
        divisor = h_pullback(twelve_lambda_minus_delta0(3))
        self.assertEqual(divisor.n, 8)
        self.assertEqual(divisor.coeffs, (Fraction(4, 7), Fraction(12, 7), Fraction(10, 7)))
        self.assertEqual(divisor, cb_divisor_class(2, 8))
        self.assertEqual(h_pullback(hodge_class(3)).scale(2), closed_form_class("1", 8))

    def test_context_mismatch(self):
        with self.assertRaises(ContractViolation):
            h_pullback(GDivisor(8, 1, {}, FLAG))
        with self.assertRaises(ContractViolation):
            flag_pullback(hodge_class(3))


class TestFDivisorChecks(unittest.TestCase):
    """The five F-divisor inequalities."""

    def test_script_D(self):
        """script_D passes every condition and pulls back to zero."""
        print("\n🧪 Testing script_D...")

        for g in range(2, 8):
            alpha, beta = default_script_parameters(g)
            script = build_script_D(alpha, beta, g)
            self.assertTrue(flag_pullback(script).is_zero(), g)
            report = f_divisor_check(script)
            self.assertTrue(report.ok, (g, report.failed()))

        self.assertEqual(default_script_parameters(3), (Fraction(96), Fraction(17, 2)))
        print("   ✅ script_D is an F-divisor with zero pullback")

    def test_script_D_bounds(self):
        with self.assertRaises(ContractViolation):
            build_script_D(90, Fraction(17, 2), 3)
        with self.assertRaises(ContractViolation):
            build_script_D(200, 8, 3)

    def test_condition5_is_pullback_degree(self):
        """Condition (5) evaluated on a partition equals f*D . F."""
        g = 3
        a, b = minimal_flag_parameters("g", g)
        D = flag_divisor("g", g, a, b)
        pulled = flag_pullback(D)
        for curve in fcurves(2 * (g + 1)):
            self.assertEqual(condition5_value(D, curve.parts), pulled.dot(curve), curve.label())

    def test_failing_condition(self):
        """Negative coefficients fail condition (2) with a witness."""
        report = f_divisor_check(GDivisor(8, 12, {0: 1, 2: -1}, FLAG))
        self.assertFalse(report.ok)
        self.assertIn(2, report.failed())
        self.assertEqual(report.witnesses[2], (2,))

    def test_hyperelliptic_context_rejected(self):
        with self.assertRaises(ContractViolation):
            f_divisor_check(hodge_class(4))


class TestFlagProgram(unittest.TestCase):
    """Flag pullbacks of the level 1, 2, g-1 and g divisors."""

    EXACT_SCALES = {
        "1": lambda g: Fraction(1, 4),
        "2": lambda g: Fraction(3 * 2 ** (g - 1), 8),
        "g-1": lambda g: Fraction(g - 1),
        "g": lambda g: Fraction(1, 2),
    }

    def test_program_passes(self):
        """Every tag yields a positive multiple and an F-divisor."""
        print("\n🏁 Testing flag program...")

        for g in range(3, 7):
            for tag in FLAG_TAGS:
                report = verify_flag_program(tag, g)
                self.assertTrue(report.ok, (tag, g, report.checks.failed() if report.checks else None))
                self.assertEqual(report.scale, self.EXACT_SCALES[tag](g), (tag, g))
                self.assertEqual(report.d, 0)
                self.assertEqual(report.d_searched, tag in ("g-1", "g"))

        print("   ✅ All tags pass for 3 <= g <= 6")

    def test_displayed_constants(self):
        report = verify_flag_program("g-1", 5)
        self.assertEqual(report.displayed_c, Fraction(1, 4))
        self.assertEqual(verify_flag_program("2", 4).displayed_c, Fraction(4, 3))

    def test_lower_b_bound_fails_condition3(self):
        """At g=3 the tag g-1 bound b = 5/7 breaks condition (3) on delta_4."""
        print("\n⚠️  Testing tag g-1 at g=3 with b = 5/7...")

        self.assertEqual(flag_bound_b("g-1", 3), Fraction(5, 7))
        report = verify_flag_program("g-1", 3, a=Fraction(53, 7), b=Fraction(5, 7), d=0)
        self.assertTrue(report.pullback_matches)
        self.assertFalse(report.checks.passed[3])
        self.assertEqual(report.checks.witnesses[3], (4,))
        self.assertFalse(report.ok)
        self.assertEqual(minimal_flag_parameters("g-1", 3), (Fraction(59, 7), Fraction(11, 14)))

        print("   ✅ Condition (3) fails at index 4; b = 11/14 repairs it")

    def test_bounds_enforced(self):
        with self.assertRaises(ContractViolation):
            flag_divisor("1", 3, 100, Fraction(1, 4))
        with self.assertRaises(ContractViolation):
            flag_divisor("2", 3, 10, 3)
        with self.assertRaises(ContractViolation):
            verify_flag_program("g", 4, d=-1)
        with self.assertRaises(ContractViolation):
            verify_flag_program("3", 4)

    def test_explicit_d(self):
        """A positive d leaves the pullback unchanged."""
        base = verify_flag_program("g", 4)
        shifted = verify_flag_program("g", 4, d=Fraction(3, 2))
        self.assertEqual(shifted.d, Fraction(3, 2))
        self.assertFalse(shifted.d_searched)
        self.assertEqual(shifted.scale, base.scale)

    def test_search_d_walks_the_grid(self):
        """A base failing condition (4) at d=0 needs d = 3/2 of script_D."""
        print("\n🔎 Testing the d-search...")

        script = build_script_D(*default_script_parameters(3), 3)
        base = GDivisor(8, Fraction(12), {2: 3}, FLAG)
        self.assertFalse(f_divisor_check(base).passed[4])
        self.assertEqual(f_divisor_check(base).witnesses[4], (1, 1))

        condition4 = lambda D: f_divisor_check(D).passed[4]
        self.assertEqual(search_d(base, script, 3, condition4), Fraction(3, 2))
        self.assertFalse(condition4(base + script.scale(1)))

        print("   ✅ d = 3/2")

    def test_search_d_gives_up_at_cap(self):
        """The grid stops at factor*(g+1)^2 and reports None."""
        script = build_script_D(*default_script_parameters(3), 3)
        # delta_0 coefficient no reachable d can lift to zero
        base = GDivisor(8, Fraction(12), {0: -10 ** 6}, FLAG)
        calls = []

        def condition2(D):
            calls.append(D)
            return f_divisor_check(D).passed[2]

        with patch.object(config, 'd_grid_cap_factor', 1):
            self.assertIsNone(search_d(base, script, 3, condition2))
        self.assertEqual(len(calls), 2 * 16 + 1)
        self.assertEqual(calls[-1].coeff(0), -10 ** 6 + 16 * script.coeff(0))


if __name__ == "__main__":
    unittest.main(verbosity=2)
