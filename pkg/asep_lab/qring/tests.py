import math
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from qring.exceptions import NonIntegralQuotient
from qring.polynomials import ONE, Q, ZERO, LaurentPoly, exact_div, q_power
from qring.utils import (
    evaluate,
    q_binomial,
    q_factorial,
    q_multinomial,
    q_number,
    rogers_szego_product,
    rogers_szego_X,
    rogers_szego_Y,
)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero_polys = polys.filter(bool)


class LaurentPolyTests(SimpleTestCase):
    def test_zero_coefficients_are_not_stored(self):
        poly = LaurentPoly({1: 1, 0: 0, -1: 2})
        self.assertEqual(poly.half_terms(), {2: 1, -2: 2})
        self.assertEqual(Q - Q, ZERO)
        self.assertFalse(Q - Q)

    def test_text_form(self):
        self.assertEqual(str(q_number(2)), '1*q^-1 + 1*q^1')
        self.assertEqual(str(ZERO), '0')
        self.assertEqual(str(q_power(Fraction(-1, 2))), '1*q^(-1/2)')
        self.assertEqual(str(LaurentPoly({0: Fraction(3, 4)})), '3/4*q^0')

    def test_parse_reads_text_form(self):
        self.assertEqual(LaurentPoly.parse('1*q^-1 + 1*q^1'), q_number(2))
        self.assertEqual(LaurentPoly.parse('0'), ZERO)
        self.assertEqual(LaurentPoly.parse('-2*q^(3/2)'), q_power(Fraction(3, 2)) * -2)
        with self.assertRaises(ValueError):
            LaurentPoly.parse('q + 1')

    def test_half_exponents_multiply_to_integer_powers(self):
        root = q_power(Fraction(1, 2))
        self.assertEqual(root * root, Q)
        self.assertEqual(root.inverse() * root, ONE)

    def test_only_monomials_are_invertible(self):
        self.assertEqual((Q * 3).inverse(), q_power(-1) * Fraction(1, 3))
        with self.assertRaises(NonIntegralQuotient):
            q_number(2).inverse()

    def test_substitute_inverse(self):
        poly = LaurentPoly({2: 1, -1: 3})
        self.assertEqual(poly.substitute_inverse(), LaurentPoly({-2: 1, 1: 3}))
        self.assertEqual(q_number(5).substitute_inverse(), q_number(5))

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(polys, nonzero_polys)
    def test_exact_division_inverts_multiplication(self, a, b):
        self.assertEqual(exact_div(a * b, b), a)

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(polys)
    def test_parse_inverts_str(self, a):
        self.assertEqual(LaurentPoly.parse(str(a)), a)


class ExactDivisionTests(SimpleTestCase):
    def test_examples(self):
        numerator = LaurentPoly({2: 1, -2: -1})
        self.assertEqual(exact_div(numerator, Q - q_power(-1)), q_number(2))
        self.assertEqual(exact_div(q_number(3), ONE), q_number(3))
        self.assertEqual(exact_div(q_factorial(4), q_factorial(2)), q_number(3) * q_number(4))

    def test_remainder_raises(self):
        with self.assertRaises(NonIntegralQuotient) as caught:
            exact_div(Q + 1, Q + 2)
        self.assertEqual(caught.exception.divisor, Q + 2)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            exact_div(Q, ZERO)


class QCombinatoricsTests(SimpleTestCase):
    def test_q_number_examples(self):
        self.assertEqual(q_number(0), ZERO)
        self.assertEqual(q_number(2), Q + q_power(-1))
        self.assertEqual(q_number(3), q_power(2) + 1 + q_power(-2))
        self.assertEqual(q_number(-3), -q_number(3))

    def test_q_number_at_one(self):
        for n in range(13):
            self.assertEqual(evaluate(q_number(n), 1), n)

    def test_q_factorial_examples(self):
        self.assertEqual(q_factorial(0), ONE)
        self.assertEqual(q_factorial(2), Q + q_power(-1))
        self.assertEqual(q_factorial(3), (Q + q_power(-1)) * (q_power(2) + 1 + q_power(-2)))

    def test_multinomial_examples(self):
        self.assertEqual(q_multinomial(5, 0, 0), ONE)
        self.assertEqual(q_binomial(2, 1), q_number(2))
        self.assertEqual(q_multinomial(2, 1, 1), q_number(2))
        with self.assertRaises(ValueError):
            q_multinomial(2, 2, 1)

    def test_binomial_symmetry(self):
        for K in range(9):
            for N in range(K + 1):
                self.assertEqual(q_binomial(K, N), q_binomial(K, K - N))

    def test_multinomial_factorizes_through_binomials(self):
        for K in range(9):
            for N in range(K + 1):
                for M in range(K - N + 1):
                    self.assertEqual(q_multinomial(K, N, M), q_binomial(K, N) * q_binomial(K - N, M))

    def test_evaluate(self):
        self.assertEqual(evaluate(Q + q_power(-1), 1), 2)
        self.assertEqual(evaluate(q_number(3), 2), 5.25)
        self.assertEqual(evaluate(ZERO, 3), 0)
        with self.assertRaises(ValueError):
            evaluate(Q, 0)


class RogersSzegoTests(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(rogers_szego_X(2, 0, 1), 4)
        self.assertAlmostEqual(rogers_szego_Y(2, 0, 0, 1), 9)
        self.assertEqual(rogers_szego_Y(2, -math.inf, -math.inf, 2), 1)

    def test_single_species_limit(self):
        self.assertAlmostEqual(rogers_szego_Y(4, 0.4, -math.inf, 2), rogers_szego_X(4, 0.4, 2))

    def test_q_binomial_theorem(self):
        for two_l in (2, 4, 6):
            for alpha in (-1.0, 0.0, 0.7):
                for q0 in (1.2, 2.0):
                    self.assertAlmostEqual(
                        rogers_szego_X(two_l, alpha, q0),
                        rogers_szego_product(two_l, alpha, q0),
                        delta=1e-10 * rogers_szego_product(two_l, alpha, q0),
                    )
