"""Unit tests for the airfoil integrals"""
import unittest
import math
import sys
import os

from scipy import special

# Add parent directory to path to import modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'numerics'))

from errors import DomainError
from quad import IntegrandSpec, integrate_finite
from series import MAX_TERMS, tail_slope
from airfoil import (CLOSED_FORM, DIRECT_SUM, AirfoilQuery, gamma_profile, infinite_sum, j_accelerated,
                     j_pv_oracle, j_series, plain_term_at, printed_profile, printed_profile_ratio,
                     residual_term_at, rising_over_factorial, sigma, sigma2_as_printed)


class TestAirfoilQuery(unittest.TestCase):
    """Test cases for the query record"""

    def test_derived_x(self):
        self.assertAlmostEqual(AirfoilQuery(0, 0.5, 0.25).X, 1.0 / 3.0, delta=1e-15)
        self.assertEqual(AirfoilQuery(0, -0.5, 0.25).X, AirfoilQuery(0, 0.5, 0.25).X)
        self.assertEqual(AirfoilQuery(0, 0.0, 0.25).X, 0.0)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            AirfoilQuery(0, 1.0, 0.5)
        with self.assertRaises(DomainError):
            AirfoilQuery(0, -1.2, 0.5)
        with self.assertRaises(DomainError):
            AirfoilQuery(0, 0.5, 1.0)
        with self.assertRaises(DomainError):
            AirfoilQuery(-1, 0.5, 0.5)
        with self.assertRaises(DomainError):
            AirfoilQuery(1.5, 0.5, 0.5)


class TestCoefficients(unittest.TestCase):
    """Test cases for (mu)_r / r!"""

    def test_small_and_large_r_agree(self):
        for mu in (-0.5, 0.25, 0.75):
            expected = special.poch(mu, 100) / math.factorial(100)
            self.assertAlmostEqual(rising_over_factorial(mu, 100.0), expected, delta=1e-13 * abs(expected))
            self.assertAlmostEqual(rising_over_factorial(mu, 5), special.poch(mu, 5) / 120.0, delta=1e-15)

    def test_vanishing_for_integer_mu(self):
        self.assertEqual(rising_over_factorial(0.0, 200.5), 0.0)
        self.assertEqual(rising_over_factorial(-2.0, 3), 0.0)


class TestSigma(unittest.TestCase):
    """Test cases for the sigma_m sums"""

    def test_values(self):
        self.assertAlmostEqual(sigma(0, 0.0), 0.0, delta=1e-15)
        self.assertEqual(sigma(0, 0.5), 1.0)
        self.assertAlmostEqual(sigma(1, 0.5), 1.0 / 3.0, delta=1e-15)
        self.assertAlmostEqual(sigma(1, 0.5, DIRECT_SUM), 1.0 / 3.0, delta=1e-9)
        self.assertEqual(sigma(0, 0.0, DIRECT_SUM), 0.0)

    def test_terminating_sums(self):
        """mu = -1 keeps only the r = 1 term"""
        self.assertAlmostEqual(sigma(0, -1.0), -1.0, delta=1e-14)
        self.assertAlmostEqual(sigma(1, -1.0), -0.5, delta=1e-14)
        self.assertAlmostEqual(sigma(2, -1.0), -1.0 / 6.0, delta=1e-14)
        self.assertAlmostEqual(sigma(2, -1.0, DIRECT_SUM), -1.0 / 6.0, delta=1e-15)

    def test_closed_form_matches_direct_sum(self):
        for mu in (-0.5, 0.25, 0.75):
            for m in (0, 1, 2):
                closed = sigma(m, mu, CLOSED_FORM)
                direct = sigma(m, mu, DIRECT_SUM)
                self.assertAlmostEqual(closed, direct, delta=1e-9, msg=f"sigma_{m}({mu})")

    def test_printed_sigma2(self):
        """The printed rational part of sigma_2 is off by mu/(3(1-mu)(2-mu))"""
        self.assertAlmostEqual(sigma2_as_printed(-1.0), -2.0 / 9.0, delta=1e-14)
        for mu in (-0.5, 0.25, 0.75):
            gap = sigma2_as_printed(mu) - sigma(2, mu)
            self.assertAlmostEqual(gap, mu / (3.0 * (1.0 - mu) * (2.0 - mu)), delta=1e-14)
        self.assertAlmostEqual(sigma2_as_printed(0.0), sigma(2, 0.0), delta=1e-15)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            sigma(3, 0.5)
        with self.assertRaises(DomainError):
            sigma(0, 1.0)
        with self.assertRaises(DomainError):
            sigma(0, 0.5, "guess")
        with self.assertRaises(DomainError):
            sigma2_as_printed(1.0)


class TestJSeries(unittest.TestCase):
    """Test cases for the three routes to J_n(a; mu)"""

    def test_elliptic_case(self):
        """J_0(a; 1/2) = pi for every a"""
        for a in (0.5, 0.7):
            q = AirfoilQuery(0, a, 0.5)
            self.assertAlmostEqual(j_series(q), math.pi, delta=1e-9)
            self.assertAlmostEqual(j_accelerated(q), math.pi, delta=1e-10)
            self.assertAlmostEqual(j_pv_oracle(q).value, math.pi, delta=1e-9)

    def test_degenerate_integrand(self):
        self.assertAlmostEqual(j_series(AirfoilQuery(0, 0.0, 0.0)), 2.0, delta=1e-14)

    def test_polynomial_case(self):
        """mu = 0: x^3/(x - a) splits into a quadratic plus a^3/(x - a)"""
        q = AirfoilQuery(1, 0.3, 0.0)
        expected = 2.0 / 3.0 + 0.18 + 0.027 * math.log(7.0 / 13.0)
        self.assertAlmostEqual(j_series(q), expected, delta=1e-13)
        self.assertAlmostEqual(j_accelerated(q), expected, delta=1e-13)
        self.assertAlmostEqual(j_pv_oracle(q).value, expected, delta=1e-10)

    def test_zero_station(self):
        n, mu = 2, 0.25
        q = AirfoilQuery(n, 0.0, mu)
        expected = special.gamma(n + 0.5) * special.gamma(1.0 - mu) / special.gamma(n + 1.5 - mu)
        self.assertAlmostEqual(j_series(q), expected, delta=1e-13)
        self.assertAlmostEqual(j_pv_oracle(q).value, expected, delta=1e-10)

    def test_series_matches_quadrature(self):
        q = AirfoilQuery(1, 0.3, 0.25)
        self.assertAlmostEqual(j_series(q), j_pv_oracle(q).value, delta=1e-8)

    def test_triple_agreement(self):
        for n in (0, 1, 2):
            for mu in (-0.5, 0.0, 0.25, 0.5, 0.75):
                for a in (0.1, 0.3, 0.5, 0.7, 0.9):
                    q = AirfoilQuery(n, a, mu)
                    plain = j_series(q)
                    scale = max(1.0, abs(plain))
                    self.assertLessEqual(abs(plain - j_pv_oracle(q).value), 1e-8 * scale, q)
                    self.assertLessEqual(abs(j_accelerated(q) - plain), 1e-9 * scale, q)

    def test_evenness_in_a(self):
        for q in (AirfoilQuery(2, 0.4, 0.5), AirfoilQuery(1, 0.85, -0.5)):
            mirrored = AirfoilQuery(q.n, -q.a, q.mu)
            self.assertEqual(j_series(q), j_series(mirrored))
            self.assertEqual(j_accelerated(q), j_accelerated(mirrored))
        q = AirfoilQuery(2, 0.4, 0.5)
        self.assertAlmostEqual(j_pv_oracle(q).value, j_pv_oracle(AirfoilQuery(2, -0.4, 0.5)).value, delta=1e-9)

    def test_near_endpoint_exponent(self):
        """mu = 0.95 strengthens the endpoint singularity; the routes still agree"""
        for a in (0.5, 0.9):
            q = AirfoilQuery(1, a, 0.95)
            plain = j_series(q)
            self.assertAlmostEqual(j_accelerated(q), plain, delta=1e-6 * max(1.0, abs(plain)))
            self.assertAlmostEqual(j_pv_oracle(q).value, plain, delta=1e-6 * max(1.0, abs(plain)))

    def test_pole_next_to_endpoint(self):
        """a = 0.99 leaves a short right piece whose node distances underflow"""
        for a in (0.99, -0.99):
            q = AirfoilQuery(0, a, 0.5)
            result = j_pv_oracle(q)
            self.assertTrue(result.converged)
            self.assertAlmostEqual(result.value, math.pi, delta=1e-9)
            self.assertAlmostEqual(j_series(q), math.pi, delta=1e-8)


class TestAcceleration(unittest.TestCase):
    """Test cases for the tail behaviour of the two infinite sums"""

    def test_truncation_index_gain(self):
        q = AirfoilQuery(0, 0.6, 0.25)
        plain = infinite_sum(q, 1e-8)
        accelerated = infinite_sum(q, 1e-8, accelerated=True)
        self.assertEqual(plain.truncation_index, MAX_TERMS)
        self.assertTrue(plain.tail_integrated)
        self.assertLessEqual(5 * accelerated.truncation_index, plain.truncation_index)
        self.assertLess(accelerated.truncation_index, 200)

    def test_tail_exponents(self):
        mu = 0.25
        q = AirfoilQuery(0, 0.5, mu)
        r_values = [200, 400, 800, 1600, 3200]
        plain = tail_slope(lambda r: plain_term_at(q, r), r_values)
        residual = tail_slope(lambda r: residual_term_at(q, r), r_values)
        self.assertLessEqual(abs(plain - (mu - 2.0)), 0.3)
        self.assertLessEqual(abs(residual - (mu - 5.0)), 0.3)

    def test_terms_at_real_index(self):
        """Term functions interpolate the summed terms"""
        q = AirfoilQuery(0, 0.7, 0.25)
        left, right = plain_term_at(q, 150.0), plain_term_at(q, 151.0)
        middle = plain_term_at(q, 150.5)
        self.assertLess(min(left, right), middle)
        self.assertLess(middle, max(left, right))


class TestProfiles(unittest.TestCase):
    """Test cases for the circulation profiles"""

    def test_closed_forms(self):
        for x in (-0.9, -0.3, 0.0, 0.4, 0.99):
            root = math.sqrt(1.0 - x * x)
            self.assertAlmostEqual(gamma_profile(0, x), root, delta=1e-15)
            self.assertAlmostEqual(gamma_profile(1, x), (2.0 + x * x) * root / 3.0, delta=1e-15)
            self.assertAlmostEqual(gamma_profile(2, x), (8.0 + 4.0 * x * x + 3.0 * x ** 4) * root / 15.0,
                                   delta=1e-15)
        self.assertAlmostEqual(gamma_profile(2, 0.0), 8.0 / 15.0, delta=1e-15)

    def test_endpoints(self):
        for n in range(4):
            self.assertEqual(gamma_profile(n, 1.0), 0.0)
            self.assertEqual(gamma_profile(n, -1.0), 0.0)

    def test_against_quadrature(self):
        x = 0.2

        def integrand(t, d_lo, d_hi):
            return t ** 7 / math.sqrt(d_hi * (1.0 + t))

        spec = IntegrandSpec.finite(lambda t: integrand(t, t - x, 1.0 - t), x, 1.0, endpoint_integrand=integrand)
        self.assertAlmostEqual(gamma_profile(3, x), integrate_finite(spec).value, delta=1e-12)

    def test_printed_ratio(self):
        self.assertAlmostEqual(printed_profile_ratio(0, 0.3), 1.0, delta=1e-15)
        self.assertAlmostEqual(printed_profile_ratio(1, 0.3), 1.5, delta=1e-14)
        self.assertAlmostEqual(printed_profile_ratio(2, 0.5), 1.0, delta=1e-14)
        self.assertAlmostEqual(printed_profile(1, 0.0), 1.0, delta=1e-15)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            gamma_profile(0, 1.5)
        with self.assertRaises(DomainError):
            gamma_profile(-1, 0.0)
        with self.assertRaises(DomainError):
            printed_profile(3, 0.0)


if __name__ == '__main__':
    unittest.main()
