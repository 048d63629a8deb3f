"""Unit tests for series summation"""
import unittest
import math
import itertools
import sys
import os

from scipy import special

# Add parent directory to path to import modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'numerics'))

from errors import DomainError
from series import (MAX_TERMS, SWITCH_INDEX, gregory_tail, sum_algebraic_series, tail_bound,
                    tail_slope, truncation_index)


def power_terms(p, start=1):
    return (r ** -p for r in itertools.count(start))


class TestTailBound(unittest.TestCase):
    """Test cases for the geometric tail bound"""

    def test_values(self):
        self.assertEqual(tail_bound(0.5, 1.0), 1.0)
        self.assertEqual(tail_bound(-0.25, -0.5), 0.5)
        self.assertEqual(tail_bound(0.0, 0.0), 0.0)
        self.assertEqual(tail_bound(0.0, 1.0), 0.0)

    def test_no_bound(self):
        self.assertEqual(tail_bound(1.0, None), math.inf)
        self.assertEqual(tail_bound(1.0, 0.5), math.inf)
        self.assertEqual(tail_bound(1.0, -1.0), math.inf)


class TestTruncationIndex(unittest.TestCase):
    """Test cases for the truncation index search"""

    def test_inverse_squares(self):
        # bound of r^-2 is 1/(2r - 1)
        self.assertEqual(truncation_index(lambda r: r ** -2.0, 1e-4), 5001)

    def test_cap(self):
        self.assertEqual(truncation_index(lambda r: r ** -1.05, 1e-10), MAX_TERMS)
        self.assertEqual(truncation_index(lambda r: r ** -1.05, 1e-10, cap=1000), 1000)

    def test_fast_decay(self):
        self.assertEqual(truncation_index(lambda r: 2.0 ** -r, 0.3), 3)


class TestSumAlgebraicSeries(unittest.TestCase):
    """Test cases for the series driver"""

    def test_tail_bound_rule(self):
        result = sum_algebraic_series(power_terms(2), 2.0, 1e-4)
        self.assertTrue(result.converged)
        self.assertFalse(result.tail_integrated)
        self.assertEqual(result.truncation_index, 5001)
        self.assertEqual(result.n_terms, 5001)
        self.assertAlmostEqual(result.value, math.pi ** 2 / 6.0, delta=1e-3)

    def test_zeta_two_with_tail_integral(self):
        result = sum_algebraic_series(power_terms(2), 2.0, 1e-12, term_fn=lambda r: r ** -2.0)
        self.assertTrue(result.converged)
        self.assertTrue(result.tail_integrated)
        self.assertEqual(result.n_terms, SWITCH_INDEX - 1)
        self.assertGreater(result.tail_evals, 0)
        self.assertAlmostEqual(result.value, math.pi ** 2 / 6.0, delta=1e-12)

    def test_slow_decay(self):
        """zeta(1.1) is out of reach for the tail bound alone"""
        result = sum_algebraic_series(power_terms(1.1), 1.1, 1e-10, term_fn=lambda r: r ** -1.1)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.value, float(special.zeta(1.1)), delta=1e-9)
        self.assertEqual(result.truncation_index, MAX_TERMS)

    def test_offset_start(self):
        result = sum_algebraic_series(power_terms(3, start=4), 3.0, 1e-13, term_fn=lambda r: r ** -3.0, start=4)
        self.assertAlmostEqual(result.value, float(special.zeta(3.0)) - 1.0 - 1.0 / 8.0 - 1.0 / 27.0, delta=1e-12)

    def test_vanishing_terms(self):
        result = sum_algebraic_series(iter([1.0, 0.0, 0.0, 0.0]), 2.0, 1e-12)
        self.assertTrue(result.converged)
        self.assertEqual(result.value, 1.0)
        self.assertEqual(result.n_terms, 2)

    def test_cap_without_tail_integral(self):
        result = sum_algebraic_series(power_terms(1.5), 1.5, 1e-12, max_terms=100)
        self.assertFalse(result.converged)
        self.assertEqual(result.n_terms, 100)
        self.assertEqual(result.truncation_index, 100)

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            sum_algebraic_series(power_terms(1), 1.0, 1e-10)
        with self.assertRaises(DomainError):
            sum_algebraic_series(power_terms(2), 2.0, 0.0)


class TestGregoryTail(unittest.TestCase):
    """Test cases for the integral-plus-corrections tail"""

    def test_cubic_tail(self):
        value, err, evals = gregory_tail(lambda r: r ** -3.0, 100, 1e-12)
        expected = float(special.zeta(3.0, 100.0))
        self.assertAlmostEqual(value, expected, delta=1e-11)
        self.assertLess(err, 1e-12)
        self.assertGreater(evals, 7)


class TestTailSlope(unittest.TestCase):
    """Test cases for the log-log slope fit"""

    def test_power_law(self):
        self.assertAlmostEqual(tail_slope(lambda r: 3.0 * r ** -2.5, [100, 200, 400, 800]), -2.5, delta=1e-9)


if __name__ == '__main__':
    unittest.main()
