"""Unit tests for the computation runner"""
import unittest
import asyncio
import sys
import os

# Add parent directory to path to import modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'numerics'))

from command_response import CommandResponse, DOMAIN_ERROR, FAILED, NOT_CONVERGED, OK
from errors import ConvergenceError, DomainError
from runner import gather_cells, return_code_for, run_computation


def fail_with(error):
    def cell():
        raise error
    return cell


class TestReturnCodes(unittest.TestCase):
    """Test cases for the exception to return code mapping"""

    def test_mapping(self):
        self.assertEqual(return_code_for(DomainError("m")), DOMAIN_ERROR)
        self.assertEqual(return_code_for(ConvergenceError("stalled", 1.0, 1e-3)), NOT_CONVERGED)
        self.assertEqual(return_code_for(ZeroDivisionError()), FAILED)


class TestRunner(unittest.TestCase):
    """Test cases for running computations off the event loop"""

    def setUp(self):
        """Set up test fixtures"""
        self.loop = asyncio.new_event_loop()
        asyncio.set_event_loop(self.loop)

    def tearDown(self):
        """Clean up after tests"""
        self.loop.close()

    def test_result(self):
        response = CommandResponse(command="eval", subject="I")
        value = self.loop.run_until_complete(run_computation(pow, response, 2, 10))
        self.assertEqual(value, 1024)
        self.assertEqual(response.return_code, OK)

    def test_error_recorded(self):
        response = CommandResponse(command="eval", subject="J")
        value = self.loop.run_until_complete(
            run_computation(fail_with(ConvergenceError("series stalled")), response, label="J [series]"))
        self.assertIsNone(value)
        self.assertEqual(response.return_code, NOT_CONVERGED)
        self.assertEqual(response.error, "J [series]: series stalled")

    def test_gather_keeps_order(self):
        cells = [lambda i=i: i * i for i in range(6)] + [fail_with(DomainError("bad"))]
        results = self.loop.run_until_complete(gather_cells(cells, workers=2))
        self.assertEqual(results[:6], [0, 1, 4, 9, 16, 25])
        self.assertIsInstance(results[6], DomainError)

    def test_gather_with_zero_workers(self):
        results = self.loop.run_until_complete(gather_cells([lambda: 1.0], workers=0))
        self.assertEqual(results, [1.0])


if __name__ == '__main__':
    unittest.main()
