"""Unit tests for the command line front end"""
import unittest
import argparse
import contextlib
import io
import json
import math
import tempfile
import sys
import os

# Add parent directory to path to import modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'numerics'))

from cli import build_parser, main, parse_int
from formatting import parse_csv
from settings import Settings
from table1_service import COLUMNS


class TestParseInt(unittest.TestCase):
    """Test cases for integer flag values"""

    def test_forms(self):
        self.assertEqual(parse_int("1000"), 1000)
        self.assertEqual(parse_int("1e3"), 1000)
        self.assertEqual(parse_int("10^3"), 1000)
        self.assertEqual(parse_int("1e6"), 10 ** 6)

    def test_rejects(self):
        for text in ("2.5", "abc", "10^x", "inf"):
            with self.assertRaises(argparse.ArgumentTypeError, msg=text):
                parse_int(text)


class TestParser(unittest.TestCase):
    """Test cases for argument parsing"""

    def test_defaults_from_settings(self):
        parser = build_parser(Settings(tol=1e-10, precision=5, workers=2))
        args = parser.parse_args(["table1"])
        self.assertEqual(args.tol, 1e-10)
        self.assertEqual(args.precision, 5)
        self.assertEqual(args.workers, 2)
        self.assertIsNone(args.m)

    def test_eval_arguments(self):
        args = build_parser(Settings()).parse_args(["eval", "J", "--n", "1", "--a", "0.5", "--mu", "0.25",
                                                    "--method", "pv"])
        self.assertEqual((args.subject, args.n, args.a, args.mu, args.method), ("J", 1, 0.5, 0.25, "pv"))

    def test_usage_errors(self):
        with contextlib.redirect_stderr(io.StringIO()):
            for argv in (["table3"], ["table1", "--m", "abc"], ["eval", "K"], ["table1", "--format", "xml"]):
                with self.assertRaises(SystemExit) as raised:
                    main(argv)
                self.assertEqual(raised.exception.code, 2, argv)


class TestMain(unittest.TestCase):
    """Test cases for end-to-end command runs"""

    def setUp(self):
        """Set up test fixtures"""
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Clean up after tests"""
        self.directory.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.directory.name, name)

    def test_eval_json(self):
        out = self.path("sigma.json")
        code = main(["eval", "sigma", "--m", "1", "--mu", "0.5", "--format", "json", "--out", out])
        self.assertEqual(code, 0)
        with open(out, encoding="utf-8") as handle:
            document = json.load(handle)
        self.assertEqual(document["command"], "eval")
        self.assertEqual(document["return_code"], 0)
        self.assertAlmostEqual(document["values"]["closed_form"], 1.0 / 3.0, delta=1e-15)

    def test_eval_j_close_to_endpoint(self):
        out = self.path("j.json")
        code = main(["eval", "J", "--n", "0", "--a", "0.99", "--mu", "0.5", "--method", "pv",
                     "--format", "json", "--out", out])
        self.assertEqual(code, 0)
        with open(out, encoding="utf-8") as handle:
            document = json.load(handle)
        self.assertAlmostEqual(document["values"]["pv"], math.pi, delta=1e-9)

    def test_table1_csv(self):
        out = self.path("table1.csv")
        self.assertEqual(main(["table1", "--m", "10^2", "--format", "csv", "--out", out]), 0)
        with open(out, encoding="utf-8", newline="") as handle:
            table = parse_csv(handle.read())
        self.assertEqual(table.columns, COLUMNS)
        self.assertEqual(table.rows[0][0], 100)

    def test_markdown_to_stdout(self):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            code = main(["eval", "profile", "--n", "1", "--x", "0.0", "--precision", "4"])
        self.assertEqual(code, 0)
        self.assertIn("| profile | exact | 6.667(-1) |", stdout.getvalue())

    def test_domain_errors(self):
        with contextlib.redirect_stderr(io.StringIO()) as stderr:
            self.assertEqual(main(["eval", "J", "--n", "0", "--a", "1.5", "--mu", "0.5"]), 2)
            self.assertEqual(main(["table1", "--m", "1"]), 2)
            self.assertEqual(main(["eval", "lambda", "--k", "2", "--precision", "20"]), 2)
        self.assertIn("precision", stderr.getvalue())


if __name__ == '__main__':
    unittest.main()
