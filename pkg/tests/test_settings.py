"""Unit tests for environment settings"""
import unittest
from unittest import mock
import sys
import os

# Add parent directory to path to import modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'numerics'))

from settings import Settings

_KEYS = ("TRICOMI_TOL", "TRICOMI_SERIES_TOL", "TRICOMI_PRECISION", "TRICOMI_WORKERS", "TRICOMI_LOG_LEVEL")


class TestSettings(unittest.TestCase):
    """Test cases for Settings.from_env"""

    def clean_env(self, **values):
        env = {k: v for k, v in os.environ.items() if k not in _KEYS}
        env.update(values)
        return mock.patch.dict(os.environ, env, clear=True)

    def test_defaults(self):
        with self.clean_env():
            self.assertEqual(Settings.from_env(), Settings())

    def test_overrides(self):
        with self.clean_env(TRICOMI_TOL="1e-9", TRICOMI_PRECISION="10", TRICOMI_WORKERS="8",
                            TRICOMI_LOG_LEVEL="debug"):
            settings = Settings.from_env()
        self.assertEqual(settings.tol, 1e-9)
        self.assertEqual(settings.precision, 10)
        self.assertEqual(settings.workers, 8)
        self.assertEqual(settings.log_level, "DEBUG")

    def test_bad_values_fall_back(self):
        with self.clean_env(TRICOMI_SERIES_TOL="tiny", TRICOMI_WORKERS="0", TRICOMI_PRECISION=""):
            with self.assertLogs("settings", level="WARNING"):
                settings = Settings.from_env()
        self.assertEqual(settings.series_tol, 1e-10)
        self.assertEqual(settings.workers, 1)
        self.assertEqual(settings.precision, 7)


if __name__ == '__main__':
    unittest.main()
