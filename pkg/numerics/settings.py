"""
Settings
Environment-driven defaults for the command line tools. An optional .env file
in the working directory is loaded first; command-line flags always win.
"""
import os
import logging
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("ignoring %s=%r, not a number", name, raw)
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r, not an integer", name, raw)
        return default


@dataclass(frozen=True)
class Settings:
    """
    Defaults for tolerances, display precision, concurrency and logging.

    Attributes:
        tol: Quadrature tolerance (TRICOMI_TOL)
        series_tol: Airfoil series tolerance (TRICOMI_SERIES_TOL)
        precision: Significant digits for display (TRICOMI_PRECISION)
        workers: Table cells computed concurrently (TRICOMI_WORKERS)
        log_level: Logging level name (TRICOMI_LOG_LEVEL)
    """
    tol: float = 1e-12
    series_tol: float = 1e-10
    precision: int = 7
    workers: int = 4
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> 'Settings':
        return cls(
            tol=_env_float("TRICOMI_TOL", cls.tol),
            series_tol=_env_float("TRICOMI_SERIES_TOL", cls.series_tol),
            precision=_env_int("TRICOMI_PRECISION", cls.precision),
            workers=max(1, _env_int("TRICOMI_WORKERS", cls.workers)),
            log_level=os.getenv("TRICOMI_LOG_LEVEL", cls.log_level).upper(),
        )
