"""
Computation Runner
Runs numerical work off the event loop and maps library exceptions onto
command return codes.
"""
import asyncio
import logging
from typing import Any, Callable, List, Optional, Sequence

from errors import DomainError, ConvergenceError
from command_response import CommandResponse, FAILED, DOMAIN_ERROR, NOT_CONVERGED

logger = logging.getLogger(__name__)


def return_code_for(error: BaseException) -> int:
    if isinstance(error, DomainError):
        return DOMAIN_ERROR
    if isinstance(error, ConvergenceError):
        return NOT_CONVERGED
    return FAILED


def record_failure(response: CommandResponse, error: BaseException, label: str = ""):
    """Add error to the response with the return code of its kind."""
    code = return_code_for(error)
    if code == FAILED:
        logger.error("%s failed", label or response.command, exc_info=error)
    message = f"{label}: {error}" if label else str(error)
    response.add_error(message, return_code=code)


async def run_computation(func: Callable[..., Any], response: CommandResponse, *args,
                          label: str = "", **kwargs) -> Optional[Any]:
    """
    Run func(*args, **kwargs) in a worker thread.

    Args:
        func: Blocking computation
        response: CommandResponse that receives any error
        label: Prefix of the error message

    Returns:
        The result, or None after an error was recorded on the response
    """
    try:
        return await asyncio.to_thread(func, *args, **kwargs)
    except Exception as e:
        record_failure(response, e, label)
        return None


async def gather_cells(cells: Sequence[Callable[[], Any]], workers: int = 4) -> List[Any]:
    """
    Compute independent table cells with at most `workers` running at once.

    Results come back in the order of `cells`; a failing cell yields its
    exception in place of a value.
    """
    semaphore = asyncio.Semaphore(max(1, int(workers)))

    async def run(cell: Callable[[], Any]) -> Any:
        async with semaphore:
            return await asyncio.to_thread(cell)

    return await asyncio.gather(*(run(cell) for cell in cells), return_exceptions=True)
