import math
import logging
from typing import Iterable, List, Optional

from command_response import CommandResponse, NOT_CONVERGED, DOMAIN_ERROR
from formatting import OutputSpec, Table, render
from quad import DEFAULT_TOL, QuadratureResult
from runner import gather_cells, record_failure
from tricomi import MAX_ORDER, asymptotic_I, oracle_I_direct

logger = logging.getLogger(__name__)

# table1: I_{n,m} for n = 1, 2 by quadrature next to the k = 3 expansion.
# Columns: m, I1_oracle, I1_asym, I2_oracle, I2_asym

DEFAULT_M_LIST = (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)
COLUMNS = ["m", "I1_oracle", "I1_asym", "I2_oracle", "I2_asym"]
TITLES = ["m", "I_{1,m} oracle", "I_{1,m} expansion", "I_{2,m} oracle", "I_{2,m} expansion"]


def get_service_info() -> dict:
    return {
        "name": "table1",
        "command": "table1",
        "description": "I_{1,m} and I_{2,m} by quadrature and by the k=3 large-m expansion",
        "parameters": {
            "m": "Values of m, integers >= 2 (default: 1e2 1e3 1e4 1e5 1e6)",
            "tol": "Quadrature tolerance (default: 1e-12)",
            "workers": "Cells computed concurrently (default: 4)"
        }
    }


def _bad_m(m_list: Iterable) -> List:
    return [m for m in m_list if isinstance(m, bool) or not isinstance(m, (int, float))
            or not float(m).is_integer() or m < 2]


async def cmd_table1(m_list: Optional[Iterable[int]] = None, output: Optional[OutputSpec] = None,
                     tol: float = DEFAULT_TOL, workers: int = 4) -> CommandResponse:
    """
    Build the I_{n,m} comparison table.

    Args:
        m_list: Values of m (default 10^2 .. 10^6 by decades)
        output: Rendering options (default markdown, 7 digits)
        tol: Quadrature tolerance of the oracle
        workers: Table cells computed concurrently

    Returns:
        CommandResponse with the rendered table; return code 2 for invalid m,
        3 with the table still rendered when an oracle did not converge
    """
    m_list = list(DEFAULT_M_LIST if m_list is None else m_list)
    output = output or OutputSpec()

    response = CommandResponse(
        command="table1",
        subject="I_{n,m}",
        arguments={
            "m_list": m_list,
            "format": output.format,
            "precision": output.precision,
            "tol": tol,
            "workers": workers
        }
    )

    if not m_list:
        response.add_error("m_list must not be empty", return_code=DOMAIN_ERROR)
        return response

    bad = _bad_m(m_list)
    if bad:
        response.add_error(f"m must be an integer >= 2, got {bad[0]!r}", return_code=DOMAIN_ERROR)
        return response

    if not tol > 0:
        response.add_error("tol must be positive", return_code=DOMAIN_ERROR)
        return response

    m_list = [int(m) for m in m_list]
    keys = [(m, n) for m in m_list for n in (1, 2)]
    oracle_cells = [lambda m=m, n=n: oracle_I_direct(n, m, tol) for m, n in keys]
    asym_cells = [lambda m=m, n=n: asymptotic_I(n, m, MAX_ORDER) for m, n in keys]
    results = await gather_cells(oracle_cells + asym_cells, workers)
    oracles, expansions = results[:len(keys)], results[len(keys):]

    table = Table(COLUMNS, titles=TITLES)
    rows = []
    for i, m in enumerate(m_list):
        row = [m]
        for j, n in enumerate((1, 2)):
            index = 2 * i + j
            oracle = oracles[index]
            if isinstance(oracle, BaseException):
                record_failure(response, oracle, f"oracle I_{{{n},{m}}}")
                oracle_value = math.nan
            else:
                oracle_value = _checked_value(oracle, response, n, m)
            asym = expansions[index]
            if isinstance(asym, BaseException):
                record_failure(response, asym, f"expansion I_{{{n},{m}}}")
                asym = math.nan
            row += [oracle_value, asym]
        table.rows.append(row)
        rows.append(dict(zip(COLUMNS, row)))

    response.values = {"rows": rows}
    response.rendered = render(table, output)
    response.end_process_timer()
    return response


def _checked_value(result: QuadratureResult, response: CommandResponse, n: int, m: int) -> float:
    if not result.converged:
        logger.warning("oracle I_{%d,%d} stopped with err %.3g", n, m, result.err_estimate)
        response.add_error(f"oracle I_{{{n},{m}}} did not converge (err {result.err_estimate:.3g})",
                           return_code=NOT_CONVERGED)
    return result.value
