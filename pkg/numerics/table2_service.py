import math
import logging
from typing import Dict, Iterable, List, Optional

from command_response import CommandResponse, NOT_CONVERGED, DOMAIN_ERROR
from formatting import CSV, OutputSpec, Table, format_mantissa, render
from quad import DEFAULT_TOL
from runner import gather_cells, record_failure, run_computation
from tricomi import (MAX_ORDER, MOMENT_BASED, PAPER_CLOSED_FORM, ErrorTable, error_table,
                     oracle_I_direct, published_table2)

logger = logging.getLogger(__name__)

# table2: relative error of the n=1 expansion truncated at k, one column per m.
# The k=3 row is also computed with the printed C_1 coefficient and reported
# in a footnote together with the variant closer to the published row.

DEFAULT_M_LIST = (10 ** 4, 10 ** 5, 10 ** 6)
DEFAULT_K_LIST = (0, 1, 2, 3)
LONG_COLUMNS = ["k", "m", "variant", "rel_error"]


def get_service_info() -> dict:
    return {
        "name": "table2",
        "command": "table2",
        "description": "Relative error of the n=1 expansion against quadrature, per truncation k and m",
        "parameters": {
            "m": "Values of m, integers >= 2 (default: 1e4 1e5 1e6)",
            "k": "Truncation indices 0..3 (default: 0 1 2 3)",
            "tol": "Quadrature tolerance (default: 1e-12)",
            "workers": "Oracle columns computed concurrently (default: 4)"
        }
    }


def closer_variant(moment_row: Dict[int, float], printed_row: Dict[int, float],
                   published_row: Dict[int, float]) -> Optional[str]:
    """
    The coefficient variant whose k=3 errors lie closer to the published ones,
    measured by the summed |log(error/published)| over the shared m.
    """
    shared = [m for m in published_row if m in moment_row and m in printed_row]
    if not shared:
        return None

    def distance(row: Dict[int, float]) -> float:
        return sum(abs(math.log(row[m] / published_row[m])) for m in shared)

    return MOMENT_BASED if distance(moment_row) <= distance(printed_row) else PAPER_CLOSED_FORM


def _footnotes(reference: ErrorTable, printed: ErrorTable) -> List[str]:
    """reference holds the moment-based k=3 row, whether or not it is displayed."""
    published = published_table2(corrected=True)[MAX_ORDER]
    moment_row = {m: reference.errors[(MAX_ORDER, m)] for m in reference.m_list}
    printed_row = {m: printed.errors[(MAX_ORDER, m)] for m in printed.m_list}
    lines = ["3* = k=3 with the printed C_1 coefficient."]
    shown = [m for m in reference.m_list if m in published]
    if shown:
        lines.append("Published k=3 row (m=10^4 exponent corrected): "
                     + ", ".join(f"m={m}: {format_mantissa(published[m], 4)}" for m in shown))
    variant = closer_variant(moment_row, printed_row, published)
    if variant is None:
        lines.append("No published k=3 values for these m.")
    else:
        lines.append(f"Closer to the published k=3 row: {variant}.")
    return lines


def _wide_table(moment: ErrorTable, printed: ErrorTable, reference: ErrorTable) -> Table:
    table = Table(["k"] + [str(m) for m in moment.m_list],
                  titles=["k"] + [f"m={m}" for m in moment.m_list])
    for k in moment.k_list:
        table.rows.append([k] + moment.row(k))
    table.rows.append(["3*"] + printed.row(MAX_ORDER))
    table.footnotes = _footnotes(reference, printed)
    return table


def _long_table(moment: ErrorTable, printed: ErrorTable) -> Table:
    table = Table(list(LONG_COLUMNS))
    for k in moment.k_list:
        for m in moment.m_list:
            table.rows.append([k, m, MOMENT_BASED, moment.errors[(k, m)]])
    for m in printed.m_list:
        table.rows.append([MAX_ORDER, m, PAPER_CLOSED_FORM, printed.errors[(MAX_ORDER, m)]])
    return table


async def cmd_table2(m_list: Optional[Iterable[int]] = None, k_list: Optional[Iterable[int]] = None,
                     output: Optional[OutputSpec] = None, tol: float = DEFAULT_TOL,
                     workers: int = 4) -> CommandResponse:
    """
    Build the expansion error table.

    Args:
        m_list: Columns (default 10^4, 10^5, 10^6)
        k_list: Rows, truncation indices 0..3 (default all four)
        output: Rendering options; CSV is written in long form k,m,variant,rel_error
        tol: Quadrature tolerance of the oracle
        workers: Oracle columns computed concurrently

    Returns:
        CommandResponse; return code 2 for invalid m or k, 3 (with output) when
        an oracle did not converge
    """
    m_list = list(DEFAULT_M_LIST if m_list is None else m_list)
    k_list = list(DEFAULT_K_LIST if k_list is None else k_list)
    output = output or OutputSpec()

    response = CommandResponse(
        command="table2",
        subject="relative error",
        arguments={
            "m_list": m_list,
            "k_list": k_list,
            "format": output.format,
            "precision": output.precision,
            "tol": tol,
            "workers": workers
        }
    )

    if not m_list or not k_list:
        response.add_error("m_list and k_list must not be empty", return_code=DOMAIN_ERROR)
        return response

    for m in m_list:
        if isinstance(m, bool) or not float(m).is_integer() or m < 2:
            response.add_error(f"m must be an integer >= 2, got {m!r}", return_code=DOMAIN_ERROR)
            return response

    for k in k_list:
        if isinstance(k, bool) or not float(k).is_integer() or not 0 <= k <= MAX_ORDER:
            response.add_error(f"k must be an integer in 0..{MAX_ORDER}, got {k!r}", return_code=DOMAIN_ERROR)
            return response

    m_list = [int(m) for m in m_list]
    k_list = [int(k) for k in k_list]
    results = await gather_cells([lambda m=m: oracle_I_direct(1, m, tol) for m in m_list], workers)

    oracles = {}
    for m, result in zip(m_list, results):
        if isinstance(result, BaseException):
            record_failure(response, result, f"oracle I_{{1,{m}}}")
            oracles[m] = math.nan
            continue
        if not result.converged:
            logger.warning("oracle I_{1,%d} stopped with err %.3g", m, result.err_estimate)
            response.add_error(f"oracle I_{{1,{m}}} did not converge (err {result.err_estimate:.3g})",
                               return_code=NOT_CONVERGED)
        oracles[m] = result.value

    moment = await run_computation(error_table, response, 1, m_list, k_list, tol,
                                   method=MOMENT_BASED, oracles=oracles, label="table2")
    printed = await run_computation(error_table, response, 1, m_list, [MAX_ORDER], tol,
                                    method=PAPER_CLOSED_FORM, oracles=oracles, label="table2 printed C_1")
    if moment is None or printed is None:
        return response

    response.values = {
        "oracles": {str(m): v for m, v in oracles.items()},
        MOMENT_BASED: {f"k={k},m={m}": e for (k, m), e in moment.errors.items()},
        PAPER_CLOSED_FORM: {f"k={k},m={m}": e for (k, m), e in printed.errors.items()},
    }
    if output.format == CSV:
        table = _long_table(moment, printed)
    else:
        reference = moment
        if MAX_ORDER not in moment.k_list:
            reference = await run_computation(error_table, response, 1, m_list, [MAX_ORDER], tol,
                                              method=MOMENT_BASED, oracles=oracles, label="table2 k=3")
            if reference is None:
                return response
        table = _wide_table(moment, printed, reference)
    response.rendered = render(table, output)
    response.end_process_timer()
    return response
