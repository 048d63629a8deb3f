import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from command_response import CommandResponse, DOMAIN_ERROR, NOT_CONVERGED
from formatting import OutputSpec, Table, render
from quad import DEFAULT_TOL, QuadratureResult
from errors import DomainError
from runner import run_computation
import airfoil
import tricomi

logger = logging.getLogger(__name__)

# eval: one quantity by every available route, each value tagged with its method
#   I        I_{n,m}: oracle (direct quadrature), transformed (quadrature in u), asym (expansion at k)
#   J        J_n(a; mu): series, accelerated, pv
#   invert   erfc^{-1}(y) (numeric) or x(t) (x_of_t)
#   sigma    sigma_m(mu): closed_form, direct_sum, printed (m = 2)
#   profile  circulation P_n(x): exact, printed, ratio
#   lambda   log-moment lambda_k: closed_form, quadrature, printed (k = 3)
#   coeffs   expansion coefficients of I_{n,m}: moment_based against paper_closed_form

SUBJECTS = ("I", "J", "invert", "sigma", "profile", "lambda", "coeffs")
ALL = "all"
METHODS = {
    "I": ("oracle", "transformed", "asym"),
    "J": ("series", "accelerated", "pv"),
    "invert": ("numeric",),
    "sigma": (airfoil.CLOSED_FORM, airfoil.DIRECT_SUM, "printed"),
    "profile": ("exact", "printed", "ratio"),
    "lambda": (tricomi.CLOSED_FORM, tricomi.QUADRATURE, "printed"),
    "coeffs": (tricomi.MOMENT_BASED, tricomi.PAPER_CLOSED_FORM),
}
REQUIRED = {
    "I": ("n", "m"),
    "J": ("n", "a", "mu"),
    "invert": (),
    "sigma": ("m", "mu"),
    "profile": ("n", "x"),
    "lambda": ("k",),
    "coeffs": ("n", "m"),
}

Route = Tuple[str, Callable[[], Any]]


def get_service_info() -> dict:
    return {
        "name": "eval",
        "command": "eval",
        "description": "Evaluate a single quantity by each available method",
        "parameters": {
            "subject": "One of: " + ", ".join(SUBJECTS),
            "n": "Power n (I, J, profile, coeffs)",
            "m": "Exponent m (I, coeffs) or sigma index 0..2 (sigma)",
            "k": "Truncation index 0..3 (I) or moment index (lambda)",
            "a": "Pole location, |a| < 1 (J)",
            "mu": "Exponent mu < 1 (J, sigma)",
            "x": "Span position, |x| <= 1 (profile)",
            "y": "erfc value in (0, 2) (invert)",
            "t": "t > 0 for x(t) (invert)",
            "method": "Route tag or 'all' (default: all)"
        }
    }


def _routes(subject: str, params: Dict[str, Any], tol: float, series_tol: float) -> List[Route]:
    n, m, k = params.get("n"), params.get("m"), params.get("k")
    if subject == "I":
        return [
            ("oracle", lambda: tricomi.oracle_I_direct(n, m, tol)),
            ("transformed", lambda: tricomi.oracle_I_transformed(n, m, tol)),
            ("asym", lambda: tricomi.asymptotic_I(n, m, tricomi.MAX_ORDER if k is None else k)),
        ]
    if subject == "J":
        query = airfoil.AirfoilQuery(n, params["a"], params["mu"])
        return [
            ("series", lambda: airfoil.j_series(query, series_tol)),
            ("accelerated", lambda: airfoil.j_accelerated(query, series_tol)),
            ("pv", lambda: airfoil.j_pv_oracle(query, tol)),
        ]
    if subject == "invert":
        if params.get("y") is not None:
            return [("numeric", lambda: tricomi.invert_erfc_numeric(params["y"]))]
        return [("numeric", lambda: tricomi.x_of_t(params["t"]))]
    if subject == "sigma":
        mu = params["mu"]
        routes = [
            (airfoil.CLOSED_FORM, lambda: airfoil.sigma(m, mu, airfoil.CLOSED_FORM)),
            (airfoil.DIRECT_SUM, lambda: airfoil.sigma(m, mu, airfoil.DIRECT_SUM, series_tol)),
        ]
        if m == 2:
            routes.append(("printed", lambda: airfoil.sigma2_as_printed(mu)))
        return routes
    if subject == "profile":
        x = params["x"]
        routes = [("exact", lambda: airfoil.gamma_profile(n, x))]
        if n in (0, 1, 2):
            routes.append(("printed", lambda: airfoil.printed_profile(n, x)))
            if abs(x) < 1.0:
                routes.append(("ratio", lambda: airfoil.printed_profile_ratio(n, x)))
        return routes
    if subject == "lambda":
        routes = [
            (tricomi.CLOSED_FORM, lambda: tricomi.lambda_moment(k, tricomi.CLOSED_FORM)),
            (tricomi.QUADRATURE, lambda: tricomi.lambda_moment(k, tricomi.QUADRATURE, tol)),
        ]
        if k == 3:
            routes.append(("printed", tricomi.lambda3_as_printed))
        return routes
    # coeffs: one route yielding the whole comparison
    return [("coefficients", lambda: tricomi.compare_coefficients(n, tricomi.AsymptoticParams.for_m(m)))]


async def cmd_eval(subject: str, n: Optional[int] = None, m: Optional[int] = None, k: Optional[int] = None,
                   a: Optional[float] = None, mu: Optional[float] = None, x: Optional[float] = None,
                   y: Optional[float] = None, t: Optional[float] = None, method: str = ALL,
                   output: Optional[OutputSpec] = None, tol: float = DEFAULT_TOL,
                   series_tol: float = airfoil.DEFAULT_SERIES_TOL) -> CommandResponse:
    """
    Evaluate one quantity by each requested route.

    Args:
        subject: I, J, invert, sigma, profile, lambda or coeffs
        n, m, k, a, mu, x, y, t: Parameters of the subject
        method: A route tag of the subject, or 'all'
        output: Rendering options
        tol: Quadrature tolerance
        series_tol: Airfoil series tolerance

    Returns:
        CommandResponse with values keyed by method tag; return code 2 on
        domain errors, 3 when a route did not converge
    """
    output = output or OutputSpec()
    params = {"n": n, "m": m, "k": k, "a": a, "mu": mu, "x": x, "y": y, "t": t}

    response = CommandResponse(
        command="eval",
        subject=subject,
        arguments={
            **{name: value for name, value in params.items() if value is not None},
            "method": method,
            "format": output.format,
            "tol": tol,
            "series_tol": series_tol
        }
    )

    if subject not in SUBJECTS:
        response.add_error(f"subject must be one of {', '.join(SUBJECTS)}", return_code=DOMAIN_ERROR)
        return response

    missing = [name for name in REQUIRED[subject] if params[name] is None]
    if missing:
        response.add_error(f"eval {subject} requires --{missing[0]}", return_code=DOMAIN_ERROR)
        return response

    if subject == "invert" and (y is None) == (t is None):
        response.add_error("eval invert requires exactly one of --y and --t", return_code=DOMAIN_ERROR)
        return response

    if method != ALL and method not in METHODS[subject]:
        response.add_error(f"method for {subject} must be one of {', '.join(METHODS[subject])} or all",
                           return_code=DOMAIN_ERROR)
        return response

    try:
        routes = _routes(subject, params, tol, series_tol)
    except DomainError as e:
        response.add_error(str(e), return_code=DOMAIN_ERROR)
        return response

    table = Table(["subject", "method", "value"], titles=["quantity", "method", "value"])
    for tag, route in routes:
        if subject != "coeffs" and method != ALL and tag != method:
            continue
        result = await run_computation(route, response, label=f"{subject} [{tag}]")
        if result is None:
            continue
        if subject == "coeffs":
            _add_comparison(result, method, response, table)
            continue
        value = _value_of(result, tag, subject, response)
        response.values[tag] = value
        table.rows.append([subject, tag, value])

    response.rendered = render(table, output)
    response.end_process_timer()
    return response


def _value_of(result: Any, tag: str, subject: str, response: CommandResponse) -> float:
    if isinstance(result, QuadratureResult):
        if not result.converged:
            response.add_error(f"{subject} [{tag}] did not converge (err {result.err_estimate:.3g})",
                               return_code=NOT_CONVERGED)
        return result.value
    return float(result)


def _add_comparison(report: List[tricomi.CoefficientComparison], method: str,
                    response: CommandResponse, table: Table):
    for item in report:
        for tag, value in ((tricomi.MOMENT_BASED, item.moment_based), (tricomi.PAPER_CLOSED_FORM, item.printed)):
            if method != ALL and tag != method:
                continue
            key = f"{item.symbol}/{tag}"
            response.values[key] = value
            table.rows.append(["coeffs", key, value])
