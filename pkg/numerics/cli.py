"""
Command line front end.

    python numerics/cli.py table1 [--m 1e2 1e3 ...]
    python numerics/cli.py table2 [--m ...] [--k 0 1 2 3]
    python numerics/cli.py eval J --n 0 --a 0.5 --mu 0.5 --method all

Common flags: --format {md,markdown,csv,json} --precision N --out PATH --tol X
--workers N --log-level LEVEL. Defaults come from the environment (see settings.py).
Exit codes: 0 success, 2 usage or domain error, 3 convergence failure.
"""
import sys
import json
import asyncio
import logging
import argparse
from typing import List, Optional

from command_response import CommandResponse, DOMAIN_ERROR
from errors import DomainError
from formatting import FORMATS, JSON, OutputSpec, emit
from settings import Settings
import eval_service
import table1_service
import table2_service

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s: %(name)s: %(message)s"


def parse_int(text: str) -> int:
    """Integer flag value; accepts 1000, 1e3 and 10^3."""
    try:
        if "^" in text:
            base, exponent = text.split("^", 1)
            value = int(base) ** int(exponent)
        else:
            number = float(text)
            if not number.is_integer():
                raise ValueError
            value = int(number)
    except (ValueError, OverflowError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return value


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS + ("markdown",), default="md")
    common.add_argument("--precision", type=int, default=settings.precision,
                        help="significant digits of the markdown output (3..15)")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--tol", type=float, default=settings.tol, help="quadrature tolerance")
    common.add_argument("--workers", type=int, default=settings.workers, help="concurrent table cells")
    common.add_argument("--log-level", default=settings.log_level)

    parser = argparse.ArgumentParser(
        prog="tricomi-airfoil",
        description="Tables and single evaluations of the I_{n,m} and J_n(a; mu) integrals.")
    commands = parser.add_subparsers(dest="command", required=True)

    table1 = commands.add_parser("table1", parents=[common], help=table1_service.get_service_info()["description"])
    table1.add_argument("--m", type=parse_int, nargs="+", default=None)

    table2 = commands.add_parser("table2", parents=[common], help=table2_service.get_service_info()["description"])
    table2.add_argument("--m", type=parse_int, nargs="+", default=None)
    table2.add_argument("--k", type=int, nargs="+", default=None)

    info = eval_service.get_service_info()
    evaluate = commands.add_parser("eval", parents=[common], help=info["description"])
    evaluate.add_argument("subject", choices=eval_service.SUBJECTS)
    evaluate.add_argument("--n", type=int, default=None)
    evaluate.add_argument("--m", type=parse_int, default=None)
    evaluate.add_argument("--k", type=int, default=None)
    for name in ("a", "mu", "x", "y", "t"):
        evaluate.add_argument(f"--{name}", type=float, default=None, help=info["parameters"][name])
    evaluate.add_argument("--method", default=eval_service.ALL, help=info["parameters"]["method"])
    evaluate.add_argument("--series-tol", type=float, default=settings.series_tol)
    return parser


def configure_logging(level: str):
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        numeric = logging.WARNING
    logging.basicConfig(level=numeric, format=LOG_FORMAT, stream=sys.stderr, force=True)


async def dispatch(args: argparse.Namespace, output: OutputSpec) -> CommandResponse:
    if args.command == "table1":
        return await table1_service.cmd_table1(args.m, output, args.tol, args.workers)
    if args.command == "table2":
        return await table2_service.cmd_table2(args.m, args.k, output, args.tol, args.workers)
    return await eval_service.cmd_eval(args.subject, n=args.n, m=args.m, k=args.k, a=args.a, mu=args.mu,
                                       x=args.x, y=args.y, t=args.t, method=args.method, output=output,
                                       tol=args.tol, series_tol=args.series_tol)


def main(argv: Optional[List[str]] = None) -> int:
    settings = Settings.from_env()
    args = build_parser(settings).parse_args(argv)
    configure_logging(args.log_level)

    try:
        output = OutputSpec(args.format, args.precision, args.out)
    except DomainError as e:
        sys.stderr.write(f"error: {e}\n")
        return DOMAIN_ERROR

    response = asyncio.run(dispatch(args, output))
    logger.debug("%s finished in %d ms with return code %d",
                 response.command, response.process_time_ms, response.return_code)

    text = json.dumps(response.to_dict(), indent=2) + "\n" if output.format == JSON else response.rendered
    if text:
        emit(text, output.destination)
    if response.error:
        sys.stderr.write(response.error + "\n")
    return response.return_code


if __name__ == "__main__":
    sys.exit(main())
