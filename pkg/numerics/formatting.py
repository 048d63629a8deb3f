"""
Output Formatting
Rendering of result tables as markdown (mantissa(exponent) notation, the
convention of the published tables) and as CSV (full 15-digit e-notation),
plus the CSV parser used to check that emitted files round-trip.
"""
import io
import csv
import sys
import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Union

from errors import DomainError

logger = logging.getLogger(__name__)

MARKDOWN = "md"
CSV = "csv"
JSON = "json"
FORMATS = (MARKDOWN, CSV, JSON)
_ALIASES = {"markdown": MARKDOWN}

MIN_PRECISION = 3
MAX_PRECISION = 15
CSV_FLOAT = "%.14e"

Cell = Union[int, float, str]


@dataclass(frozen=True)
class OutputSpec:
    """
    How and where a command writes its result.

    Attributes:
        format: 'md' (alias 'markdown'), 'csv' or 'json'
        precision: Significant digits of the markdown rendering, 3..15
        destination: File path, or None for stdout
    """
    format: str = MARKDOWN
    precision: int = 7
    destination: Optional[str] = None

    def __post_init__(self):
        fmt = _ALIASES.get(self.format, self.format)
        if fmt not in FORMATS:
            raise DomainError(f"unknown output format {self.format!r}")
        object.__setattr__(self, "format", fmt)
        if isinstance(self.precision, bool) or int(self.precision) != self.precision:
            raise DomainError(f"precision must be an integer, got {self.precision!r}")
        if not MIN_PRECISION <= self.precision <= MAX_PRECISION:
            raise DomainError(f"precision must be between {MIN_PRECISION} and {MAX_PRECISION}")


@dataclass
class Table:
    """
    A rectangular result table.

    Attributes:
        columns: Column keys, used as the CSV header
        rows: Cells; ints and strings are written as they are, floats are formatted
        titles: Markdown header labels (defaults to the column keys)
        footnotes: Lines printed under the markdown table
    """
    columns: List[str]
    rows: List[List[Cell]] = field(default_factory=list)
    titles: Optional[List[str]] = None
    footnotes: List[str] = field(default_factory=list)


def format_mantissa(x: float, precision: int = 7) -> str:
    """x as mantissa(exponent): 4.058838e-3 -> '4.058838(-3)'."""
    if not math.isfinite(x):
        return str(x)
    mantissa, exponent = f"{x:.{precision - 1}e}".split("e")
    return f"{mantissa}({int(exponent)})"


def _markdown_cell(cell: Cell, precision: int) -> str:
    if isinstance(cell, float):
        return format_mantissa(cell, precision)
    return str(cell)


def render_markdown(table: Table, precision: int = 7) -> str:
    titles = table.titles or table.columns
    lines = ["| " + " | ".join(titles) + " |",
             "|" + "|".join("---" for _ in titles) + "|"]
    for row in table.rows:
        lines.append("| " + " | ".join(_markdown_cell(c, precision) for c in row) + " |")
    if table.footnotes:
        lines.append("")
        lines.extend(table.footnotes)
    return "\n".join(lines) + "\n"


def _csv_cell(cell: Cell) -> str:
    if isinstance(cell, bool):
        return str(cell)
    if isinstance(cell, int):
        return str(cell)
    if isinstance(cell, float):
        return CSV_FLOAT % cell
    return cell


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_csv_cell(c) for c in row])
    return buffer.getvalue()


def _parse_cell(text: str) -> Cell:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str) -> Table:
    """Inverse of render_csv: integers, floats and strings are recovered by shape."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise DomainError("empty CSV document")
    return Table(rows[0], [[_parse_cell(c) for c in row] for row in rows[1:]])


def render(table: Table, spec: OutputSpec) -> str:
    """Markdown or CSV text of the table; JSON output is assembled by the caller."""
    if spec.format == CSV:
        return render_csv(table)
    return render_markdown(table, spec.precision)


def emit(text: str, destination: Optional[str] = None):
    """Write text to the destination file, or stdout."""
    if destination is None:
        sys.stdout.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("wrote %d characters to %s", len(text), destination)
