"""Utility functions for writing the command CSV outputs.

All CSVs use ``,`` as separator, ``.`` as decimal point, a header row and LF line endings. Floats are
written with ``repr`` so outputs are byte stable for a fixed configuration.
"""
import csv
import io
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

PRICE_HEADER = ("method", "s0", "K", "T", "r", "y0", "price", "stderr_or_blank")
SURFACE_HEADER = ("K", "T", "price", "implied_vol")
COMPARE_HEADER = ("S", "price_fem", "price_fft", "rel_diff")


def format_cell(value: object) -> str:
    """Format one CSV cell; None becomes an empty cell.

    Args:
        value (object): Cell value.

    Returns:
        str: Cell text.
    """
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_rows(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Render a CSV document.

    Args:
        header (Sequence[str]): Column names.
        rows (Iterable[Sequence[object]]): Data rows.

    Returns:
        str: CSV text.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([format_cell(value) for value in row] for row in rows)
    return buffer.getvalue()


def emit(text: str, output: Path | None) -> None:
    """Write CSV text to a file, or to stdout when no file is given.

    Args:
        text (str): CSV text.
        output (Path | None): Destination file.
    """
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8", newline="\n")
