"""
Rendering of exact rationals and result tables.

Decimals are rounded half-to-even from the exact value, so 5/16 prints as
0.312 and 1/16 as 0.062.
"""
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, Sequence

import pandas as pd


def format_exact(value: Fraction) -> str:
    """Render `p/q`, or just `p` for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, decimals: int = 3) -> str:
    """
    Round an exact rational half-to-even to a fixed number of decimals.

    Args:
        value: Exact value
        decimals: Digits after the decimal point

    Returns:
        Fixed-point string, e.g. "0.312"
    """
    rounded = round(Fraction(value), decimals)
    with localcontext() as ctx:
        ctx.prec = max(28, len(str(rounded.numerator)) + decimals + 2)
        exact = Decimal(rounded.numerator) / Decimal(rounded.denominator)
        return str(exact.quantize(Decimal(1).scaleb(-decimals)))


def rational_cell(value: Fraction, decimals: int) -> Dict[str, str]:
    return {"exact": format_exact(value), "decimal": format_decimal(value, decimals)}


def render_records(
    records: List[Dict[str, Any]],
    columns: Sequence[str],
    output_format: str = "tsv"
) -> str:
    """
    Render a list of flat records as TSV (with header) or JSON.

    Args:
        records: Row dictionaries; values should already be strings
        columns: Column order
        output_format: "tsv" or "json"

    Returns:
        Rendered text without a trailing newline
    """
    frame = pd.DataFrame(records, columns=list(columns))
    if output_format == "json":
        return frame.to_json(orient="records", force_ascii=False)
    return frame.to_csv(sep="\t", index=False, lineterminator="\n").rstrip("\n")


def render_matrix(
    row_names: Sequence[str],
    col_names: Sequence[str],
    values: List[List[Fraction]],
    decimals: int = 3,
    output_format: str = "tsv",
    corner: str = "walk"
) -> str:
    """
    Render a matrix of exact values.

    TSV cells hold the rounded decimal; JSON keeps exact strings as well.
    """
    if output_format == "json":
        payload = {
            row: {col: rational_cell(values[r][c], decimals) for c, col in enumerate(col_names)}
            for r, row in enumerate(row_names)
        }
        return json.dumps(payload, indent=2)
    frame = pd.DataFrame(
        [[format_decimal(v, decimals) for v in row] for row in values],
        index=pd.Index(list(row_names), name=corner),
        columns=list(col_names)
    )
    return frame.to_csv(sep="\t", lineterminator="\n").rstrip("\n")
