"""Number formatting for command output"""

from typing import Iterable


def format_distance(value: float) -> str:
    """
    Twelve significant digits with a "." separator, independent of locale.

    Exact zero prints with twelve decimals so that it lines up with the
    other values.
    """
    if value == 0.0:
        return "0.000000000000"
    return f"{value:.12g}"


def format_row(values: Iterable[float]) -> str:
    return ",".join(format_distance(v) for v in values)
