"""Helper functions for formatting and timing."""

import time


def format_number(value: float) -> str:
    """Twelve significant digits, the precision used in scan tables."""
    return f"{value:.12g}"


def elapsed_ms(start: float) -> int:
    """Milliseconds since a time.perf_counter() reading."""
    return int(round((time.perf_counter() - start) * 1000.0))
