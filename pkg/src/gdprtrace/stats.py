"""Exact median/mode helpers over Decimal values.

Scores and ratings are tenths and halves; Decimal keeps midpoint medians
exact, so 0.7 never prints as 0.7000000000000001.
"""

from __future__ import annotations

import statistics
from decimal import Decimal


def median(values) -> Decimal:
    values = [Decimal(v) for v in values]
    if not values:
        raise ValueError("median of an empty sequence")
    return statistics.median(values)


def modes(values) -> list[Decimal]:
    """All values reaching the maximal frequency, ascending."""
    values = [Decimal(v) for v in values]
    if not values:
        raise ValueError("mode of an empty sequence")
    return sorted(statistics.multimode(values))


def fmt(value) -> str:
    """Shortest plain rendering: Decimal('1.0') -> '1', Decimal('0.70') -> '0.7'."""
    text = format(Decimal(value).normalize(), "f")
    return "0" if text in ("-0", "") else text


def fmt_modes(values) -> str:
    return ",".join(fmt(v) for v in values)
