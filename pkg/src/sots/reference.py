"""Reference table of the first odd n with a^n + 1 a sum of two squares, a <= 50.

Each row is (listed exponents, open_ended, property tag).  ALL marks rows
where every odd n works.  An open-ended row lists only the first few
exponents, so it says nothing about n beyond its last entry.
"""

from __future__ import annotations

from typing import Optional

from .classifier import TAG_1MOD8, TAG_3MOD4, TAG_5MOD8, TAG_EVEN, TAG_PERFECT, TAG_PRIME_SQUARE

ALL = "all"

REFERENCE_CHART: dict[int, tuple] = {
    1: (ALL, False, TAG_PERFECT),
    2: ((3,), False, TAG_EVEN),
    3: ((1, 5, 13, 65), True, TAG_3MOD4),
    4: (ALL, False, TAG_PERFECT),
    5: ((), False, TAG_5MOD8),
    6: ((7,), False, TAG_EVEN),
    7: ((1, 13, 17, 29), True, TAG_3MOD4),
    8: ((1,), False, TAG_EVEN),
    9: (ALL, False, TAG_PERFECT),
    10: ((), False, TAG_EVEN),
    11: ((3, 159), True, TAG_3MOD4),
    12: ((1, 5, 11, 23), True, TAG_EVEN),
    13: ((), False, TAG_5MOD8),
    14: ((3,), False, TAG_EVEN),
    15: ((1, 29, 89, 97), True, TAG_3MOD4),
    16: (ALL, False, TAG_PERFECT),
    17: ((1, 7, 17, 23), True, TAG_PRIME_SQUARE),
    18: ((19,), False, TAG_EVEN),
    19: ((1, 17, 29, 37), True, TAG_3MOD4),
    20: ((), False, TAG_EVEN),
    21: ((), False, TAG_5MOD8),
    22: ((), False, TAG_EVEN),
    23: ((3, 123), True, TAG_3MOD4),
    24: ((1, 7, 11, 19), True, TAG_EVEN),
    25: (ALL, False, TAG_PERFECT),
    26: ((), False, TAG_EVEN),
    27: ((), False, TAG_3MOD4),
    28: ((1, 3, 11, 19), True, TAG_EVEN),
    29: ((), False, TAG_5MOD8),
    30: ((31,), False, TAG_EVEN),
    31: ((1, 5, 25, 41), True, TAG_3MOD4),
    32: ((), False, TAG_EVEN),
    33: ((1, 5, 7, 17), True, TAG_1MOD8),
    34: ((), False, TAG_EVEN),
    35: ((1, 9, 13, 29), True, TAG_3MOD4),
    36: (ALL, False, TAG_PERFECT),
    37: ((), False, TAG_5MOD8),
    38: ((), False, TAG_EVEN),
    39: ((1, 13, 37, 61), True, TAG_3MOD4),
    40: ((1, 5, 13, 53), True, TAG_EVEN),
    41: ((), False, TAG_1MOD8),
    42: ((), False, TAG_EVEN),
    43: ((), False, TAG_3MOD4),
    44: ((1, 5, 7, 17), True, TAG_EVEN),
    45: ((), False, TAG_5MOD8),
    46: ((), False, TAG_EVEN),
    47: ((), False, TAG_3MOD4),
    48: ((1, 3, 5, 17), True, TAG_EVEN),
    49: (ALL, False, TAG_PERFECT),
    50: ((), False, TAG_EVEN),
}


def expected(a: int, n: int) -> Optional[bool]:
    """Whether the table says a^n + 1 is a sum of two squares; None if it is silent."""
    listed, open_ended, _ = REFERENCE_CHART[a]
    if listed == ALL:
        return True
    if open_ended and n > max(listed):
        return None
    return n in listed


def expected_row(a: int, n_max: int) -> list[int]:
    """Listed exponents up to n_max (every odd n for ALL rows)."""
    listed = REFERENCE_CHART[a][0]
    if listed == ALL:
        return list(range(1, n_max + 1, 2))
    return [n for n in listed if n <= n_max]
